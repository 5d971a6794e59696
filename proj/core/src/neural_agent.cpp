#include "cmsim/neural_agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

// Largest double below 1 and smallest normal double: the logistic output is
// kept strictly inside (0, 1) even where exp() saturates.
constexpr double kLogisticHigh = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kLogisticLow = std::numeric_limits<double>::min();

double logistic(double z) {
    const double y = 1.0 / (1.0 + std::exp(-z));
    return std::clamp(y, kLogisticLow, kLogisticHigh);
}

struct Layout {
    std::size_t h;
    std::size_t in(std::size_t j) const { return j; }
    std::size_t bias(std::size_t j) const { return h + j; }
    std::size_t out(std::size_t j) const { return 2 * h + j; }
    std::size_t out_bias() const { return 3 * h; }
};

void require_window(std::span<const Sample> window, const char* op) {
    if (window.empty()) {
        throw DataError(fmt::format("{}: empty training window", op));
    }
}

// Accumulates dMSE/dw into `grad` (which must be zeroed, sized to the
// weights) and returns the MSE.
double accumulate_gradient(const AgentSpec& spec, std::span<const double> w,
                           std::span<const Sample> window, std::span<double> grad,
                           std::vector<double>& hidden) {
    const Layout L{static_cast<std::size_t>(spec.hidden_units)};
    const bool logistic_out = spec.activation == ActivationKind::Logistic;
    const double scale = 2.0 / static_cast<double>(window.size());
    double sse = 0.0;

    for (const auto& s : window) {
        double z = w[L.out_bias()];
        for (std::size_t j = 0; j < L.h; ++j) {
            hidden[j] = std::tanh(w[L.in(j)] * s.input + w[L.bias(j)]);
            z += w[L.out(j)] * hidden[j];
        }
        const double y = logistic_out ? logistic(z) : z;
        const double err = y - s.target;
        sse += err * err;

        const double delta = scale * err * (logistic_out ? y * (1.0 - y) : 1.0);
        grad[L.out_bias()] += delta;
        for (std::size_t j = 0; j < L.h; ++j) {
            grad[L.out(j)] += delta * hidden[j];
            const double back = delta * w[L.out(j)] * (1.0 - hidden[j] * hidden[j]);
            grad[L.in(j)] += back * s.input;
            grad[L.bias(j)] += back;
        }
    }
    return sse / static_cast<double>(window.size());
}

}  // namespace

std::string_view to_string(ActivationKind kind) noexcept {
    return kind == ActivationKind::Linear ? "linear" : "logistic";
}

void HiddenBounds::validate() const {
    if (min < kMinHiddenUnits || max > kMaxHiddenUnits || min > max) {
        throw ConfigError(fmt::format("hidden-unit bounds [{}, {}] must satisfy {} <= min <= max <= {}",
                                      min, max, kMinHiddenUnits, kMaxHiddenUnits));
    }
}

void Hyperparams::validate() const {
    if (epochs < 1) {
        throw ConfigError(fmt::format("epochs must be >= 1, got {}", epochs));
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError(fmt::format("learning_rate must be > 0, got {}", learning_rate));
    }
    if (!(weight_init_scale > 0.0) || !std::isfinite(weight_init_scale)) {
        throw ConfigError(fmt::format("weight_init_scale must be > 0, got {}", weight_init_scale));
    }
}

Agent::Agent(AgentSpec spec, std::vector<double> weights, double last_training_error)
    : spec_(spec), weights_(std::move(weights)), last_training_error_(last_training_error) {
    if (spec_.hidden_units < kMinHiddenUnits || spec_.hidden_units > kMaxHiddenUnits) {
        throw DomainError(fmt::format("hidden_units {} outside [{}, {}]", spec_.hidden_units,
                                      kMinHiddenUnits, kMaxHiddenUnits));
    }
    if (weights_.size() != weight_count(spec_.hidden_units)) {
        throw DomainError(fmt::format("agent with {} hidden units needs {} weights, got {}",
                                      spec_.hidden_units, weight_count(spec_.hidden_units),
                                      weights_.size()));
    }
    if (!(last_training_error_ >= 0.0)) {
        throw DomainError("last_training_error must be >= 0");
    }
}

double Agent::forward(double x) const {
    if (!std::isfinite(x)) {
        throw InputError("forward: non-finite input");
    }
    const Layout L{static_cast<std::size_t>(spec_.hidden_units)};
    double z = weights_[L.out_bias()];
    for (std::size_t j = 0; j < L.h; ++j) {
        z += weights_[L.out(j)] * std::tanh(weights_[L.in(j)] * x + weights_[L.bias(j)]);
    }
    return spec_.activation == ActivationKind::Logistic ? logistic(z) : z;
}

double forward(const Agent& agent, double x) { return agent.forward(x); }

Agent init_weights(const AgentSpec& spec, Rng& rng, double weight_init_scale) {
    std::vector<double> w(weight_count(spec.hidden_units));
    for (auto& v : w) {
        v = rng.uniform(-weight_init_scale, weight_init_scale);
    }
    return Agent(spec, std::move(w));
}

Agent init_random(const HiddenBounds& bounds, Rng& rng, double weight_init_scale) {
    bounds.validate();
    AgentSpec spec;
    spec.hidden_units = rng.uniform_int(bounds.min, bounds.max);
    spec.activation = rng.bernoulli(0.5) ? ActivationKind::Logistic : ActivationKind::Linear;
    return init_weights(spec, rng, weight_init_scale);
}

double evaluate_error(const Agent& agent, std::span<const Sample> window) {
    require_window(window, "evaluate_error");
    double sse = 0.0;
    for (const auto& s : window) {
        const double err = agent.forward(s.input) - s.target;
        sse += err * err;
    }
    return sse / static_cast<double>(window.size());
}

std::vector<double> mse_gradient(const Agent& agent, std::span<const Sample> window) {
    require_window(window, "mse_gradient");
    std::vector<double> grad(agent.weights().size(), 0.0);
    std::vector<double> hidden(static_cast<std::size_t>(agent.hidden_units()));
    accumulate_gradient(agent.spec(), agent.weights(), window, grad, hidden);
    return grad;
}

Agent train(const Agent& agent, std::span<const Sample> window, const Hyperparams& hp) {
    require_window(window, "train");
    hp.validate();

    std::vector<double> w(agent.weights().begin(), agent.weights().end());
    std::vector<double> grad(w.size());
    std::vector<double> hidden(static_cast<std::size_t>(agent.hidden_units()));
    for (int epoch = 0; epoch < hp.epochs; ++epoch) {
        std::fill(grad.begin(), grad.end(), 0.0);
        accumulate_gradient(agent.spec(), w, window, grad, hidden);
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] -= hp.learning_rate * grad[i];
        }
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    const double mse = accumulate_gradient(agent.spec(), w, window, grad, hidden);
    if (!std::isfinite(mse)) {
        throw DataError(fmt::format("training diverged (learning rate {})", hp.learning_rate));
    }
    return Agent(agent.spec(), std::move(w), mse);
}

}  // namespace cmsim
