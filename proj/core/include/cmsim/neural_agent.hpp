#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "cmsim/rng.hpp"

namespace cmsim {

enum class ActivationKind { Linear, Logistic };

std::string_view to_string(ActivationKind kind) noexcept;

inline constexpr int kMinHiddenUnits = 1;
inline constexpr int kMaxHiddenUnits = 10;

struct AgentSpec {
    int hidden_units = 1;
    ActivationKind activation = ActivationKind::Linear;

    bool operator==(const AgentSpec&) const = default;
};

/// Closed interval the hidden-unit count is drawn from at initialization.
struct HiddenBounds {
    int min = kMinHiddenUnits;
    int max = kMaxHiddenUnits;

    void validate() const;
};

struct Hyperparams {
    int epochs = 200;
    double learning_rate = 0.2;
    double weight_init_scale = 0.5;

    void validate() const;
};

/// One (normalized price today, normalized price tomorrow) training pair.
struct Sample {
    double input = 0.0;
    double target = 0.0;
};

/// Number of weights for a single-input, single-output network with
/// `hidden_units` tanh units, biases included.
constexpr std::size_t weight_count(int hidden_units) noexcept {
    return 3 * static_cast<std::size_t>(hidden_units) + 1;
}

/// A one-hidden-layer feed-forward network.
///
/// Weight layout, for h hidden units:
///   [0, h)     input -> hidden weights
///   [h, 2h)    hidden biases
///   [2h, 3h)   hidden -> output weights
///   3h         output bias
class Agent {
public:
    Agent(AgentSpec spec, std::vector<double> weights, double last_training_error = 0.0);

    const AgentSpec& spec() const noexcept { return spec_; }
    int hidden_units() const noexcept { return spec_.hidden_units; }
    ActivationKind activation() const noexcept { return spec_.activation; }
    std::span<const double> weights() const noexcept { return weights_; }
    double last_training_error() const noexcept { return last_training_error_; }

    double forward(double x) const;

    bool operator==(const Agent&) const = default;

private:
    AgentSpec spec_;
    std::vector<double> weights_;
    double last_training_error_;
};

/// Draws hidden units uniformly from `bounds`, the activation uniformly from
/// {Linear, Logistic}, and every weight uniformly from [-scale, scale].
Agent init_random(const HiddenBounds& bounds, Rng& rng, double weight_init_scale = 0.5);

/// Fresh uniform weights for a fixed architecture.
Agent init_weights(const AgentSpec& spec, Rng& rng, double weight_init_scale = 0.5);

double forward(const Agent& agent, double x);

/// Mean squared error of `agent` over `window`.
double evaluate_error(const Agent& agent, std::span<const Sample> window);

/// Analytic gradient of the windowed MSE with respect to every weight, in
/// the Agent weight layout.
std::vector<double> mse_gradient(const Agent& agent, std::span<const Sample> window);

/// Full-batch gradient descent on the windowed MSE for `hp.epochs` passes.
/// The architecture is never changed.
Agent train(const Agent& agent, std::span<const Sample> window, const Hyperparams& hp);

}  // namespace cmsim
