#include "cmsim/simulation.hpp"

#include <numeric>

#include <fmt/format.h>

#include "cmsim/errors.hpp"
#include "cmsim/evolution.hpp"
#include "parallel.hpp"

namespace cmsim {
namespace {

struct AgentSlot {
    std::size_t player;
    std::size_t stock;
    std::size_t index;
};

std::vector<AgentSlot> agent_slots(std::span<const Player> players) {
    std::vector<AgentSlot> slots;
    for (std::size_t p = 0; p < players.size(); ++p) {
        for (std::size_t m = 0; m < players[p].committees.size(); ++m) {
            for (std::size_t j = 0; j < players[p].committees[m].size(); ++j) {
                slots.push_back({p, m, j});
            }
        }
    }
    return slots;
}

void check_data(const SimulationConfig& config, std::span<const PriceSeries> data) {
    if (data.size() != config.num_stocks()) {
        throw ConfigError(fmt::format("data has {} series, config names {} stocks", data.size(),
                                      config.num_stocks()));
    }
    for (std::size_t m = 0; m < data.size(); ++m) {
        if (data[m].name != config.stocks[m]) {
            throw ConfigError(fmt::format("data series {} is '{}', expected '{}'", m, data[m].name,
                                          config.stocks[m]));
        }
    }
    if (data.front().size() <= config.window) {
        throw InsufficientHistory(fmt::format("{} rows cannot cover a window of {}",
                                              data.front().size(), config.window));
    }
}

}  // namespace

bool evolution_due(std::size_t day, std::size_t cadence, std::size_t total_days) noexcept {
    return cadence > 0 && day > 0 && day < total_days && day % cadence == 0;
}

std::vector<PriceSeries> load_or_generate(const SimulationConfig& config) {
    if (!config.input.empty()) {
        return load_prices(config.input, config.stocks, config.window);
    }
    return generate_synthetic(config.stocks, config.window + config.days + 1, config.seed.value_or(0));
}

Simulation::Simulation(SimulationConfig config, std::vector<PriceSeries> data, RunOptions options)
    : config_((config.validate(), std::move(config))),
      options_(options),
      market_((check_data(config_, data), std::move(data)), config_.supply, config_.window),
      init_rng_(Rng(*config_.seed).fork("init")),
      shuffle_rng_(Rng(*config_.seed).fork("shuffle")),
      ga_rng_(Rng(*config_.seed).fork("ga")),
      mutation_rng_(Rng(*config_.seed).fork("mutation")) {
    total_days_ = std::min(config_.days, market_.num_rows() - config_.window);
    norm_.resize(market_.num_stocks());
    if (total_days_ == 0) {
        return;
    }

    players_ = endow_players(config_.players, config_.supply, config_.initial_cash);
    for (auto& player : players_) {
        player.committees.resize(market_.num_stocks());
        for (auto& committee : player.committees) {
            for (int j = 0; j < config_.agents_per_stock; ++j) {
                committee.push_back(init_random(config_.hidden, init_rng_, config_.hyper.weight_init_scale));
            }
        }
    }
    train_all();
    record_generation(output_.metrics, players_, generation_, day_);
}

void Simulation::train_all() {
    std::vector<TrainingWindow> windows;
    windows.reserve(market_.num_stocks());
    for (std::size_t m = 0; m < market_.num_stocks(); ++m) {
        windows.push_back(build_window(market_.series(m), market_.t(), config_.window));
        norm_[m] = windows.back().params;
    }
    const auto slots = agent_slots(players_);
    detail::parallel_for(slots.size(), options_.threads, [&](std::size_t i) {
        const auto& s = slots[i];
        auto& agent = players_[s.player].committees[s.stock][s.index];
        agent = train(agent, windows[s.stock].pairs, config_.hyper);
    });
}

std::vector<std::vector<double>> Simulation::validation_errors() const {
    std::vector<TrainingWindow> windows;
    for (std::size_t m = 0; m < market_.num_stocks(); ++m) {
        windows.push_back(build_window(market_.series(m), market_.t(), config_.window));
    }
    std::vector<std::vector<double>> errors(players_.size());
    for (std::size_t p = 0; p < players_.size(); ++p) {
        errors[p].resize(players_[p].agent_count());
    }
    const auto slots = agent_slots(players_);
    detail::parallel_for(slots.size(), options_.threads, [&](std::size_t i) {
        const auto& s = slots[i];
        const std::size_t flat = s.stock * static_cast<std::size_t>(config_.agents_per_stock) + s.index;
        errors[s.player][flat] =
            evaluate_error(players_[s.player].committees[s.stock][s.index], windows[s.stock].pairs);
    });
    return errors;
}

double Simulation::mean_validation_error() const {
    const auto errors = validation_errors();
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& e : errors) {
        sum = std::accumulate(e.begin(), e.end(), sum);
        count += e.size();
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

std::vector<std::vector<double>> Simulation::predict() const {
    const auto prices = market_.announce_price();
    std::vector<double> current(prices.size());
    for (std::size_t m = 0; m < prices.size(); ++m) {
        current[m] = normalize(prices[m], norm_[m]);
    }
    std::vector<std::vector<double>> predictions(players_.size());
    detail::parallel_for(players_.size(), options_.threads, [&](std::size_t p) {
        predictions[p] = committee_predict(players_[p], current, norm_);
    });
    return predictions;
}

ClearingReport Simulation::trade_day() {
    if (finished()) {
        throw EndOfData(fmt::format("simulation already ran its {} days", total_days_));
    }
    const auto prices = market_.announce_price();
    const auto predictions = predict();
    auto report = run_clearing(market_, players_, predictions, shuffle_rng_, config_.round_cap);
    for (const auto& trade : report.trades) {
        output_.trades.push_back({day_, trade});
    }
    output_.clearings.push_back({day_, report.rounds, report.terminated_by, report.trades.size()});
    record_networth(output_.metrics, players_, prices, day_);
    output_.final_prices = prices;
    return report;
}

void Simulation::step_day() {
    market_.advance();
    ++day_;
    if (evolution_due(day_, config_.cadence, total_days_)) {
        evolve();
    }
}

void Simulation::evolve() {
    const auto errors = validation_errors();
    EvolutionEvent event{day_, generation_ + 1, 0.0};
    std::size_t count = 0;
    for (const auto& e : errors) {
        event.mean_validation_error = std::accumulate(e.begin(), e.end(), event.mean_validation_error);
        count += e.size();
    }
    event.mean_validation_error /= static_cast<double>(count);
    if (observer_) {
        observer_(event, players_);
    }

    EvolutionStreams streams{ga_rng_, mutation_rng_, init_rng_};
    for (std::size_t p = 0; p < players_.size(); ++p) {
        players_[p] = evolve_generation(players_[p], errors[p], config_.ga, streams,
                                        config_.hyper.weight_init_scale);
    }
    train_all();
    generation_ = event.generation;
    record_generation(output_.metrics, players_, generation_, day_);
    output_.evolutions.push_back(event);
}

RunOutput Simulation::finish() && {
    output_.config = config_;
    output_.final_players = std::move(players_);
    output_.days_simulated = day_;
    return std::move(output_);
}

RunOutput run_simulation(const SimulationConfig& config, std::vector<PriceSeries> data,
                         const RunOptions& options) {
    Simulation sim(config, std::move(data), options);
    while (!sim.finished()) {
        sim.trade_day();
        sim.step_day();
    }
    return std::move(sim).finish();
}

RunOutput run_simulation(const SimulationConfig& config, const RunOptions& options) {
    config.validate();
    return run_simulation(config, load_or_generate(config), options);
}

}  // namespace cmsim
