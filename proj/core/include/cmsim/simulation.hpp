#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cmsim/committee_player.hpp"
#include "cmsim/config.hpp"
#include "cmsim/data_ingest.hpp"
#include "cmsim/market.hpp"
#include "cmsim/metrics.hpp"

namespace cmsim {

/// Execution settings that must not influence results.
struct RunOptions {
    /// Worker threads for the training and prediction phases.
    unsigned threads = 1;
};

struct EvolutionEvent {
    std::size_t day = 0;
    std::size_t generation = 0;
    /// Mean over every agent of its error on the most recent window,
    /// measured before the generational step.
    double mean_validation_error = 0.0;
};

struct DayTrade {
    std::size_t day = 0;
    Trade trade;
};

struct ClearingSummary {
    std::size_t day = 0;
    int rounds = 0;
    Termination terminated_by = Termination::NoMoreTrades;
    std::size_t trades = 0;
};

struct RunOutput {
    SimulationConfig config;
    RunMetrics metrics;
    std::vector<DayTrade> trades;
    std::vector<ClearingSummary> clearings;
    std::vector<EvolutionEvent> evolutions;
    std::vector<Player> final_players;
    std::vector<double> final_prices;
    std::size_t days_simulated = 0;
};

/// True when trading day `day` begins with a generational step: every
/// `cadence` days, never on day 0 and never past the last trading day.
bool evolution_due(std::size_t day, std::size_t cadence, std::size_t total_days) noexcept;

/// The configured price file, or a synthetic series of window + days + 1
/// rows derived from the seed when no input is configured.
std::vector<PriceSeries> load_or_generate(const SimulationConfig& config);

/// Day-by-day driver. Trading day d uses price row window + d; the initial
/// fit (generation 0) happens on construction.
class Simulation {
public:
    using EvolutionObserver =
        std::function<void(const EvolutionEvent&, std::span<const Player> before)>;

    Simulation(SimulationConfig config, std::vector<PriceSeries> data, RunOptions options = {});

    std::size_t day() const noexcept { return day_; }
    std::size_t total_days() const noexcept { return total_days_; }
    bool finished() const noexcept { return day_ >= total_days_; }

    const Market& market() const noexcept { return market_; }
    std::span<const Player> players() const noexcept { return players_; }
    std::span<const NormalizationParams> normalization() const noexcept { return norm_; }
    const RunMetrics& metrics() const noexcept { return output_.metrics; }

    /// Called before each generational step with the pre-step population.
    void on_evolution(EvolutionObserver observer) { observer_ = std::move(observer); }

    /// Per-player committee forecasts for the next day's prices.
    std::vector<std::vector<double>> predict() const;

    /// Announces today's prices, predicts, clears and records net worth.
    ClearingReport trade_day();

    /// Advances to the next day; runs evolution and retraining when due.
    void step_day();

    /// Mean per-agent error of the current population on the window ending
    /// at the current price row.
    double mean_validation_error() const;

    RunOutput finish() &&;

private:
    void train_all();
    std::vector<std::vector<double>> validation_errors() const;
    void evolve();

    SimulationConfig config_;
    RunOptions options_;
    Market market_;
    std::vector<Player> players_;
    std::vector<NormalizationParams> norm_;
    Rng init_rng_;
    Rng shuffle_rng_;
    Rng ga_rng_;
    Rng mutation_rng_;
    std::size_t day_ = 0;
    std::size_t total_days_ = 0;
    std::size_t generation_ = 0;
    EvolutionObserver observer_;
    RunOutput output_;
};

/// Loads (or generates) data and runs every trading day.
RunOutput run_simulation(const SimulationConfig& config, const RunOptions& options = {});

/// Runs the simulation on already-loaded data.
RunOutput run_simulation(const SimulationConfig& config, std::vector<PriceSeries> data,
                         const RunOptions& options = {});

}  // namespace cmsim
