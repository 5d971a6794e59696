#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cmsim/config.hpp"
#include "cmsim/metrics.hpp"
#include "cmsim/simulation.hpp"

namespace cmsim {

struct BenchGrid {
    /// Player counts swept with `base_agents` agents per stock.
    std::vector<int> players;
    /// Agents-per-stock values swept with `base_players` players.
    std::vector<int> agents;
    int base_players = 4;
    int base_agents = 4;
    /// Timed repetitions per point; the median is reported.
    int repetitions = 1;
    /// Run one untimed simulation before timing each point.
    bool warmup = true;
};

enum class Sweep { Players, Agents };

std::string_view to_string(Sweep sweep) noexcept;

struct BenchSample {
    Sweep sweep = Sweep::Players;
    int players = 0;
    int agents = 0;
    /// Median wall-clock seconds; absent when the point was skipped.
    std::optional<double> seconds;
    std::string warning;
};

struct SweepFit {
    Sweep sweep = Sweep::Players;
    std::size_t points = 0;
    /// Absent when no point of the sweep ran.
    std::optional<LinearFit> fit;
};

struct BenchReport {
    std::vector<BenchSample> samples;
    std::vector<SweepFit> fits;

    const SweepFit* fit_for(Sweep sweep) const noexcept;
};

/// Times complete simulations over the grid. Every point reuses `base`
/// (days, seed, data) and only changes players or agents per stock;
/// infeasible points are recorded with a warning instead of run.
BenchReport scaling_benchmark(const BenchGrid& grid, const SimulationConfig& base,
                              const RunOptions& options = {});

/// sweep,players,agents,seconds,status
void write_scaling_csv(std::ostream& out, const BenchReport& report);

/// sweep,points,slope,intercept,r_squared
void write_scaling_fit_csv(std::ostream& out, const BenchReport& report);

}  // namespace cmsim
