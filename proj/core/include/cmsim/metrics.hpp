#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cmsim/committee_player.hpp"
#include "cmsim/neural_agent.hpp"

namespace cmsim {

/// Hidden-unit counts grouped by output activation.
struct SpeciesPartition {
    std::vector<int> linear;
    std::vector<int> logistic;

    static SpeciesPartition of(std::span<const Agent> population);

    std::span<const int> members(ActivationKind species) const noexcept {
        return species == ActivationKind::Linear ? std::span<const int>(linear)
                                                 : std::span<const int>(logistic);
    }
};

/// Per-species population standard deviation of hidden-unit counts. Each
/// component stands on its own basis direction; an empty species has no
/// component at all.
struct ComplexityVector {
    std::optional<double> linear;
    std::optional<double> logistic;

    std::optional<double> component(ActivationKind species) const noexcept {
        return species == ActivationKind::Linear ? linear : logistic;
    }
};

ComplexityVector complexity(const SpeciesPartition& partition);
ComplexityVector complexity(std::span<const Agent> population);

/// Mean hidden-unit count over every agent of the player.
double mean_hidden_units(const Player& player);

struct NetWorthRow {
    std::size_t day = 0;
    int player = 0;
    double net_worth = 0.0;
};

struct HiddenUnitsRow {
    std::size_t generation = 0;
    std::size_t day = 0;
    int player = 0;
    double mean_hidden_units = 0.0;
};

struct ComplexityRow {
    std::size_t generation = 0;
    std::size_t day = 0;
    ComplexityVector sigma;
};

struct RunMetrics {
    std::vector<NetWorthRow> networth;
    std::vector<HiddenUnitsRow> hidden_units;
    std::vector<ComplexityRow> complexity;
};

void record_networth(RunMetrics& metrics, std::span<const Player> players,
                     std::span<const double> prices, std::size_t day);

/// Appends one hidden-units row per player and one complexity row for the
/// whole population.
void record_generation(RunMetrics& metrics, std::span<const Player> players,
                       std::size_t generation, std::size_t day);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Absent when the fit is degenerate (fewer than two distinct x values
    /// or zero variance in y).
    std::optional<double> r_squared;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace cmsim
