#include "cmsim/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

std::optional<double> population_stddev(std::span<const int> values) {
    if (values.empty()) {
        return std::nullopt;
    }
    const auto n = static_cast<double>(values.size());
    double mean = 0.0;
    for (const int v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (const int v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n);
}

}  // namespace

SpeciesPartition SpeciesPartition::of(std::span<const Agent> population) {
    SpeciesPartition p;
    for (const auto& a : population) {
        (a.activation() == ActivationKind::Linear ? p.linear : p.logistic).push_back(a.hidden_units());
    }
    return p;
}

ComplexityVector complexity(const SpeciesPartition& partition) {
    if (partition.linear.empty() && partition.logistic.empty()) {
        throw DomainError("complexity: empty population");
    }
    return {population_stddev(partition.linear), population_stddev(partition.logistic)};
}

ComplexityVector complexity(std::span<const Agent> population) {
    return complexity(SpeciesPartition::of(population));
}

double mean_hidden_units(const Player& player) {
    std::size_t count = 0;
    double sum = 0.0;
    for (const auto& committee : player.committees) {
        for (const auto& a : committee) {
            sum += a.hidden_units();
            ++count;
        }
    }
    if (count == 0) {
        throw ConfigError(fmt::format("player {} has no agents", player.id));
    }
    return sum / static_cast<double>(count);
}

void record_networth(RunMetrics& metrics, std::span<const Player> players,
                     std::span<const double> prices, std::size_t day) {
    for (const auto& p : players) {
        metrics.networth.push_back({day, p.id, net_worth(p, prices)});
    }
}

void record_generation(RunMetrics& metrics, std::span<const Player> players,
                       std::size_t generation, std::size_t day) {
    std::vector<Agent> population;
    for (const auto& p : players) {
        metrics.hidden_units.push_back({generation, day, p.id, mean_hidden_units(p)});
        const auto agents = p.flat_agents();
        population.insert(population.end(), agents.begin(), agents.end());
    }
    metrics.complexity.push_back({generation, day, complexity(population)});
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw DomainError("fit_line: x and y must be nonempty and equal length");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit fit;
    if (!(sxx > 0.0)) {
        fit.intercept = my;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() >= 2 && syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.slope * x[i] + fit.intercept);
            ss_res += r * r;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    }
    return fit;
}

}  // namespace cmsim
