#include "cmsim/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

double time_run(const SimulationConfig& config, const std::vector<PriceSeries>& data,
                const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const auto out = run_simulation(config, data, options);
    const auto stop = std::chrono::steady_clock::now();
    // Keep the run observable so it cannot be optimized away.
    if (out.days_simulated > config.days) {
        throw Error("BenchError", "simulated more days than configured");
    }
    return std::chrono::duration<double>(stop - start).count();
}

std::string csv_quote(const std::string& text) {
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::string_view to_string(Sweep sweep) noexcept {
    return sweep == Sweep::Players ? "players" : "agents";
}

const SweepFit* BenchReport::fit_for(Sweep sweep) const noexcept {
    for (const auto& f : fits) {
        if (f.sweep == sweep) return &f;
    }
    return nullptr;
}

BenchReport scaling_benchmark(const BenchGrid& grid, const SimulationConfig& base,
                              const RunOptions& options) {
    if (grid.repetitions < 1) {
        throw ConfigError("bench repetitions must be >= 1");
    }
    base.validate();
    const auto data = load_or_generate(base);

    BenchReport report;
    const auto sweep = [&](Sweep kind, const std::vector<int>& values) {
        if (values.empty()) return;
        std::vector<double> xs;
        std::vector<double> ys;
        for (const int v : values) {
            BenchSample sample;
            sample.sweep = kind;
            sample.players = kind == Sweep::Players ? v : grid.base_players;
            sample.agents = kind == Sweep::Agents ? v : grid.base_agents;
            SimulationConfig config = base;
            config.players = sample.players;
            config.agents_per_stock = sample.agents;
            try {
                config.validate();
            } catch (const ConfigError& e) {
                sample.warning = fmt::format("skipped: {}", e.what());
                report.samples.push_back(sample);
                continue;
            }
            if (grid.warmup) {
                time_run(config, data, options);
            }
            std::vector<double> times;
            for (int r = 0; r < grid.repetitions; ++r) {
                times.push_back(time_run(config, data, options));
            }
            sample.seconds = median(times);
            xs.push_back(v);
            ys.push_back(*sample.seconds);
            report.samples.push_back(sample);
        }
        SweepFit fit{kind, xs.size(), std::nullopt};
        if (!xs.empty()) {
            fit.fit = fit_line(xs, ys);
        }
        report.fits.push_back(fit);
    };
    sweep(Sweep::Players, grid.players);
    sweep(Sweep::Agents, grid.agents);
    return report;
}

void write_scaling_csv(std::ostream& out, const BenchReport& report) {
    out << "sweep,players,agents,seconds,status\n";
    for (const auto& s : report.samples) {
        out << fmt::format("{},{},{},{},{}\n", to_string(s.sweep), s.players, s.agents,
                           s.seconds ? fmt::format("{:.6f}", *s.seconds) : std::string(),
                           s.seconds ? std::string("ok") : csv_quote(s.warning));
    }
}

void write_scaling_fit_csv(std::ostream& out, const BenchReport& report) {
    out << "sweep,points,slope,intercept,r_squared\n";
    for (const auto& f : report.fits) {
        if (!f.fit) {
            out << fmt::format("{},{},,,\n", to_string(f.sweep), f.points);
            continue;
        }
        out << fmt::format("{},{},{:.9g},{:.9g},{}\n", to_string(f.sweep), f.points, f.fit->slope,
                           f.fit->intercept,
                           f.fit->r_squared ? fmt::format("{:.6f}", *f.fit->r_squared) : std::string());
    }
}

}  // namespace cmsim
