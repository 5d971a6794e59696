// cmsim: run the committee market simulation, time it, or generate data.
//
//   cmsim run --config sim.cfg [--seed S] [--out DIR] [--threads T]
//   cmsim bench --players 2,4,8,16 --agents 4 [--days 120] [--seed S] [--out DIR]
//   cmsim gen-data --days D --seed S --out FILE

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cmsim/config.hpp"
#include "cmsim/data_ingest.hpp"
#include "cmsim/errors.hpp"
#include "cmsim/reports.hpp"
#include "cmsim/scaling.hpp"
#include "cmsim/simulation.hpp"

namespace {

int exit_code_for(const cmsim::Error& e) {
    if (dynamic_cast<const cmsim::ConfigError*>(&e)) return 2;
    if (dynamic_cast<const cmsim::LoadError*>(&e)) return 3;
    if (dynamic_cast<const cmsim::IoError*>(&e)) return 4;
    return 5;
}

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    unsigned threads = 1;
};

int do_run(const RunArgs& args) {
    cmsim::ConfigOverrides overrides;
    if (args.seed) overrides["seed"] = std::to_string(*args.seed);
    if (args.out) overrides["output"] = *args.out;
    const auto config = cmsim::load_config(args.config, overrides);

    try {
        const auto output = cmsim::run_simulation(config, cmsim::RunOptions{args.threads});
        cmsim::emit_reports(output, config.output);
        std::cout << fmt::format("simulated {} days, {} trades, {} evolution events -> {}\n",
                                 output.days_simulated, output.trades.size(),
                                 output.evolutions.size(), config.output.string());
    } catch (const cmsim::IoError&) {
        throw;
    } catch (const cmsim::Error& e) {
        cmsim::write_abort_manifest(config.output, e.error_class(), e.what());
        throw;
    }
    return 0;
}

struct BenchArgs {
    std::string players;
    std::string agents;
    int base_players = 4;
    int base_agents = 4;
    std::size_t days = 120;
    std::uint64_t seed = 1;
    int reps = 1;
    bool no_warmup = false;
    std::string config;
    std::string out;
    unsigned threads = 1;
};

int do_bench(const BenchArgs& args) {
    cmsim::ConfigOverrides overrides{{"days", std::to_string(args.days)},
                                     {"seed", std::to_string(args.seed)}};
    const auto base = args.config.empty() ? cmsim::parse_config("", overrides)
                                          : cmsim::load_config(args.config, overrides);
    cmsim::BenchGrid grid;
    if (!args.players.empty()) grid.players = cmsim::parse_int_list(args.players);
    if (!args.agents.empty()) grid.agents = cmsim::parse_int_list(args.agents);
    grid.base_players = args.base_players;
    grid.base_agents = args.base_agents;
    grid.repetitions = args.reps;
    grid.warmup = !args.no_warmup;

    const auto report = cmsim::scaling_benchmark(grid, base, cmsim::RunOptions{args.threads});
    cmsim::write_scaling_csv(std::cout, report);
    cmsim::write_scaling_fit_csv(std::cout, report);

    if (!args.out.empty()) {
        std::ostringstream samples;
        std::ostringstream fits;
        cmsim::write_scaling_csv(samples, report);
        cmsim::write_scaling_fit_csv(fits, report);
        cmsim::write_report_files({{"scaling.csv", samples.str()}, {"scaling_fit.csv", fits.str()}},
                                  args.out);
    }
    return 0;
}

int do_gen_data(std::size_t days, std::uint64_t seed, const std::string& stocks,
                const std::string& out) {
    std::vector<std::string> names;
    std::stringstream ss(stocks);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) names.push_back(item);
    }
    if (names.empty()) {
        throw cmsim::ConfigError("gen-data: no stock names");
    }
    const auto series = cmsim::generate_synthetic(names, days, seed);
    const std::filesystem::path path(out);
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw cmsim::IoError(fmt::format("cannot write '{}'", out));
    }
    cmsim::write_prices_csv(file, series);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Committee-of-agents stock market simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run one simulation and write its reports");
    run->add_option("--config", run_args.config, "Configuration file")->required();
    run->add_option("--seed", run_args.seed, "Override the configured seed");
    run->add_option("--out", run_args.out, "Override the output directory");
    run->add_option("--threads", run_args.threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Time full simulations over a players/agents grid");
    bench->add_option("--players", bench_args.players, "Player counts to sweep, e.g. 2,4,8,16");
    bench->add_option("--agents", bench_args.agents, "Agents per stock to sweep, e.g. 2,4,8");
    bench->add_option("--base-players", bench_args.base_players, "Players held fixed in the agent sweep");
    bench->add_option("--base-agents", bench_args.base_agents, "Agents held fixed in the player sweep");
    bench->add_option("--days", bench_args.days, "Trading days per run");
    bench->add_option("--seed", bench_args.seed, "Seed shared by every grid point");
    bench->add_option("--reps", bench_args.reps, "Timed repetitions per point (median reported)");
    bench->add_flag("--no-warmup", bench_args.no_warmup, "Skip the untimed warm-up run");
    bench->add_option("--config", bench_args.config, "Base configuration file");
    bench->add_option("--out", bench_args.out, "Directory for scaling.csv and scaling_fit.csv");
    bench->add_option("--threads", bench_args.threads, "Worker threads")->check(CLI::PositiveNumber);

    std::size_t gen_days = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::string gen_stocks = "DJIA,NASDAQ,SP500";
    auto* gen = app.add_subcommand("gen-data", "Write a synthetic price CSV");
    gen->add_option("--days", gen_days, "Number of rows")->required();
    gen->add_option("--seed", gen_seed, "Generator seed")->required();
    gen->add_option("--out", gen_out, "Output CSV path")->required();
    gen->add_option("--stocks", gen_stocks, "Comma-separated stock names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return do_run(run_args);
        if (*bench) return do_bench(bench_args);
        if (*gen) return do_gen_data(gen_days, gen_seed, gen_stocks, gen_out);
    } catch (const cmsim::Error& e) {
        std::cerr << e.error_class() << ": " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << '\n';
        return 70;
    }
    return 0;
}
