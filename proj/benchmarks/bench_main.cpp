#include <vector>

#include <benchmark/benchmark.h>

#include "cmsim/config.hpp"
#include "cmsim/data_ingest.hpp"
#include "cmsim/market.hpp"
#include "cmsim/neural_agent.hpp"
#include "cmsim/simulation.hpp"

using namespace cmsim;

namespace {

std::vector<Sample> window_of(std::size_t n) {
    Rng rng(1);
    std::vector<Sample> w(n);
    for (auto& s : w) s = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
    return w;
}

void BM_Forward(benchmark::State& state) {
    Rng rng(2);
    const auto agent = init_weights({static_cast<int>(state.range(0)), ActivationKind::Logistic}, rng);
    double x = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(x = agent.forward(x));
    }
}
BENCHMARK(BM_Forward)->DenseRange(1, 10, 3);

void BM_Train(benchmark::State& state) {
    Rng rng(3);
    const auto agent = init_weights({static_cast<int>(state.range(0)), ActivationKind::Linear}, rng);
    const auto window = window_of(50);
    const Hyperparams hp;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train(agent, window, hp));
    }
}
BENCHMARK(BM_Train)->DenseRange(1, 10, 3)->Unit(benchmark::kMicrosecond);

void BM_Clearing(benchmark::State& state) {
    const int players = static_cast<int>(state.range(0));
    const auto names = default_stock_names();
    const std::vector<std::int64_t> supply(names.size(), 1'000'000);
    const Market market(generate_synthetic(names, 2, 4), supply);
    const auto prices = market.announce_price();
    Rng rng(5);
    std::vector<std::vector<double>> predictions(static_cast<std::size_t>(players));
    for (auto& p : predictions) {
        for (const double price : prices) p.push_back(price * rng.uniform(0.95, 1.05));
    }
    const auto endowed = endow_players(players, supply, 1e8);
    Rng shuffle(6);
    for (auto _ : state) {
        auto copy = endowed;
        benchmark::DoNotOptimize(run_clearing(market, copy, predictions, shuffle));
    }
}
BENCHMARK(BM_Clearing)->RangeMultiplier(2)->Range(2, 64)->Unit(benchmark::kMicrosecond);

void BM_Simulation(benchmark::State& state) {
    const auto cfg = parse_config("seed = 1\ndays = 60\n",
                                  {{"players", std::to_string(state.range(0))}});
    const auto data = load_or_generate(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_simulation(cfg, data));
    }
}
BENCHMARK(BM_Simulation)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
