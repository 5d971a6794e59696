#include "cmsim/simulation.hpp"

#include <gtest/gtest.h>

#include "cmsim/errors.hpp"

using namespace cmsim;

namespace {

SimulationConfig quick(std::size_t days, std::uint64_t seed = 11) {
    auto c = parse_config("players = 3\nagents_per_stock = 2\nwindow = 20\nepochs = 40\n",
                          {{"seed", std::to_string(seed)}, {"days", std::to_string(days)}});
    return c;
}

std::vector<std::int64_t> totals(std::span<const Player> players) {
    std::vector<std::int64_t> t(players.front().holdings.size(), 0);
    for (const auto& p : players) {
        for (std::size_t m = 0; m < t.size(); ++m) t[m] += p.holdings[m];
    }
    return t;
}

}  // namespace

TEST(EvolutionDue, Cadence) {
    EXPECT_FALSE(evolution_due(0, 50, 300));
    EXPECT_FALSE(evolution_due(49, 50, 300));
    EXPECT_TRUE(evolution_due(50, 50, 300));
    EXPECT_FALSE(evolution_due(75, 50, 300));
    EXPECT_TRUE(evolution_due(100, 50, 300));
    EXPECT_FALSE(evolution_due(150, 50, 150));
}

TEST(Simulation, DayFortyNineToFiftyEvolves) {
    auto cfg = quick(60);
    cfg.cadence = 50;
    Simulation sim(cfg, load_or_generate(cfg));
    std::size_t events = 0;
    sim.on_evolution([&](const EvolutionEvent& e, std::span<const Player>) {
        EXPECT_EQ(e.day, 50u);
        ++events;
    });
    while (sim.day() < 49) {
        sim.trade_day();
        sim.step_day();
    }
    EXPECT_EQ(events, 0u);
    sim.trade_day();
    sim.step_day();
    EXPECT_EQ(sim.day(), 50u);
    EXPECT_EQ(events, 1u);
}

TEST(Simulation, OneHundredFiftyDaysGiveTwoEvents) {
    const auto out = run_simulation(quick(150));
    ASSERT_EQ(out.evolutions.size(), 2u);
    EXPECT_EQ(out.evolutions[0].day, 50u);
    EXPECT_EQ(out.evolutions[1].day, 100u);
    EXPECT_EQ(out.days_simulated, 150u);
    EXPECT_EQ(out.metrics.complexity.size(), 3u);
    EXPECT_EQ(out.metrics.hidden_units.size(), 9u);
}

TEST(Simulation, NetworthRowsAreDaysTimesPlayers) {
    const auto out = run_simulation(quick(40));
    EXPECT_EQ(out.metrics.networth.size(), 40u * 3u);
}

TEST(Simulation, SymmetricStart) {
    auto cfg = quick(5);
    cfg.players = 4;
    const Simulation sim(cfg, load_or_generate(cfg));
    const auto prices = sim.market().announce_price();
    for (const auto& p : sim.players()) {
        EXPECT_EQ(net_worth(p, prices), net_worth(sim.players()[0], prices));
        EXPECT_EQ(p.cash, cfg.initial_cash);
    }
}

TEST(Simulation, ConservesSharesEveryDay) {
    auto cfg = quick(120, 3);
    cfg.agents_per_stock = 1;
    cfg.players = 4;
    Simulation sim(cfg, load_or_generate(cfg));
    const auto supply = cfg.supply;
    while (!sim.finished()) {
        sim.trade_day();
        EXPECT_EQ(totals(sim.players()), supply);
        sim.step_day();
    }
}

TEST(Simulation, SameSeedSameTranscript) {
    const auto a = run_simulation(quick(80, 5));
    const auto b = run_simulation(quick(80, 5), RunOptions{4});
    ASSERT_EQ(a.trades.size(), b.trades.size());
    for (std::size_t i = 0; i < a.trades.size(); ++i) {
        EXPECT_EQ(a.trades[i].trade.buyer, b.trades[i].trade.buyer);
        EXPECT_EQ(a.trades[i].trade.quantity, b.trades[i].trade.quantity);
    }
    ASSERT_EQ(a.metrics.networth.size(), b.metrics.networth.size());
    for (std::size_t i = 0; i < a.metrics.networth.size(); ++i) {
        EXPECT_EQ(a.metrics.networth[i].net_worth, b.metrics.networth[i].net_worth);
    }
}

TEST(Simulation, DifferentSeedsDiffer) {
    const auto a = run_simulation(quick(30, 1));
    const auto b = run_simulation(quick(30, 2));
    EXPECT_NE(a.metrics.networth.back().net_worth, b.metrics.networth.back().net_worth);
}

TEST(Simulation, ZeroDaysIsEmpty) {
    const auto out = run_simulation(quick(0));
    EXPECT_EQ(out.days_simulated, 0u);
    EXPECT_TRUE(out.metrics.networth.empty());
    EXPECT_TRUE(out.trades.empty());
    EXPECT_TRUE(out.final_players.empty());
}

TEST(Simulation, StopsAtEndOfData) {
    auto cfg = quick(500);
    auto data = generate_synthetic(cfg.stocks, 60, 1);
    const auto out = run_simulation(cfg, data);
    EXPECT_EQ(out.days_simulated, 40u);
}

TEST(Simulation, RejectsMismatchedData) {
    auto cfg = quick(10);
    const std::vector<std::string> names{"DJIA", "NASDAQ"};
    EXPECT_THROW(run_simulation(cfg, generate_synthetic(names, 60, 1)), ConfigError);
    EXPECT_THROW(run_simulation(cfg, generate_synthetic(cfg.stocks, 20, 1)), InsufficientHistory);
}

TEST(Simulation, TradeDayAfterFinishThrows) {
    auto cfg = quick(1);
    Simulation sim(cfg, load_or_generate(cfg));
    sim.trade_day();
    sim.step_day();
    EXPECT_TRUE(sim.finished());
    EXPECT_THROW(sim.trade_day(), EndOfData);
}
