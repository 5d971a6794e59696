#include "cmsim/config.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "cmsim/errors.hpp"

using namespace cmsim;

namespace {

std::string config_error(std::string_view text, const ConfigOverrides& overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, MinimalFileGetsDefaults) {
    const auto c = parse_config("seed = 3\n");
    EXPECT_EQ(c.players, 4);
    EXPECT_EQ(c.agents_per_stock, 4);
    EXPECT_EQ(c.stocks, (std::vector<std::string>{"DJIA", "NASDAQ", "SP500"}));
    EXPECT_EQ(c.supply, (std::vector<std::int64_t>{10000, 10000, 10000}));
    EXPECT_EQ(c.window, 50u);
    EXPECT_EQ(c.cadence, 50u);
    EXPECT_EQ(c.ga.p_cross, 0.6);
    EXPECT_EQ(c.ga.p_mut, 0.03);
    EXPECT_EQ(c.hyper.epochs, 200);
    EXPECT_EQ(c.hidden.min, 1);
    EXPECT_EQ(c.hidden.max, 10);
    EXPECT_EQ(c.initial_cash, 1e6);
    EXPECT_EQ(c.round_cap, 100);
    EXPECT_EQ(c.seed, 3u);
    EXPECT_TRUE(c.input.empty());
}

TEST(Config, SinglePlayerRejected) {
    const auto msg = config_error("seed = 1\nplayers = 1\n");
    EXPECT_NE(msg.find("no counterparty"), std::string::npos) << msg;
}

TEST(Config, FlagOverridesFile) {
    const auto c = parse_config("seed = 3\n", {{"seed", "7"}});
    EXPECT_EQ(c.seed, 7u);
}

TEST(Config, SeedIsRequired) {
    EXPECT_NE(config_error("players = 4\n").find("seed"), std::string::npos);
}

TEST(Config, UnknownAndDuplicateKeysNameTheLine) {
    EXPECT_NE(config_error("seed = 1\n\nplayerz = 4\n").find("line 3"), std::string::npos);
    EXPECT_NE(config_error("seed = 1\nseed = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(config_error("seed = 1\nplayers\n").find("line 2"), std::string::npos);
    EXPECT_NE(config_error("seed = 1\nplayers = four\n").find("players"), std::string::npos);
    EXPECT_NE(config_error("seed = 1\n", {{"bogus", "1"}}).find("--bogus"), std::string::npos);
}

TEST(Config, CommentsAndWhitespace) {
    const auto c = parse_config("# header\n  seed=5   # trailing\n\tplayers =  6\n");
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.players, 6);
}

TEST(Config, SupplyBroadcastAndLists) {
    EXPECT_EQ(parse_config("seed = 1\nsupply = 500\n").supply,
              (std::vector<std::int64_t>{500, 500, 500}));
    EXPECT_EQ(parse_config("seed = 1\nstocks = A, B\nsupply = 5, 7\n").supply,
              (std::vector<std::int64_t>{5, 7}));
    EXPECT_FALSE(config_error("seed = 1\nstocks = A,B\nsupply = 5,6,7\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nsupply = 0\n").empty());
}

TEST(Config, InvariantGuards) {
    EXPECT_FALSE(config_error("seed = 1\np_mut = 0.7\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nepochs = 0\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nhidden_max = 11\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nwindow = 1\n").empty());
    EXPECT_FALSE(config_error("seed = 1\ncadence = 0\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nstocks = A\nagents_per_stock = 1\n").empty());
    EXPECT_FALSE(config_error("seed = 1\nstocks = A,A\n").empty());
}

TEST(Config, ResolvedRoundTrips) {
    const auto c = parse_config("seed = 9\nplayers = 3\nlearning_rate = 0.125\nsupply = 10,20,30\n");
    const auto again = parse_config(c.resolved());
    EXPECT_EQ(again.resolved(), c.resolved());
    EXPECT_EQ(again.supply, c.supply);
    EXPECT_EQ(again.hyper.learning_rate, 0.125);
    EXPECT_EQ(c.resolved().find("output"), std::string::npos);
}

TEST(Config, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "cmsim_config_test.cfg";
    {
        std::ofstream f(path);
        f << "seed = 4\ndays = 12\n";
    }
    const auto c = load_config(path, {{"days", "30"}});
    EXPECT_EQ(c.seed, 4u);
    EXPECT_EQ(c.days, 30u);
    std::filesystem::remove(path);
    EXPECT_THROW(load_config(path), Error);
}

TEST(ParseIntList, Values) {
    EXPECT_EQ(parse_int_list("2,4,8,16"), (std::vector<int>{2, 4, 8, 16}));
    EXPECT_EQ(parse_int_list(" 3 "), (std::vector<int>{3}));
    EXPECT_THROW(parse_int_list("2,x"), ConfigError);
}
