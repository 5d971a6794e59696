#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmsim/evolution.hpp"
#include "cmsim/neural_agent.hpp"

namespace cmsim {

struct SimulationConfig {
    int players = 4;
    int agents_per_stock = 4;
    std::vector<std::string> stocks{"DJIA", "NASDAQ", "SP500"};
    std::size_t window = 50;
    std::size_t cadence = 50;
    GaParams ga;
    Hyperparams hyper;
    HiddenBounds hidden;
    double initial_cash = 1'000'000.0;
    /// Total shares per stock, aligned with `stocks`.
    std::vector<std::int64_t> supply{10'000, 10'000, 10'000};
    /// Trading days to simulate; the run also stops cleanly at end of data.
    std::size_t days = 250;
    std::optional<std::uint64_t> seed;
    /// Price CSV. When empty the run generates a synthetic series from the seed.
    std::filesystem::path input;
    std::filesystem::path output = "out";
    int round_cap = 100;

    std::size_t num_stocks() const noexcept { return stocks.size(); }

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    /// Every key except `output` with its effective value, one `key = value`
    /// per line, in a fixed order. The destination directory is left out so
    /// that the same run written to two places is byte-identical.
    std::string resolved() const;
};

/// Command-line overrides, keyed like the config file.
using ConfigOverrides = std::map<std::string, std::string, std::less<>>;

/// Parses line-oriented `key = value` text (`#` starts a comment). Unknown
/// or duplicate keys are rejected with their line number. Overrides are
/// applied after the text, then the result is validated.
SimulationConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

SimulationConfig load_config(const std::filesystem::path& path,
                             const ConfigOverrides& overrides = {});

/// Parses "2,4,8" style lists.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace cmsim
