#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cmsim/neural_agent.hpp"

namespace cmsim {

/// Closing prices of one stock for consecutive days starting at `first_day`.
struct PriceSeries {
    std::string name;
    std::int64_t first_day = 0;
    std::vector<double> closes;

    std::size_t size() const noexcept { return closes.size(); }
    double at(std::size_t t) const { return closes.at(t); }
};

inline constexpr double kNormLow = 0.1;
inline constexpr double kNormHigh = 0.9;

/// Min-max scaling onto [kNormLow, kNormHigh]. A flat reference window
/// (max == min) maps every price to the midpoint 0.5.
struct NormalizationParams {
    double min = 0.0;
    double max = 1.0;

    static NormalizationParams from_prices(std::span<const double> prices);

    bool degenerate() const noexcept { return !(max > min); }
};

double normalize(double price, const NormalizationParams& params);
double denormalize(double y, const NormalizationParams& params);

/// Default stock universe: the three US indices.
std::vector<std::string> default_stock_names();

/// Parses the `day,<stock>,...` CSV format. Columns are looked up by name;
/// every name in `expected_stocks` must be present and extra columns are
/// ignored. Each returned series has at least `window + 2` rows.
std::vector<PriceSeries> parse_prices(std::istream& in, std::span<const std::string> expected_stocks,
                                      std::size_t window);

std::vector<PriceSeries> load_prices(const std::filesystem::path& path,
                                     std::span<const std::string> expected_stocks,
                                     std::size_t window);

struct TrainingWindow {
    std::vector<Sample> pairs;
    NormalizationParams params;
};

/// Pairs (p[t-n+i], p[t-n+i+1]) for i in [0, n), normalized by the min/max
/// of p[t-n .. t].
TrainingWindow build_window(const PriceSeries& series, std::size_t t, std::size_t n);

/// Geometric random walk, one series per name, `days` rows each.
std::vector<PriceSeries> generate_synthetic(std::span<const std::string> names, std::size_t days,
                                            std::uint64_t seed);

void write_prices_csv(std::ostream& out, std::span<const PriceSeries> series);

}  // namespace cmsim
