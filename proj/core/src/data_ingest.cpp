#include "cmsim/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

template <class T>
bool parse_number(std::string_view text, T& value) {
    if (text.empty()) {
        return false;
    }
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc() && ptr == end;
}

double starting_price(std::string_view name) {
    if (name == "DJIA") return 10000.0;
    if (name == "NASDAQ") return 2000.0;
    if (name == "SP500") return 1100.0;
    return 100.0;
}

}  // namespace

NormalizationParams NormalizationParams::from_prices(std::span<const double> prices) {
    if (prices.empty()) {
        throw DataError("normalization over an empty price range");
    }
    const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
    return {*lo, *hi};
}

double normalize(double price, const NormalizationParams& params) {
    if (params.degenerate()) {
        return 0.5;
    }
    return kNormLow + (kNormHigh - kNormLow) * (price - params.min) / (params.max - params.min);
}

double denormalize(double y, const NormalizationParams& params) {
    if (params.degenerate()) {
        return params.min;
    }
    return params.min + (y - kNormLow) * (params.max - params.min) / (kNormHigh - kNormLow);
}

std::vector<std::string> default_stock_names() { return {"DJIA", "NASDAQ", "SP500"}; }

std::vector<PriceSeries> parse_prices(std::istream& in, std::span<const std::string> expected_stocks,
                                      std::size_t window) {
    if (expected_stocks.empty()) {
        throw ConfigError("no stocks requested");
    }
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string_view> header;
    std::string header_line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header_line = line;
            header = split_csv(header_line);
            break;
        }
    }
    if (header.empty() || header.front() != "day") {
        throw LoadError(LoadErrorKind::MalformedRow,
                        fmt::format("line {}: header must start with 'day'", line_no));
    }

    std::vector<std::size_t> column(expected_stocks.size());
    for (std::size_t m = 0; m < expected_stocks.size(); ++m) {
        const auto it = std::find(header.begin() + 1, header.end(), expected_stocks[m]);
        if (it == header.end()) {
            throw LoadError(LoadErrorKind::Misaligned,
                            fmt::format("header has no column for stock '{}'", expected_stocks[m]));
        }
        column[m] = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<PriceSeries> series(expected_stocks.size());
    for (std::size_t m = 0; m < series.size(); ++m) {
        series[m].name = expected_stocks[m];
    }
    std::int64_t previous_day = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw LoadError(LoadErrorKind::Misaligned,
                            fmt::format("line {}: expected {} fields, found {}", line_no,
                                        header.size(), fields.size()));
        }
        std::int64_t day = 0;
        if (!parse_number(fields[0], day)) {
            throw LoadError(LoadErrorKind::MalformedRow,
                            fmt::format("line {}: bad day index '{}'", line_no, fields[0]));
        }
        if (!first_row && day != previous_day + 1) {
            throw LoadError(LoadErrorKind::MalformedRow,
                            fmt::format("line {}: day {} does not follow day {}", line_no, day,
                                        previous_day));
        }
        for (std::size_t m = 0; m < series.size(); ++m) {
            double price = 0.0;
            const auto field = fields[column[m]];
            if (!parse_number(field, price) || !std::isfinite(price)) {
                throw LoadError(LoadErrorKind::MalformedRow,
                                fmt::format("line {}: bad price '{}' for {}", line_no, field,
                                            series[m].name));
            }
            if (price <= 0.0) {
                throw LoadError(LoadErrorKind::NonPositivePrice,
                                fmt::format("line {} (day {}): nonpositive price {} for {}",
                                            line_no, day, field, series[m].name));
            }
            series[m].closes.push_back(price);
        }
        if (first_row) {
            for (auto& s : series) {
                s.first_day = day;
            }
            first_row = false;
        }
        previous_day = day;
    }

    const std::size_t rows = series.front().size();
    if (rows < window + 2) {
        throw LoadError(LoadErrorKind::InsufficientHistory,
                        fmt::format("insufficient history: {} rows, window {} needs at least {}",
                                    rows, window, window + 2));
    }
    return series;
}

std::vector<PriceSeries> load_prices(const std::filesystem::path& path,
                                     std::span<const std::string> expected_stocks,
                                     std::size_t window) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError(LoadErrorKind::MissingFile,
                        fmt::format("cannot open price file '{}'", path.string()));
    }
    return parse_prices(in, expected_stocks, window);
}

TrainingWindow build_window(const PriceSeries& series, std::size_t t, std::size_t n) {
    if (n == 0) {
        throw DomainError("window size must be positive");
    }
    if (t < n) {
        throw InsufficientHistory(
            fmt::format("{}: window of {} needs t >= {}, got t = {}", series.name, n, n, t));
    }
    if (t >= series.size()) {
        throw EndOfData(fmt::format("{}: day index {} beyond series of length {}", series.name, t,
                                    series.size()));
    }
    const std::span<const double> prices(series.closes.data() + (t - n), n + 1);
    TrainingWindow window;
    window.params = NormalizationParams::from_prices(prices);
    window.pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        window.pairs.push_back({normalize(prices[i], window.params),
                                normalize(prices[i + 1], window.params)});
    }
    return window;
}

std::vector<PriceSeries> generate_synthetic(std::span<const std::string> names, std::size_t days,
                                            std::uint64_t seed) {
    constexpr double kDrift = 0.0002;
    constexpr double kVolatility = 0.012;
    const Rng root(seed);
    std::vector<PriceSeries> out;
    out.reserve(names.size());
    for (const auto& name : names) {
        Rng rng = root.fork("synthetic:" + name);
        PriceSeries s{name, 0, {}};
        s.closes.reserve(days);
        double price = starting_price(name);
        for (std::size_t d = 0; d < days; ++d) {
            // Rounded to the precision the CSV writer uses so that written
            // and in-memory series agree exactly.
            s.closes.push_back(std::round(price * 1e4) / 1e4);
            price *= std::exp(kDrift - 0.5 * kVolatility * kVolatility + kVolatility * rng.normal());
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_prices_csv(std::ostream& out, std::span<const PriceSeries> series) {
    out << "day";
    for (const auto& s : series) {
        out << ',' << s.name;
    }
    out << '\n';
    const std::size_t rows = series.empty() ? 0 : series.front().size();
    const std::int64_t first = series.empty() ? 0 : series.front().first_day;
    for (std::size_t t = 0; t < rows; ++t) {
        out << first + static_cast<std::int64_t>(t);
        for (const auto& s : series) {
            out << fmt::format(",{:.4f}", s.closes[t]);
        }
        out << '\n';
    }
}

}  // namespace cmsim
