#include "cmsim/data_ingest.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "cmsim/errors.hpp"

using namespace cmsim;

namespace {

const std::vector<std::string> kStocks{"DJIA", "NASDAQ", "SP500"};

std::string csv_rows(std::size_t rows) {
    std::string text = "day,DJIA,NASDAQ,SP500\n";
    for (std::size_t d = 0; d < rows; ++d) {
        text += fmt::format("{},{},{},{}\n", d, 10000 + d, 2000 + 0.5 * d, 1100 - 0.25 * d);
    }
    return text;
}

LoadErrorKind load_error_kind(const std::string& text, std::size_t window) {
    std::istringstream in(text);
    try {
        parse_prices(in, kStocks, window);
    } catch (const LoadError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no LoadError";
    return LoadErrorKind::MissingFile;
}

PriceSeries series_of(std::vector<double> closes) {
    return {"X", 0, std::move(closes)};
}

}  // namespace

TEST(ParsePrices, WellFormedFile) {
    std::istringstream in(csv_rows(300));
    const auto series = parse_prices(in, kStocks, 50);
    ASSERT_EQ(series.size(), 3u);
    for (std::size_t m = 0; m < 3; ++m) {
        EXPECT_EQ(series[m].name, kStocks[m]);
        EXPECT_EQ(series[m].size(), 300u);
    }
    EXPECT_EQ(series[0].at(299), 10299.0);
    EXPECT_EQ(series[1].at(3), 2001.5);
    EXPECT_EQ(series[2].at(4), 1099.0);
}

TEST(ParsePrices, ColumnsFoundByName) {
    std::string text = "day,SP500,extra,DJIA,NASDAQ\n";
    for (int d = 0; d < 10; ++d) {
        text += fmt::format("{},{},7,{},{}\n", d + 100, 1 + d, 3 + d, 5 + d);
    }
    std::istringstream in(text);
    const auto series = parse_prices(in, kStocks, 2);
    EXPECT_EQ(series[0].at(0), 3.0);
    EXPECT_EQ(series[1].at(0), 5.0);
    EXPECT_EQ(series[2].at(0), 1.0);
    EXPECT_EQ(series[0].first_day, 100);
}

TEST(ParsePrices, ZeroPriceNamesTheRow) {
    auto text = csv_rows(100);
    text.replace(text.find("\n7,") + 1, std::string("7,10007").size(), "7,0");
    std::istringstream in(text);
    try {
        parse_prices(in, kStocks, 50);
        FAIL() << "accepted a zero price";
    } catch (const LoadError& e) {
        EXPECT_EQ(e.kind(), LoadErrorKind::NonPositivePrice);
        EXPECT_NE(std::string(e.what()).find("line 9"), std::string::npos) << e.what();
        EXPECT_EQ(e.error_class(), "LoadError.NonPositivePrice");
    }
}

TEST(ParsePrices, ShortFileIsInsufficientHistory) {
    EXPECT_EQ(load_error_kind(csv_rows(10), 50), LoadErrorKind::InsufficientHistory);
    EXPECT_EQ(load_error_kind(csv_rows(51), 50), LoadErrorKind::InsufficientHistory);
    std::istringstream in(csv_rows(52));
    EXPECT_NO_THROW(parse_prices(in, kStocks, 50));
}

TEST(ParsePrices, Guards) {
    EXPECT_EQ(load_error_kind("", 1), LoadErrorKind::MalformedRow);
    EXPECT_EQ(load_error_kind("date,DJIA,NASDAQ,SP500\n", 1), LoadErrorKind::MalformedRow);
    EXPECT_EQ(load_error_kind("day,DJIA,NASDAQ\n0,1,2\n", 1), LoadErrorKind::Misaligned);
    EXPECT_EQ(load_error_kind("day,DJIA,NASDAQ,SP500\n0,1,2\n", 1), LoadErrorKind::Misaligned);
    EXPECT_EQ(load_error_kind("day,DJIA,NASDAQ,SP500\n0,1,x,3\n", 1), LoadErrorKind::MalformedRow);
    EXPECT_EQ(load_error_kind("day,DJIA,NASDAQ,SP500\n0,1,2,3\n2,1,2,3\n", 1),
              LoadErrorKind::MalformedRow);
    EXPECT_EQ(load_error_kind("day,DJIA,NASDAQ,SP500\n0,1,-2,3\n", 1),
              LoadErrorKind::NonPositivePrice);
}

TEST(LoadPrices, MissingFile) {
    try {
        load_prices("/nonexistent/prices.csv", kStocks, 50);
        FAIL();
    } catch (const LoadError& e) {
        EXPECT_EQ(e.kind(), LoadErrorKind::MissingFile);
    }
}

TEST(Normalize, Endpoints) {
    const std::vector<double> prices{4.0, 9.0, 2.0, 7.0};
    const auto p = NormalizationParams::from_prices(prices);
    EXPECT_EQ(normalize(2.0, p), 0.1);
    EXPECT_EQ(normalize(9.0, p), 0.9);
}

TEST(Normalize, RoundTrip) {
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(1.0, 20000.0);
        const double b = a + rng.uniform(1e-3, 5000.0);
        const std::vector<double> prices{a, b};
        const auto p = NormalizationParams::from_prices(prices);
        const double x = rng.uniform(a, b);
        EXPECT_LE(std::abs(denormalize(normalize(x, p), p) - x), 1e-12 * x);
    }
}

TEST(Normalize, FlatWindowIsMidpoint) {
    const std::vector<double> prices{5.0, 5.0, 5.0};
    const auto p = NormalizationParams::from_prices(prices);
    EXPECT_TRUE(p.degenerate());
    EXPECT_EQ(normalize(5.0, p), 0.5);
    EXPECT_EQ(denormalize(0.5, p), 5.0);
}

TEST(BuildWindow, FiftyPairsEndingAtT) {
    std::vector<double> closes;
    Rng rng(3);
    for (int i = 0; i < 80; ++i) closes.push_back(rng.uniform(50.0, 150.0));
    const auto s = series_of(closes);
    const auto w = build_window(s, 50, 50);
    ASSERT_EQ(w.pairs.size(), 50u);
    EXPECT_EQ(w.pairs.back().input, normalize(closes[49], w.params));
    EXPECT_EQ(w.pairs.back().target, normalize(closes[50], w.params));
    EXPECT_EQ(w.pairs.front().input, normalize(closes[0], w.params));
    for (std::size_t i = 0; i + 1 < w.pairs.size(); ++i) {
        EXPECT_EQ(w.pairs[i].target, w.pairs[i + 1].input);
    }
}

TEST(BuildWindow, ConsecutiveWindowsShareRawPairs) {
    std::vector<double> closes;
    for (int i = 0; i < 30; ++i) closes.push_back(100.0 + ((i * 37) % 11));
    const auto s = series_of(closes);
    const auto a = build_window(s, 20, 10);
    const auto b = build_window(s, 21, 10);
    ASSERT_EQ(a.pairs.size(), 10u);
    ASSERT_EQ(b.pairs.size(), 10u);
    for (std::size_t i = 0; i + 1 < 10; ++i) {
        EXPECT_NEAR(denormalize(a.pairs[i + 1].input, a.params),
                    denormalize(b.pairs[i].input, b.params), 1e-9);
        EXPECT_NEAR(denormalize(a.pairs[i + 1].target, a.params),
                    denormalize(b.pairs[i].target, b.params), 1e-9);
    }
}

TEST(BuildWindow, ConstantSeries) {
    const auto s = series_of(std::vector<double>(60, 42.0));
    const auto w = build_window(s, 55, 50);
    for (const auto& p : w.pairs) {
        EXPECT_EQ(p.input, 0.5);
        EXPECT_EQ(p.target, 0.5);
    }
}

TEST(BuildWindow, FivePointRamp) {
    // 10..60 spans [0.1, 0.9] in steps of 0.16.
    const auto s = series_of({10, 20, 30, 40, 50, 60});
    const auto w = build_window(s, 5, 5);
    const double expected[] = {0.1, 0.26, 0.42, 0.58, 0.74, 0.9};
    ASSERT_EQ(w.pairs.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(w.pairs[i].input, expected[i], 1e-15);
        EXPECT_NEAR(w.pairs[i].target, expected[i + 1], 1e-15);
    }
}

TEST(BuildWindow, Bounds) {
    const auto s = series_of(std::vector<double>(20, 1.0));
    EXPECT_THROW(build_window(s, 9, 10), InsufficientHistory);
    EXPECT_THROW(build_window(s, 20, 10), EndOfData);
    EXPECT_NO_THROW(build_window(s, 19, 10));
}

TEST(Synthetic, CsvRoundTripIsExact) {
    const auto names = default_stock_names();
    const auto series = generate_synthetic(names, 120, 77);
    std::ostringstream out;
    write_prices_csv(out, series);
    std::istringstream in(out.str());
    const auto back = parse_prices(in, names, 50);
    ASSERT_EQ(back.size(), series.size());
    for (std::size_t m = 0; m < series.size(); ++m) {
        EXPECT_EQ(back[m].closes, series[m].closes);
    }
}

TEST(Synthetic, SeedDetermines) {
    const auto names = default_stock_names();
    EXPECT_EQ(generate_synthetic(names, 50, 1)[0].closes, generate_synthetic(names, 50, 1)[0].closes);
    EXPECT_NE(generate_synthetic(names, 50, 1)[0].closes, generate_synthetic(names, 50, 2)[0].closes);
    for (const auto& s : generate_synthetic(names, 500, 3)) {
        for (const double p : s.closes) EXPECT_GT(p, 0.0);
    }
}
