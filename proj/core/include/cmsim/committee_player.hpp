#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cmsim/data_ingest.hpp"
#include "cmsim/neural_agent.hpp"

namespace cmsim {

enum class Side { Buy, Sell };

std::string_view to_string(Side side) noexcept;

/// Largest fraction of its current holding a player offers in one intent.
inline constexpr double kMaxSellFraction = 0.40;

/// A market participant: one committee of agents per stock plus a portfolio.
struct Player {
    int id = 0;
    /// committees[m] are the agents predicting stock m.
    std::vector<std::vector<Agent>> committees;
    double cash = 0.0;
    std::vector<std::int64_t> holdings;

    std::size_t agent_count() const noexcept;

    /// All agents, stock-major (stock 0's committee first).
    std::vector<Agent> flat_agents() const;
};

/// Per stock: the mean of that committee's normalized forecasts, mapped back
/// to price units with the stock's normalization parameters. Forecasts that
/// denormalize to a nonpositive price are floored to a small positive value.
std::vector<double> committee_predict(const Player& player,
                                      std::span<const double> current_normalized,
                                      std::span<const NormalizationParams> params);

/// Relative predicted change (predicted - current) / current.
double price_change(double predicted, double current);

/// delta_p scaled by the quantity available for the stock.
double decision_factor(double delta_p, std::int64_t q_available);

struct TradeChoice {
    Side side = Side::Buy;
    std::size_t stock = 0;

    bool operator==(const TradeChoice&) const = default;
};

/// Sell the argmin stock when |max df| < |min df|, otherwise buy the argmax
/// stock. Ties go to Buy and to the lowest stock index.
TradeChoice choose_trade_side(std::span<const double> df);

struct TradeIntent {
    int player = 0;
    std::size_t stock = 0;
    Side side = Side::Buy;
    std::int64_t quantity = 0;
};

/// Shares the player wants to trade on `side`:
///   Buy:  floor(|dp| * volume), capped by affordability and by `market_volume`.
///   Sell: min(floor(|dp| * volume), floor(0.40 * holding)).
/// A side that contradicts the sign of `delta_p` (buying on an expected drop,
/// selling on an expected rise) yields quantity 0.
TradeIntent desired_quantity(const Player& player, std::size_t stock, Side side, double delta_p,
                             double announced_price, std::int64_t market_volume);

/// cash + sum_m holdings[m] * prices[m].
double net_worth(const Player& player, std::span<const double> prices);

}  // namespace cmsim
