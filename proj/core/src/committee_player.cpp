#include "cmsim/committee_player.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

// Floor applied to forecasts that denormalize to <= 0: a relative fraction
// of the reference window's minimum.
constexpr double kMinPredictionFraction = 1e-6;

}  // namespace

std::string_view to_string(Side side) noexcept { return side == Side::Buy ? "buy" : "sell"; }

std::size_t Player::agent_count() const noexcept {
    std::size_t n = 0;
    for (const auto& c : committees) {
        n += c.size();
    }
    return n;
}

std::vector<Agent> Player::flat_agents() const {
    std::vector<Agent> out;
    out.reserve(agent_count());
    for (const auto& c : committees) {
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<double> committee_predict(const Player& player,
                                      std::span<const double> current_normalized,
                                      std::span<const NormalizationParams> params) {
    const std::size_t stocks = current_normalized.size();
    if (params.size() != stocks || player.committees.size() != stocks) {
        throw ConfigError(fmt::format("player {}: {} committees, {} prices, {} normalizations",
                                      player.id, player.committees.size(), stocks, params.size()));
    }
    std::vector<double> predicted(stocks);
    for (std::size_t m = 0; m < stocks; ++m) {
        const auto& committee = player.committees[m];
        if (committee.empty()) {
            throw ConfigError(fmt::format("player {}: no agents for stock {}", player.id, m));
        }
        double sum = 0.0;
        for (const auto& agent : committee) {
            sum += agent.forward(current_normalized[m]);
        }
        const double mean = sum / static_cast<double>(committee.size());
        const double price = denormalize(mean, params[m]);
        predicted[m] = std::max(price, kMinPredictionFraction * params[m].min);
    }
    return predicted;
}

double price_change(double predicted, double current) {
    if (!(current > 0.0)) {
        throw DomainError(fmt::format("price_change: current price must be > 0, got {}", current));
    }
    return (predicted - current) / current;
}

double decision_factor(double delta_p, std::int64_t q_available) {
    if (q_available < 0) {
        throw DomainError("decision_factor: negative available quantity");
    }
    return delta_p * static_cast<double>(q_available);
}

TradeChoice choose_trade_side(std::span<const double> df) {
    if (df.empty()) {
        throw ConfigError("choose_trade_side: empty decision factor");
    }
    std::size_t arg_max = 0;
    std::size_t arg_min = 0;
    for (std::size_t m = 1; m < df.size(); ++m) {
        if (df[m] > df[arg_max]) arg_max = m;
        if (df[m] < df[arg_min]) arg_min = m;
    }
    if (std::abs(df[arg_max]) < std::abs(df[arg_min])) {
        return {Side::Sell, arg_min};
    }
    return {Side::Buy, arg_max};
}

TradeIntent desired_quantity(const Player& player, std::size_t stock, Side side, double delta_p,
                             double announced_price, std::int64_t market_volume) {
    if (!(announced_price > 0.0)) {
        throw DomainError(fmt::format("desired_quantity: price must be > 0, got {}", announced_price));
    }
    if (market_volume < 0 || player.cash < 0.0) {
        throw DomainError("desired_quantity: negative volume or cash");
    }
    if (stock >= player.holdings.size()) {
        throw DomainError(fmt::format("desired_quantity: stock {} out of range", stock));
    }
    if (player.holdings[stock] < 0) {
        throw DomainError("desired_quantity: negative holding");
    }

    TradeIntent intent{player.id, stock, side, 0};
    const bool agrees = side == Side::Buy ? delta_p > 0.0 : delta_p < 0.0;
    if (!agrees) {
        return intent;
    }
    const auto wanted = static_cast<std::int64_t>(
        std::floor(std::abs(delta_p) * static_cast<double>(market_volume)));

    if (side == Side::Buy) {
        auto affordable = static_cast<std::int64_t>(std::floor(player.cash / announced_price));
        while (affordable > 0 && static_cast<double>(affordable) * announced_price > player.cash) {
            --affordable;
        }
        intent.quantity = std::min({wanted, affordable, market_volume});
    } else {
        // floor(0.40 * holding) in exact integer arithmetic.
        const std::int64_t cap = player.holdings[stock] * 2 / 5;
        intent.quantity = std::min(wanted, cap);
    }
    intent.quantity = std::max<std::int64_t>(intent.quantity, 0);
    return intent;
}

double net_worth(const Player& player, std::span<const double> prices) {
    if (prices.size() != player.holdings.size()) {
        throw ConfigError("net_worth: price vector does not match holdings");
    }
    double total = player.cash;
    for (std::size_t m = 0; m < prices.size(); ++m) {
        if (!(prices[m] > 0.0)) {
            throw DomainError("net_worth: prices must be > 0");
        }
        total += static_cast<double>(player.holdings[m]) * prices[m];
    }
    return total;
}

}  // namespace cmsim
