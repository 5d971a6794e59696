#include "cmsim/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {

Market::Market(std::vector<PriceSeries> series, std::vector<std::int64_t> total_supply,
               std::size_t start_index)
    : series_(std::move(series)), supply_(std::move(total_supply)), t_(start_index) {
    if (series_.empty()) {
        throw ConfigError("market needs at least one stock");
    }
    if (supply_.size() != series_.size()) {
        throw ConfigError(fmt::format("{} supplies given for {} stocks", supply_.size(),
                                      series_.size()));
    }
    for (std::size_t m = 0; m < series_.size(); ++m) {
        if (series_[m].size() != series_.front().size()) {
            throw ConfigError(fmt::format("series '{}' is not aligned with '{}'", series_[m].name,
                                          series_.front().name));
        }
        if (supply_[m] <= 0) {
            throw ConfigError(fmt::format("supply of '{}' must be positive", series_[m].name));
        }
    }
}

std::vector<double> Market::announce_price() const {
    if (!has_prices()) {
        throw EndOfData(fmt::format("no prices for row {} (series has {} rows)", t_, num_rows()));
    }
    std::vector<double> prices(series_.size());
    for (std::size_t m = 0; m < series_.size(); ++m) {
        prices[m] = series_[m].closes[t_];
    }
    return prices;
}

std::string_view to_string(Termination t) noexcept {
    return t == Termination::NoMoreTrades ? "no_more_trades" : "round_cap";
}

std::vector<Player> endow_players(int num_players, std::span<const std::int64_t> total_supply,
                                  double initial_cash) {
    if (num_players < 1) {
        throw ConfigError("endow_players: need at least one player");
    }
    if (!(initial_cash >= 0.0)) {
        throw ConfigError("endow_players: initial cash must be >= 0");
    }
    std::vector<Player> players(static_cast<std::size_t>(num_players));
    const auto n = static_cast<std::int64_t>(num_players);
    for (int i = 0; i < num_players; ++i) {
        auto& p = players[static_cast<std::size_t>(i)];
        p.id = i;
        p.cash = initial_cash;
        p.holdings.resize(total_supply.size());
        for (std::size_t m = 0; m < total_supply.size(); ++m) {
            p.holdings[m] = total_supply[m] / n + (i < total_supply[m] % n ? 1 : 0);
        }
    }
    return players;
}

bool apply_trade(std::vector<Player>& players, const Trade& trade) {
    const auto valid_id = [&](int id) {
        return id >= 0 && static_cast<std::size_t>(id) < players.size();
    };
    if (!valid_id(trade.buyer) || !valid_id(trade.seller) || trade.buyer == trade.seller ||
        trade.quantity < 1 || !(trade.price > 0.0)) {
        return false;
    }
    auto& buyer = players[static_cast<std::size_t>(trade.buyer)];
    auto& seller = players[static_cast<std::size_t>(trade.seller)];
    if (trade.stock >= buyer.holdings.size() || trade.stock >= seller.holdings.size()) {
        return false;
    }
    const double cost = static_cast<double>(trade.quantity) * trade.price;
    if (seller.holdings[trade.stock] < trade.quantity || buyer.cash < cost) {
        return false;
    }
    seller.holdings[trade.stock] -= trade.quantity;
    buyer.holdings[trade.stock] += trade.quantity;
    seller.cash += cost;
    buyer.cash -= cost;
    return true;
}

std::int64_t IntentBook::opposite_volume(std::size_t stock, Side side) const {
    std::int64_t volume = 0;
    for (const auto& r : resting.at(stock)) {
        if (r.side != side) {
            volume += r.remaining;
        }
    }
    return volume;
}

ClearingReport run_clearing(const Market& market, std::vector<Player>& players,
                            std::span<const std::vector<double>> predictions, Rng& shuffle_rng,
                            int round_cap) {
    const std::size_t stocks = market.num_stocks();
    if (predictions.size() != players.size()) {
        throw ConfigError(fmt::format("{} prediction sets for {} players", predictions.size(),
                                      players.size()));
    }
    if (round_cap < 1) {
        throw ConfigError("round cap must be >= 1");
    }
    const auto prices = market.announce_price();

    // Predictions and prices are fixed for the whole clearing call, so each
    // player's side and target stock are too.
    std::vector<std::vector<double>> delta(players.size(), std::vector<double>(stocks));
    std::vector<TradeChoice> choice(players.size());
    for (std::size_t p = 0; p < players.size(); ++p) {
        if (predictions[p].size() != stocks) {
            throw ConfigError(fmt::format("player {}: {} predictions for {} stocks", p,
                                          predictions[p].size(), stocks));
        }
        std::vector<double> df(stocks);
        for (std::size_t m = 0; m < stocks; ++m) {
            if (!std::isfinite(predictions[p][m])) {
                throw ConfigError(fmt::format("player {}: non-finite prediction", p));
            }
            delta[p][m] = price_change(predictions[p][m], prices[m]);
            df[m] = decision_factor(delta[p][m], market.supply(m));
        }
        choice[p] = choose_trade_side(df);
    }

    ClearingReport report;
    std::vector<int> order(players.size());
    for (int round = 1; round <= round_cap; ++round) {
        report.rounds = round;
        std::iota(order.begin(), order.end(), 0);
        shuffle_rng.shuffle(std::span(order));

        IntentBook book(stocks);
        std::size_t traded = 0;
        for (const int id : order) {
            const auto p = static_cast<std::size_t>(id);
            const auto [side, m] = choice[p];
            std::int64_t volume = book.opposite_volume(m, side);
            if (volume == 0) {
                volume = market.supply(m);
            }
            const auto intent =
                desired_quantity(players[p], m, side, delta[p][m], prices[m], volume);
            std::int64_t remaining = intent.quantity;
            if (remaining == 0) {
                continue;
            }
            for (auto& rest : book.resting[m]) {
                if (remaining == 0) break;
                if (rest.side == side || rest.remaining == 0) continue;
                Trade trade;
                trade.round = round;
                trade.buyer = side == Side::Buy ? id : rest.player;
                trade.seller = side == Side::Buy ? rest.player : id;
                trade.stock = m;
                trade.quantity = std::min(remaining, rest.remaining);
                trade.price = prices[m];
                if (!apply_trade(players, trade)) {
                    rest.remaining = 0;
                    continue;
                }
                remaining -= trade.quantity;
                rest.remaining -= trade.quantity;
                report.trades.push_back(trade);
                ++traded;
            }
            std::erase_if(book.resting[m], [](const auto& r) { return r.remaining == 0; });
            if (remaining > 0) {
                book.resting[m].push_back({id, side, remaining});
            }
        }
        if (traded == 0) {
            report.terminated_by = Termination::NoMoreTrades;
            return report;
        }
    }
    report.terminated_by = Termination::RoundCap;
    return report;
}

}  // namespace cmsim
