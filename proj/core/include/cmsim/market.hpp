#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmsim/committee_player.hpp"
#include "cmsim/data_ingest.hpp"
#include "cmsim/rng.hpp"

namespace cmsim {

inline constexpr int kDefaultRoundCap = 100;

/// Historical prices plus the fixed per-stock supply. `t` indexes the rows
/// of the loaded series.
class Market {
public:
    Market(std::vector<PriceSeries> series, std::vector<std::int64_t> total_supply,
           std::size_t start_index = 0);

    std::size_t num_stocks() const noexcept { return series_.size(); }
    std::size_t num_rows() const noexcept { return series_.front().size(); }
    const PriceSeries& series(std::size_t m) const { return series_.at(m); }
    std::span<const PriceSeries> all_series() const noexcept { return series_; }
    std::span<const std::int64_t> total_supply() const noexcept { return supply_; }
    std::int64_t supply(std::size_t m) const { return supply_.at(m); }

    std::size_t t() const noexcept { return t_; }
    bool has_prices() const noexcept { return t_ < num_rows(); }
    void advance() noexcept { ++t_; }

    /// Closing prices of every stock at row t. Throws EndOfData past the end.
    std::vector<double> announce_price() const;

private:
    std::vector<PriceSeries> series_;
    std::vector<std::int64_t> supply_;
    std::size_t t_;
};

struct Trade {
    int round = 0;
    int buyer = 0;
    int seller = 0;
    std::size_t stock = 0;
    std::int64_t quantity = 0;
    double price = 0.0;
};

enum class Termination { NoMoreTrades, RoundCap };

std::string_view to_string(Termination t) noexcept;

struct ClearingReport {
    std::vector<Trade> trades;
    int rounds = 0;
    Termination terminated_by = Termination::NoMoreTrades;
};

/// Equal cash for every player; Q_m / N shares of each stock, with the
/// remainder going one share each to the lowest player ids. Committees are
/// left empty.
std::vector<Player> endow_players(int num_players, std::span<const std::int64_t> total_supply,
                                  double initial_cash);

/// Settles one trade in place. Returns false, changing nothing, when the
/// seller lacks the shares, the buyer lacks the cash, or the trade is
/// otherwise malformed.
bool apply_trade(std::vector<Player>& players, const Trade& trade);

/// Book volume an intent for `stock` on `side` is sized against: the
/// resting opposite-side quantity if nonzero, else the stock's total supply.
struct IntentBook {
    struct Resting {
        int player = 0;
        Side side = Side::Buy;
        std::int64_t remaining = 0;
    };

    explicit IntentBook(std::size_t stocks) : resting(stocks) {}

    std::int64_t opposite_volume(std::size_t stock, Side side) const;

    std::vector<std::vector<Resting>> resting;
};

/// Trades to consensus at the announced prices. Each round shuffles the
/// player order, lets every player post one intent, and fills it against
/// earlier opposite-side intents of that round, earliest first. Stops after
/// a round with no trades or at `round_cap` rounds.
ClearingReport run_clearing(const Market& market, std::vector<Player>& players,
                            std::span<const std::vector<double>> predictions, Rng& shuffle_rng,
                            int round_cap = kDefaultRoundCap);

}  // namespace cmsim
