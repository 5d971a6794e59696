#include "cmsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "cmsim/errors.hpp"

namespace cmsim {
namespace {

constexpr std::int64_t kDefaultSupply = 10'000;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <class T>
T parse_value(std::string_view text, const std::string& where, std::string_view key) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(fmt::format("{}: invalid value '{}' for '{}'", where, text, key));
    }
    return value;
}

struct Builder {
    SimulationConfig cfg;
    bool supply_set = false;

    void set(std::string_view key, std::string_view value, const std::string& where) {
        using Setter = std::function<void(Builder&, std::string_view, const std::string&)>;
        static const std::map<std::string, Setter, std::less<>> setters = {
            {"players", [](Builder& b, auto v, auto& w) { b.cfg.players = parse_value<int>(v, w, "players"); }},
            {"agents_per_stock", [](Builder& b, auto v, auto& w) { b.cfg.agents_per_stock = parse_value<int>(v, w, "agents_per_stock"); }},
            {"stocks", [](Builder& b, auto v, auto&) {
                 b.cfg.stocks.clear();
                 for (auto s : split_list(v)) b.cfg.stocks.emplace_back(s);
             }},
            {"window", [](Builder& b, auto v, auto& w) { b.cfg.window = parse_value<std::size_t>(v, w, "window"); }},
            {"cadence", [](Builder& b, auto v, auto& w) { b.cfg.cadence = parse_value<std::size_t>(v, w, "cadence"); }},
            {"p_cross", [](Builder& b, auto v, auto& w) { b.cfg.ga.p_cross = parse_value<double>(v, w, "p_cross"); }},
            {"p_mut", [](Builder& b, auto v, auto& w) { b.cfg.ga.p_mut = parse_value<double>(v, w, "p_mut"); }},
            {"epochs", [](Builder& b, auto v, auto& w) { b.cfg.hyper.epochs = parse_value<int>(v, w, "epochs"); }},
            {"learning_rate", [](Builder& b, auto v, auto& w) { b.cfg.hyper.learning_rate = parse_value<double>(v, w, "learning_rate"); }},
            {"weight_init_scale", [](Builder& b, auto v, auto& w) { b.cfg.hyper.weight_init_scale = parse_value<double>(v, w, "weight_init_scale"); }},
            {"hidden_min", [](Builder& b, auto v, auto& w) { b.cfg.hidden.min = parse_value<int>(v, w, "hidden_min"); }},
            {"hidden_max", [](Builder& b, auto v, auto& w) { b.cfg.hidden.max = parse_value<int>(v, w, "hidden_max"); }},
            {"initial_cash", [](Builder& b, auto v, auto& w) { b.cfg.initial_cash = parse_value<double>(v, w, "initial_cash"); }},
            {"supply", [](Builder& b, auto v, auto& w) {
                 b.cfg.supply.clear();
                 for (auto s : split_list(v)) b.cfg.supply.push_back(parse_value<std::int64_t>(s, w, "supply"));
                 b.supply_set = true;
             }},
            {"days", [](Builder& b, auto v, auto& w) { b.cfg.days = parse_value<std::size_t>(v, w, "days"); }},
            {"seed", [](Builder& b, auto v, auto& w) { b.cfg.seed = parse_value<std::uint64_t>(v, w, "seed"); }},
            {"input", [](Builder& b, auto v, auto&) { b.cfg.input = std::string(v); }},
            {"output", [](Builder& b, auto v, auto&) { b.cfg.output = std::string(v); }},
            {"round_cap", [](Builder& b, auto v, auto& w) { b.cfg.round_cap = parse_value<int>(v, w, "round_cap"); }},
        };
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
        }
        it->second(*this, value, where);
    }

    SimulationConfig finish() {
        if (!supply_set) {
            cfg.supply.assign(cfg.stocks.size(), kDefaultSupply);
        } else if (cfg.supply.size() == 1 && cfg.stocks.size() > 1) {
            cfg.supply.assign(cfg.stocks.size(), cfg.supply.front());
        }
        cfg.validate();
        return cfg;
    }
};

}  // namespace

void SimulationConfig::validate() const {
    if (players < 2) {
        throw ConfigError(fmt::format("players = {}: at least 2 players needed (no counterparty)", players));
    }
    if (agents_per_stock < 1) {
        throw ConfigError(fmt::format("agents_per_stock = {} must be >= 1", agents_per_stock));
    }
    if (stocks.empty()) {
        throw ConfigError("stocks: at least one stock is required");
    }
    if (std::set<std::string>(stocks.begin(), stocks.end()).size() != stocks.size()) {
        throw ConfigError("stocks: duplicate stock name");
    }
    if (stocks.size() * static_cast<std::size_t>(agents_per_stock) < 2) {
        throw ConfigError("a player needs at least 2 agents in total for evolution");
    }
    if (window < 2) {
        throw ConfigError(fmt::format("window = {} must be >= 2", window));
    }
    if (cadence < 1) {
        throw ConfigError("cadence must be >= 1");
    }
    if (!seed) {
        throw ConfigError("missing required key 'seed'");
    }
    if (supply.size() != stocks.size()) {
        throw ConfigError(fmt::format("supply lists {} values for {} stocks", supply.size(), stocks.size()));
    }
    for (const auto q : supply) {
        if (q <= 0) {
            throw ConfigError(fmt::format("supply {} must be positive", q));
        }
    }
    if (!(initial_cash >= 0.0)) {
        throw ConfigError("initial_cash must be >= 0");
    }
    if (round_cap < 1) {
        throw ConfigError("round_cap must be >= 1");
    }
    ga.validate();
    hyper.validate();
    hidden.validate();
}

std::string SimulationConfig::resolved() const {
    std::string out;
    auto line = [&out](std::string_view key, const auto& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    line("players", players);
    line("agents_per_stock", agents_per_stock);
    line("stocks", fmt::format("{}", fmt::join(stocks, ",")));
    line("supply", fmt::format("{}", fmt::join(supply, ",")));
    line("window", window);
    line("cadence", cadence);
    line("days", days);
    line("seed", seed ? fmt::format("{}", *seed) : std::string());
    line("p_cross", ga.p_cross);
    line("p_mut", ga.p_mut);
    line("epochs", hyper.epochs);
    line("learning_rate", hyper.learning_rate);
    line("weight_init_scale", hyper.weight_init_scale);
    line("hidden_min", hidden.min);
    line("hidden_max", hidden.max);
    line("initial_cash", initial_cash);
    line("round_cap", round_cap);
    line("input", input.string());
    return out;
}

SimulationConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
    Builder builder;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = fmt::format("line {}", line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("{}: expected 'key = value', got '{}'", where, line));
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) {
            throw ConfigError(fmt::format("{}: duplicate key '{}'", where, key));
        }
        // Empty values leave the default in place (e.g. `input =` in a
        // resolved file).
        if (value.empty() && (key == "seed" || key == "input")) {
            continue;
        }
        builder.set(key, value, where);
    }
    for (const auto& [key, value] : overrides) {
        builder.set(key, value, fmt::format("--{}", key));
    }
    return builder.finish();
}

SimulationConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), overrides);
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (const auto item : split_list(text)) {
        out.push_back(parse_value<int>(item, "list", text));
    }
    if (out.empty()) {
        throw ConfigError(fmt::format("empty list '{}'", text));
    }
    return out;
}

}  // namespace cmsim
