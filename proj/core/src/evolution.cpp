#include "cmsim/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/format.h>

#include "cmsim/errors.hpp"

namespace cmsim {

GrayBits gray_code(unsigned value) {
    if (value > 255) {
        throw DomainError(fmt::format("gray_code: {} does not fit in 8 bits", value));
    }
    const unsigned g = value ^ (value >> 1);
    GrayBits bits{};
    for (std::size_t i = 0; i < kGrayBits; ++i) {
        bits[i] = static_cast<std::uint8_t>((g >> (kGrayBits - 1 - i)) & 1U);
    }
    return bits;
}

unsigned gray_to_binary(std::span<const std::uint8_t> bits) {
    if (bits.size() != kGrayBits) {
        throw DomainError(fmt::format("gray decode needs {} bits, got {}", kGrayBits, bits.size()));
    }
    // Binary bit i is the XOR of Gray bits 0..i (MSB first).
    unsigned value = 0;
    unsigned running = 0;
    for (const auto b : bits) {
        if (b > 1) {
            throw DomainError("gray decode: bit value other than 0/1");
        }
        running ^= b;
        value = (value << 1) | running;
    }
    return value;
}

GrayBits gray_encode(int hidden_units) {
    if (hidden_units < kMinHiddenUnits || hidden_units > kMaxHiddenUnits) {
        throw DomainError(fmt::format("gray_encode: hidden units {} outside [{}, {}]", hidden_units,
                                      kMinHiddenUnits, kMaxHiddenUnits));
    }
    return gray_code(static_cast<unsigned>(hidden_units));
}

int gray_decode(std::span<const std::uint8_t> bits) {
    const auto v = static_cast<int>(gray_to_binary(bits));
    return std::clamp(v, kMinHiddenUnits, kMaxHiddenUnits);
}

Chromosome Chromosome::from_spec(const AgentSpec& spec) {
    Chromosome c;
    const auto gray = gray_encode(spec.hidden_units);
    std::copy(gray.begin(), gray.end(), c.bits.begin());
    c.bits[kGrayBits] = spec.activation == ActivationKind::Logistic ? 1 : 0;
    return c;
}

Chromosome Chromosome::from_string(std::string_view text) {
    if (text.size() != kChromosomeBits) {
        throw DomainError(fmt::format("chromosome needs {} bits, got '{}'", kChromosomeBits, text));
    }
    Chromosome c;
    for (std::size_t i = 0; i < kChromosomeBits; ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw DomainError(fmt::format("chromosome '{}' has a non-binary digit", text));
        }
        c.bits[i] = text[i] == '1' ? 1 : 0;
    }
    return c;
}

AgentSpec Chromosome::to_spec() const {
    return {gray_decode(std::span(bits).first<kGrayBits>()),
            bits[kGrayBits] ? ActivationKind::Logistic : ActivationKind::Linear};
}

std::string Chromosome::to_string() const {
    std::string s(kChromosomeBits, '0');
    for (std::size_t i = 0; i < kChromosomeBits; ++i) {
        s[i] = bits[i] ? '1' : '0';
    }
    return s;
}

std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& a, const Chromosome& b,
                                                      std::size_t cut) {
    if (cut < 1 || cut >= kChromosomeBits) {
        throw DomainError(fmt::format("crossover cut {} not in [1, {}]", cut, kChromosomeBits - 1));
    }
    Chromosome x = a;
    Chromosome y = b;
    for (std::size_t i = cut; i < kChromosomeBits; ++i) {
        std::swap(x.bits[i], y.bits[i]);
    }
    return {x, y};
}

std::pair<Chromosome, Chromosome> maybe_crossover(const Chromosome& a, const Chromosome& b,
                                                  double p_cross, Rng& rng) {
    if (!rng.bernoulli(p_cross)) {
        return {a, b};
    }
    const std::size_t cut = 1 + rng.index(kChromosomeBits - 1);
    return crossover_one_point(a, b, cut);
}

Chromosome mutate_bit(const Chromosome& c, double p_mut, Rng& rng) {
    if (!(p_mut >= 0.0 && p_mut <= 1.0)) {
        throw DomainError(fmt::format("mutation probability {} outside [0, 1]", p_mut));
    }
    if (!rng.bernoulli(p_mut)) {
        return c;
    }
    Chromosome out = c;
    auto& bit = out.bits[rng.index(kChromosomeBits)];
    bit ^= 1U;
    return out;
}

FitnessRecord FitnessRecord::from_error(std::size_t agent_index, double error) {
    if (!(error >= 0.0) || !std::isfinite(error)) {
        throw DomainError(fmt::format("agent {}: error must be finite and >= 0, got {}", agent_index,
                                      error));
    }
    return {agent_index, error, 1.0 / (kFitnessEpsilon + error)};
}

std::size_t roulette_select(std::span<const FitnessRecord> records, Rng& rng) {
    if (records.empty()) {
        throw DomainError("roulette_select: no records");
    }
    double total = 0.0;
    for (const auto& r : records) {
        if (!(r.fitness > 0.0)) {
            throw DomainError("roulette_select: nonpositive fitness");
        }
        total += r.fitness;
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DomainError("roulette_select: nonpositive total fitness");
    }
    const double spin = rng.uniform01() * total;
    double acc = 0.0;
    for (const auto& r : records) {
        acc += r.fitness;
        if (spin < acc) {
            return r.agent_index;
        }
    }
    // Rounding can leave spin == total; that belongs to the last slot.
    return records.back().agent_index;
}

void GaParams::validate() const {
    const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_cross) || !in_unit(p_mut)) {
        throw ConfigError(fmt::format("GA probabilities must lie in [0, 1] (p_cross {}, p_mut {})",
                                      p_cross, p_mut));
    }
    if (!(p_mut < p_cross)) {
        throw ConfigError(fmt::format("p_mut ({}) must be lower than p_cross ({})", p_mut, p_cross));
    }
}

Player evolve_generation(const Player& player, std::span<const double> errors,
                         const GaParams& params, EvolutionStreams streams,
                         double weight_init_scale) {
    const auto agents = player.flat_agents();
    const std::size_t size = agents.size();
    if (errors.size() != size) {
        throw ConfigError(fmt::format("player {}: {} errors for {} agents", player.id,
                                      errors.size(), size));
    }
    if (size < 2) {
        throw ConfigError(fmt::format("player {}: population of {} is too small to evolve",
                                      player.id, size));
    }

    std::vector<FitnessRecord> records;
    records.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        records.push_back(FitnessRecord::from_error(i, errors[i]));
    }

    std::vector<std::size_t> parent(size);
    std::vector<Chromosome> pool(size);
    for (std::size_t i = 0; i < size; ++i) {
        parent[i] = roulette_select(records, streams.selection);
        pool[i] = Chromosome::from_spec(agents[parent[i]].spec());
    }
    for (std::size_t i = 0; i + 1 < size; i += 2) {
        std::tie(pool[i], pool[i + 1]) =
            maybe_crossover(pool[i], pool[i + 1], params.p_cross, streams.selection);
    }
    for (auto& c : pool) {
        c = mutate_bit(c, params.p_mut, streams.mutation);
    }

    Player next = player;
    std::size_t slot = 0;
    for (auto& committee : next.committees) {
        for (auto& agent : committee) {
            const AgentSpec spec = pool[slot].to_spec();
            const Agent& source = agents[parent[slot]];
            agent = spec == source.spec() ? source
                                          : init_weights(spec, streams.init, weight_init_scale);
            ++slot;
        }
    }
    return next;
}

}  // namespace cmsim
