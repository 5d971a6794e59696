#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "cmsim/committee_player.hpp"
#include "cmsim/neural_agent.hpp"
#include "cmsim/rng.hpp"

namespace cmsim {

inline constexpr std::size_t kGrayBits = 8;
inline constexpr std::size_t kChromosomeBits = kGrayBits + 1;

/// Most significant bit first; each element is 0 or 1.
using GrayBits = std::array<std::uint8_t, kGrayBits>;

/// Binary-reflected Gray code of any value in [0, 255].
GrayBits gray_code(unsigned value);

/// Inverse Gray transform without clamping; result in [0, 255].
unsigned gray_to_binary(std::span<const std::uint8_t> bits);

/// Gray code of a hidden-unit count in [1, 10].
GrayBits gray_encode(int hidden_units);

/// Inverse Gray transform, clamped to [1, 10]. `bits` must hold exactly 8.
int gray_decode(std::span<const std::uint8_t> bits);

/// Eight Gray-coded hidden-unit bits followed by one activation gene
/// (0 = Linear, 1 = Logistic).
struct Chromosome {
    std::array<std::uint8_t, kChromosomeBits> bits{};

    static Chromosome from_spec(const AgentSpec& spec);
    /// Parses a string of '0'/'1' characters of length 9.
    static Chromosome from_string(std::string_view text);

    AgentSpec to_spec() const;
    std::string to_string() const;

    bool operator==(const Chromosome&) const = default;
};

/// Children a[0, cut) + b[cut, 9) and b[0, cut) + a[cut, 9); cut in [1, 8].
std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& a, const Chromosome& b,
                                                      std::size_t cut);

/// With probability p_cross, cuts the pair at a uniform interior point;
/// otherwise returns the parents unchanged.
std::pair<Chromosome, Chromosome> maybe_crossover(const Chromosome& a, const Chromosome& b,
                                                  double p_cross, Rng& rng);

/// With probability p_mut, inverts exactly one uniformly chosen bit.
Chromosome mutate_bit(const Chromosome& c, double p_mut, Rng& rng);

inline constexpr double kFitnessEpsilon = 1e-6;

struct FitnessRecord {
    std::size_t agent_index = 0;
    double error = 0.0;
    double fitness = 0.0;

    /// fitness = 1 / (1e-6 + error).
    static FitnessRecord from_error(std::size_t agent_index, double error);
};

/// Fitness-proportionate draw; returns the `agent_index` of the chosen record.
std::size_t roulette_select(std::span<const FitnessRecord> records, Rng& rng);

struct GaParams {
    double p_cross = 0.6;
    double p_mut = 0.03;

    /// Both probabilities in [0, 1] and p_mut < p_cross.
    void validate() const;
};

/// Random streams one generational step draws from.
struct EvolutionStreams {
    Rng& selection;  // roulette draws and crossover
    Rng& mutation;
    Rng& init;       // weights for changed architectures
};

/// One generational step over all of a player's agents (stock-major order).
///
/// Builds a same-size mating pool by roulette selection on per-agent errors,
/// pairs consecutive pool members for crossover, mutates every member, and
/// decodes the chromosomes back into agent slots. A child whose decoded spec
/// equals its pool parent's spec inherits that parent's weights; any other
/// child gets freshly initialized weights.
Player evolve_generation(const Player& player, std::span<const double> errors,
                         const GaParams& params, EvolutionStreams streams,
                         double weight_init_scale = 0.5);

}  // namespace cmsim
