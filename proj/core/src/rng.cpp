#include "cmsim/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cmsim/errors.hpp"

namespace cmsim {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

Rng Rng::fork(std::string_view name) const {
    // FNV-1a over the name, folded into the parent seed.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return Rng(mix64(seed_ ^ mix64(h)));
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) {
        throw DomainError("Rng::index: empty range");
    }
    const std::uint64_t bound = n;
    // Reject the biased tail so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return static_cast<std::size_t>(x % bound);
}

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) {
        throw DomainError("Rng::uniform_int: hi < lo");
    }
    const auto span = static_cast<std::size_t>(static_cast<long long>(hi) - lo + 1);
    return lo + static_cast<int>(index(span));
}

double Rng::normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) {
        u1 = uniform01();
    }
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace cmsim
