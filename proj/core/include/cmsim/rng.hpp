#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace cmsim {

/// Seeded random stream. The engine is std::mt19937_64 (fully specified by
/// the standard); every distribution is derived here rather than through
/// <random>'s distributions, whose output is implementation-defined. The
/// same seed therefore gives the same draws on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    /// Independent stream derived from this stream's *seed* (not its current
    /// state), so draws made here never perturb a named substream.
    Rng fork(std::string_view name) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53 bits of resolution.
    double uniform01();
    double uniform(double lo, double hi);

    /// Uniform on [0, n). n must be > 0.
    std::size_t index(std::size_t n);

    /// Uniform on the closed interval [lo, hi].
    int uniform_int(int lo, int hi);

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via Box-Muller.
    double normal();

    template <class T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[index(i)]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace cmsim
