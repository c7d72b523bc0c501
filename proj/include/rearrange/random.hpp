#pragma once

#include <cstdint>
#include <random>

namespace rearrange {

/// Seeded random source with portable distributions.
///
/// std::uniform_*_distribution output differs between standard libraries, so
/// the variates are derived directly from the raw mt19937_64 stream. A given
/// seed reproduces the same instances and plans on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi]; returns lo when the interval is degenerate.
    double uniform(double lo, double hi) { return hi > lo ? lo + (hi - lo) * unit() : lo; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Seed for an independent child stream.
    std::uint64_t fork() { return engine_() ^ 0x9e3779b97f4a7c15ULL; }

  private:
    std::mt19937_64 engine_;
};

/// Deterministic per-trial seed mixing (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace rearrange
