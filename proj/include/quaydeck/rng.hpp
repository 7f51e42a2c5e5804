#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace quaydeck {

/// All stochastic choices in the project flow through these helpers so that a
/// run replays bit-identically from one 64-bit seed, independent of the
/// standard library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t index(std::uint64_t n) {
        // Debiased modulo: retry on the tail region.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x = engine_();
        while (x > limit)
            x = engine_();
        return x % n;
    }

    int index_int(int n) { return static_cast<int>(index(static_cast<std::uint64_t>(n))); }

    /// Uniform double in [0, 1).
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [0, hi].
    double real(double hi) { return real01() * hi; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Independent child stream; used to give bench cells their own seeds.
    std::uint64_t fork() { return engine_(); }

  private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

/// Stable per-cell seed derivation for (scenario, strategy, repetition) grids.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c = 0) {
    std::uint64_t x = base;
    for (std::uint64_t v : {a, b, c}) {
        x ^= v + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
    }
    return x;
}

} // namespace quaydeck
