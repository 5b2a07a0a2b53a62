#pragma once

#include <cstdint>
#include <random>

namespace enactlab {

// splitmix64; used to expand and derive seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic random source. The engine is std::mt19937_64 (output is
/// specified by the standard), and all bounded draws go through our own
/// rejection sampling so results never depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1. Unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [lo, hi], inclusive.
    int int_in(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

/// Derive an independent stream seed from a base seed. Trials and
/// subsystems (environment vs. agent) get separate streams so no RNG
/// state is ever shared.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base;
    const std::uint64_t h = splitmix64(s);
    s = h ^ (stream * 0xA0761D6478BD642FULL + 0x9E3779B97F4A7C15ULL);
    return splitmix64(s);
}

} // namespace enactlab
