#pragma once

#include <cstdint>

namespace kortmix {

/// splitmix64: tiny, fast, and good enough for sampling test jets.
/// Streams derived from (seed, index) make parallel sampling order-free.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Independent stream for sample `index` of run `seed`; `salt`
/// distinguishes sub-draws (e.g. the higher-derivative re-randomization).
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index,
                                std::uint64_t salt = 0) {
    const std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ull * (index + 1)) ^
                            mix64(salt + 0x2545f4914f6cdd1dull);
    return SplitMix64(s);
}

}  // namespace kortmix
