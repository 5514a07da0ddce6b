#pragma once

// Portable seeded draws. std::uniform_int_distribution is implementation
// defined, so bounded draws are done by rejection on top of mt19937_64 to
// keep every generated sequence identical across standard libraries.

#include <cstdint>
#include <random>

namespace seqval {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// splitmix64 finalizer; used to derive independent child seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index = 0) {
    return mix_seed(mix_seed(mix_seed(base) ^ tag) ^ index);
}

}  // namespace seqval
