#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <random>

namespace rumor {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Stable across platforms; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for sub-experiment (a, b) of a run keyed by `master`. Every trial of a
// sweep is individually replayable from (master_seed, n_index, trial_index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ (0xa0761d6478bd642fULL + a));
    h = splitmix64(h ^ (0xe7037ed1a0b428dbULL + b));
    return h;
}

// Unbiased integer in [0, bound) via rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    assert(bound > 0);
    if (bound == 1) return 0;
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

// Uniform double in [0, 1).
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace rumor
