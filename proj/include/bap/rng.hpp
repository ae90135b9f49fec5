#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace bap {

/// One round of the splitmix64 mixer. Used to pre-scramble user seeds and to
/// derive per-restart / per-instance seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for the r-th restart of a run driven by `master`. Fixed for the repo:
/// derive_seed(master, r) = splitmix64(master ^ splitmix64(r + 1)).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t r) {
    return splitmix64(master ^ splitmix64(r + 1));
}

using Rng = std::mt19937_64;

/// All randomized code in the library obtains its engine here, so a seed
/// identifies a run regardless of which component consumes it.
inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

/// Uniform draw from {0, ..., bound-1} by rejection. Exactly uniform and
/// independent of the standard library's uniform_int_distribution, whose
/// output sequence is implementation-defined.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % bound + 1) % bound;
    const std::uint64_t limit = max - rem;  // accepted range has size divisible by bound
    std::uint64_t v = rng();
    while (v > limit) v = rng();
    return v % bound;
}

/// Fisher-Yates shuffle of 0..n-1 with explicit draws (portable across
/// standard libraries, unlike std::shuffle).
inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace bap
