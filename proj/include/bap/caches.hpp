#pragma once

#include <stdexcept>
#include <vector>

#include "instance.hpp"

namespace bap {

/// Conditional assignment-cost matrices for O(1) swap deltas:
///   e[i][j] = sum_k q[i][j][k][phi(k)] + c[i][j]   (depends on phi only)
///   g[k][l] = sum_i q[i][pi(i)][k][l] + d[k][l]    (depends on pi only)
/// `stamp` is the Solution::version() the matrices are valid for; reading
/// them against a mutated solution is a programming error and throws.
struct DeltaCaches {
    std::vector<long long> e;  // m x m
    std::vector<long long> g;  // n x n
    std::uint64_t stamp = 0;
};

namespace detail {

inline void check_fresh(const DeltaCaches& caches, const Solution& s) {
    if (caches.stamp != s.version())
        throw std::logic_error("delta caches are stale for this solution");
}

}  // namespace detail

/// Recompute e from scratch against s.phi; O(m^2 n).
inline void rebuild_e(const BapInstance& inst, const Solution& s, DeltaCaches& caches) {
    const int m = inst.m(), n = inst.n();
    caches.e.assign(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const long long* block = inst.q_block(i, j);
            long long sum = inst.c(i, j);
            for (int k = 0; k < n; ++k) sum += block[static_cast<std::size_t>(k) * n + s.phi(k)];
            caches.e[static_cast<std::size_t>(i) * m + j] = sum;
        }
    }
}

/// Recompute g from scratch against s.pi; O(n^2 m).
inline void rebuild_g(const BapInstance& inst, const Solution& s, DeltaCaches& caches) {
    const int m = inst.m(), n = inst.n();
    caches.g.assign(static_cast<std::size_t>(n) * n, 0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            caches.g[static_cast<std::size_t>(k) * n + l] = inst.d(k, l);
    for (int i = 0; i < m; ++i) {
        const long long* block = inst.q_block(i, s.pi(i));
        for (std::size_t t = 0; t < caches.g.size(); ++t) caches.g[t] += block[t];
    }
}

inline DeltaCaches build_caches(const BapInstance& inst, const Solution& s) {
    if (!s.fits(inst)) throw std::invalid_argument("build_caches: size mismatch");
    DeltaCaches caches;
    rebuild_e(inst, s, caches);
    rebuild_g(inst, s, caches);
    caches.stamp = s.version();
    return caches;
}

/// Objective change of swapping pi(i1) and pi(i2), in O(1) from e.
inline long long delta_x_swap(const DeltaCaches& caches, const Solution& s, int i1, int i2) {
    detail::check_fresh(caches, s);
    if (i1 == i2) throw std::invalid_argument("delta_x_swap: indices must differ");
    const int m = s.m();
    const int j1 = s.pi(i1), j2 = s.pi(i2);
    const long long* e = caches.e.data();
    return e[static_cast<std::size_t>(i1) * m + j2] + e[static_cast<std::size_t>(i2) * m + j1] -
           e[static_cast<std::size_t>(i1) * m + j1] - e[static_cast<std::size_t>(i2) * m + j2];
}

/// Objective change of swapping phi(k1) and phi(k2), in O(1) from g.
inline long long delta_y_swap(const DeltaCaches& caches, const Solution& s, int k1, int k2) {
    detail::check_fresh(caches, s);
    if (k1 == k2) throw std::invalid_argument("delta_y_swap: indices must differ");
    const int n = s.n();
    const int l1 = s.phi(k1), l2 = s.phi(k2);
    const long long* g = caches.g.data();
    return g[static_cast<std::size_t>(k1) * n + l2] + g[static_cast<std::size_t>(k2) * n + l1] -
           g[static_cast<std::size_t>(k1) * n + l1] - g[static_cast<std::size_t>(k2) * n + l2];
}

/// Swap pi(i1), pi(i2) and patch g incrementally in O(n^2). e depends only
/// on phi and stays valid.
inline void apply_x_swap(const BapInstance& inst, DeltaCaches& caches, Solution& s, int i1,
                         int i2) {
    detail::check_fresh(caches, s);
    if (i1 == i2) throw std::invalid_argument("apply_x_swap: indices must differ");
    const int j1 = s.pi(i1), j2 = s.pi(i2);
    const long long* b12 = inst.q_block(i1, j2);
    const long long* b21 = inst.q_block(i2, j1);
    const long long* b11 = inst.q_block(i1, j1);
    const long long* b22 = inst.q_block(i2, j2);
    for (std::size_t t = 0; t < caches.g.size(); ++t)
        caches.g[t] += b12[t] + b21[t] - b11[t] - b22[t];
    s.swap_x(i1, i2);
    caches.stamp = s.version();
}

/// Swap phi(k1), phi(k2) and patch e incrementally in O(m^2).
inline void apply_y_swap(const BapInstance& inst, DeltaCaches& caches, Solution& s, int k1,
                         int k2) {
    detail::check_fresh(caches, s);
    if (k1 == k2) throw std::invalid_argument("apply_y_swap: indices must differ");
    const int m = inst.m(), n = inst.n();
    const int l1 = s.phi(k1), l2 = s.phi(k2);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const long long* block = inst.q_block(i, j);
            caches.e[static_cast<std::size_t>(i) * m + j] +=
                block[static_cast<std::size_t>(k1) * n + l2] +
                block[static_cast<std::size_t>(k2) * n + l1] -
                block[static_cast<std::size_t>(k1) * n + l1] -
                block[static_cast<std::size_t>(k2) * n + l2];
        }
    }
    s.swap_y(k1, k2);
    caches.stamp = s.version();
}

/// Exact objective change of applying the x-swap (i1,i2) and the y-swap
/// (k1,k2) simultaneously: the two one-sided deltas plus the correction on
/// the 2x2x2x2 block of Q affected by both.
inline long long dual_swap_delta(const BapInstance& inst, const DeltaCaches& caches,
                                 const Solution& s, int i1, int i2, int k1, int k2) {
    const long long dx = delta_x_swap(caches, s, i1, i2);
    const long long dy = delta_y_swap(caches, s, k1, k2);
    const int j1 = s.pi(i1), j2 = s.pi(i2);
    const int l1 = s.phi(k1), l2 = s.phi(k2);
    // dy was measured against the old pi; moving (i1,i2) first changes the
    // four g entries dy reads by the row differences below.
    const auto row_diff = [&](int k, int l) -> int128 {
        return static_cast<int128>(inst.q(i1, j2, k, l)) + inst.q(i2, j1, k, l) -
               inst.q(i1, j1, k, l) - inst.q(i2, j2, k, l);
    };
    const int128 corr =
        row_diff(k1, l2) + row_diff(k2, l1) - row_diff(k1, l1) - row_diff(k2, l2);
    return static_cast<long long>(static_cast<int128>(dx) + dy + corr);
}

}  // namespace bap
