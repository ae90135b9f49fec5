#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace bap {

struct LapResult {
    std::vector<int> assignment;  // row r -> column assignment[r]
    long long value = 0;
};

/// Exact minimum-cost assignment on a dense n x n matrix (flat, row-major):
/// shortest augmenting paths with dual potentials, O(n^3).
///
/// Deterministic: rows are inserted in increasing index order and the column
/// scan keeps the first minimum, so ties always resolve the same way.
/// Potentials are kept in 128-bit arithmetic so any int64 cost matrix is safe.
inline LapResult lap_exact(const std::vector<long long>& cost, int n) {
    if (n < 1 || cost.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("lap_exact: matrix must be square n x n");
    const int128 inf = (static_cast<int128>(1)) << 100;
    std::vector<int128> u(n + 1, 0), v(n + 1, 0), minv(n + 1, 0);
    std::vector<int> matched_row(n + 1, 0);  // matched_row[col]: row occupying col (1-based)
    std::vector<int> way(n + 1, 0);
    std::vector<char> used(n + 1, 0);

    for (int r = 1; r <= n; ++r) {
        matched_row[0] = r;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int r0 = matched_row[j0];
            int j1 = -1;
            int128 delta = inf;
            const long long* row = cost.data() + static_cast<std::size_t>(r0 - 1) * n;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const int128 cur = static_cast<int128>(row[j - 1]) - u[r0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[matched_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (matched_row[j0] != 0);
        do {
            const int j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    LapResult result;
    result.assignment.assign(n, -1);
    for (int j = 1; j <= n; ++j) result.assignment[matched_row[j] - 1] = j - 1;
    int128 total = 0;
    for (int r = 0; r < n; ++r)
        total += cost[static_cast<std::size_t>(r) * n + result.assignment[r]];
    result.value = static_cast<long long>(total);
    return result;
}

/// Quadratic heuristic: repeatedly commit the globally smallest remaining
/// entry whose row and column are both free. Ties break on (cost, row, col).
/// Never better than lap_exact; often much worse on adversarial inputs.
inline LapResult lap_greedy(const std::vector<long long>& cost, int n) {
    if (n < 1 || cost.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("lap_greedy: matrix must be square n x n");
    std::vector<std::int32_t> order(cost.size());
    for (std::size_t t = 0; t < order.size(); ++t) order[t] = static_cast<std::int32_t>(t);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int32_t a, std::int32_t b) { return cost[a] < cost[b]; });

    LapResult result;
    result.assignment.assign(n, -1);
    std::vector<char> col_used(n, 0);
    int assigned = 0;
    int128 total = 0;
    for (std::int32_t t : order) {
        const int r = t / n, c = t % n;
        if (result.assignment[r] != -1 || col_used[c]) continue;
        result.assignment[r] = c;
        col_used[c] = 1;
        total += cost[t];
        if (++assigned == n) break;
    }
    result.value = static_cast<long long>(total);
    return result;
}

/// Convenience overload for nested-vector matrices (tests, small callers).
inline std::vector<long long> flatten_square(const std::vector<std::vector<long long>>& a) {
    const std::size_t n = a.size();
    std::vector<long long> flat;
    flat.reserve(n * n);
    for (const auto& row : a) {
        if (row.size() != n) throw std::invalid_argument("flatten_square: ragged matrix");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

inline LapResult lap_exact(const std::vector<std::vector<long long>>& cost) {
    return lap_exact(flatten_square(cost), static_cast<int>(cost.size()));
}

inline LapResult lap_greedy(const std::vector<std::vector<long long>>& cost) {
    return lap_greedy(flatten_square(cost), static_cast<int>(cost.size()));
}

}  // namespace bap
