#pragma once

// Test-only reference implementations. Everything here recomputes results
// with the most literal method available (quadruple loops, full enumeration)
// and shares no code path with the structures it is used to check.

#include <bap/bap.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

/// Objective by the defining quadruple summation, no conditioning tricks.
inline long long naive_evaluate(const bap::BapInstance& inst, const bap::Solution& s) {
    long long total = 0;
    for (int i = 0; i < inst.m(); ++i)
        for (int j = 0; j < inst.m(); ++j)
            for (int k = 0; k < inst.n(); ++k)
                for (int l = 0; l < inst.n(); ++l)
                    if (s.pi(i) == j && s.phi(k) == l) total += inst.q(i, j, k, l);
    for (int i = 0; i < inst.m(); ++i) total += inst.c(i, s.pi(i));
    for (int k = 0; k < inst.n(); ++k) total += inst.d(k, s.phi(k));
    return total;
}

/// All permutations of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Mean objective over every feasible solution, as an exact rational.
inline bap::Rational enumeration_mean(const bap::BapInstance& inst) {
    bap::int128 sum = 0;
    long long count = 0;
    for (const auto& pi : all_permutations(inst.m()))
        for (const auto& phi : all_permutations(inst.n())) {
            sum += bap::evaluate(inst, bap::Solution(pi, phi));
            ++count;
        }
    return bap::Rational(sum, count);
}

/// Global minimum by plain enumeration with evaluate() only.
inline long long enumeration_min(const bap::BapInstance& inst) {
    bool first = true;
    long long best = 0;
    for (const auto& pi : all_permutations(inst.m()))
        for (const auto& phi : all_permutations(inst.n())) {
            const long long v = bap::evaluate(inst, bap::Solution(pi, phi));
            if (first || v < best) best = v;
            first = false;
        }
    return best;
}

/// e entry recomputed from the definition.
inline long long naive_e_entry(const bap::BapInstance& inst, const bap::Solution& s, int i,
                               int j) {
    long long sum = inst.c(i, j);
    for (int k = 0; k < inst.n(); ++k) sum += inst.q(i, j, k, s.phi(k));
    return sum;
}

/// g entry recomputed from the definition.
inline long long naive_g_entry(const bap::BapInstance& inst, const bap::Solution& s, int k,
                               int l) {
    long long sum = inst.d(k, l);
    for (int i = 0; i < inst.m(); ++i) sum += inst.q(i, s.pi(i), k, l);
    return sum;
}

/// Minimum assignment cost by trying every permutation.
inline long long lap_enumeration_min(const std::vector<long long>& cost, int n) {
    long long best = 0;
    bool first = true;
    for (const auto& p : all_permutations(n)) {
        long long v = 0;
        for (int r = 0; r < n; ++r) v += cost[static_cast<std::size_t>(r) * n + p[r]];
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

/// Literal step-by-step trace of the deterministic greedy construction:
/// seed with the lexicographically first minimum of Q, then repeatedly scan
/// both sides in index order with strict improvement, x on ties.
inline bap::Solution greedy_reference(const bap::BapInstance& inst) {
    const int m = inst.m(), n = inst.n();
    std::vector<int> pi(m, -1), phi(n, -1);
    std::vector<char> xcol(m, 0), ycol(n, 0);

    long long best_q = 0;
    int bi = -1, bj = 0, bk = 0, bl = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (bi == -1 || inst.q(i, j, k, l) < best_q) {
                        best_q = inst.q(i, j, k, l);
                        bi = i;
                        bj = j;
                        bk = k;
                        bl = l;
                    }
    pi[bi] = bj;
    xcol[bj] = 1;
    phi[bk] = bl;
    ycol[bl] = 1;

    const auto x_cost = [&](int i, int j) {
        long long sum = inst.c(i, j);
        for (int k = 0; k < n; ++k)
            if (phi[k] != -1) sum += inst.q(i, j, k, phi[k]);
        return sum;
    };
    const auto y_cost = [&](int k, int l) {
        long long sum = inst.d(k, l);
        for (int i = 0; i < m; ++i)
            if (pi[i] != -1) sum += inst.q(i, pi[i], k, l);
        return sum;
    };

    int left = m + n - 2;
    while (left-- > 0) {
        bool have_x = false, have_y = false;
        long long bx = 0, by = 0;
        int xi = 0, xj = 0, yk = 0, yl = 0;
        for (int i = 0; i < m; ++i) {
            if (pi[i] != -1) continue;
            for (int j = 0; j < m; ++j) {
                if (xcol[j]) continue;
                const long long c = x_cost(i, j);
                if (!have_x || c < bx) {
                    bx = c;
                    xi = i;
                    xj = j;
                    have_x = true;
                }
            }
        }
        for (int k = 0; k < n; ++k) {
            if (phi[k] != -1) continue;
            for (int l = 0; l < n; ++l) {
                if (ycol[l]) continue;
                const long long c = y_cost(k, l);
                if (!have_y || c < by) {
                    by = c;
                    yk = k;
                    yl = l;
                    have_y = true;
                }
            }
        }
        if (have_x && (!have_y || bx <= by)) {
            pi[xi] = xj;
            xcol[xj] = 1;
        } else {
            phi[yk] = yl;
            ycol[yl] = 1;
        }
    }
    return bap::Solution(std::move(pi), std::move(phi));
}

}  // namespace oracle
