#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "instance.hpp"
#include "lap.hpp"
#include "rng.hpp"

namespace bap {

/// Uniformly random permutation pair.
inline Solution random_solution(int m, int n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    auto pi = random_permutation(rng, m);
    auto phi = random_permutation(rng, n);
    return Solution(std::move(pi), std::move(phi));
}

namespace detail {

/// Shared state for the greedy family: partial assignment flags plus running
/// candidate costs against the assigned part of the opposite side.
///   px[i][j] = c[i][j] + sum over assigned (k,l) of q[i][j][k][l]
///   py[k][l] = d[k][l] + sum over assigned (i,j) of q[i][j][k][l]
struct GreedyState {
    explicit GreedyState(const BapInstance& inst)
        : inst(inst),
          m(inst.m()),
          n(inst.n()),
          pi(m, -1),
          phi(n, -1),
          x_col_used(m, 0),
          y_col_used(n, 0),
          px(inst.c_data()),
          py(inst.d_data()) {}

    void assign_x(int i, int j) {
        pi[i] = j;
        x_col_used[j] = 1;
        --x_left;
        const long long* block = inst.q_block(i, j);
        for (std::size_t t = 0; t < py.size(); ++t) py[t] += block[t];
    }

    void assign_y(int k, int l) {
        phi[k] = l;
        y_col_used[l] = 1;
        --y_left;
        const std::size_t off = static_cast<std::size_t>(k) * n + l;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                px[static_cast<std::size_t>(i) * m + j] +=
                    inst.q_block(i, j)[off];
    }

    /// Cheapest free column for row i of the x side; lowest index on ties.
    int best_x_col(int i, long long& cost) const {
        int best = -1;
        for (int j = 0; j < m; ++j) {
            if (x_col_used[j]) continue;
            const long long c = px[static_cast<std::size_t>(i) * m + j];
            if (best == -1 || c < cost) {
                best = j;
                cost = c;
            }
        }
        return best;
    }

    int best_y_col(int k, long long& cost) const {
        int best = -1;
        for (int l = 0; l < n; ++l) {
            if (y_col_used[l]) continue;
            const long long c = py[static_cast<std::size_t>(k) * n + l];
            if (best == -1 || c < cost) {
                best = l;
                cost = c;
            }
        }
        return best;
    }

    Solution finish() { return Solution(std::move(pi), std::move(phi)); }

    const BapInstance& inst;
    int m, n;
    std::vector<int> pi, phi;
    std::vector<char> x_col_used, y_col_used;
    std::vector<long long> px, py;
    int x_left = m, y_left = n;
};

}  // namespace detail

/// Build a solution by repeatedly picking a random unassigned row from
/// either side and giving it the partner that is cheapest against the
/// current partial solution (lowest index on ties). O(mn^2) beyond reading Q.
inline Solution random_xy_greedy(const BapInstance& inst, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    detail::GreedyState st(inst);
    std::vector<int> x_rows(st.m), y_rows(st.n);
    for (int i = 0; i < st.m; ++i) x_rows[i] = i;
    for (int k = 0; k < st.n; ++k) y_rows[k] = k;

    while (st.x_left + st.y_left > 0) {
        const std::uint64_t pick =
            uniform_below(rng, static_cast<std::uint64_t>(st.x_left + st.y_left));
        if (pick < static_cast<std::uint64_t>(st.x_left)) {
            const std::size_t at = static_cast<std::size_t>(pick);
            const int i = x_rows[at];
            x_rows[at] = x_rows[st.x_left - 1];
            long long cost = 0;
            const int j = st.best_x_col(i, cost);
            st.assign_x(i, j);
        } else {
            const std::size_t at = static_cast<std::size_t>(pick) - st.x_left;
            const int k = y_rows[at];
            y_rows[at] = y_rows[st.y_left - 1];
            long long cost = 0;
            const int l = st.best_y_col(k, cost);
            st.assign_y(k, l);
        }
    }
    return st.finish();
}

namespace detail {

/// One candidate extension of a partial solution. Ordering is (cost, x side
/// before y, row, col) so sorted scans are reproducible and a 1-element
/// prefix matches the deterministic greedy choice.
struct Candidate {
    long long cost;
    int side;  // 0 = x, 1 = y
    int row, col;
    bool operator<(const Candidate& o) const {
        if (cost != o.cost) return cost < o.cost;
        if (side != o.side) return side < o.side;
        if (row != o.row) return row < o.row;
        return col < o.col;
    }
};

inline void collect_candidates(const GreedyState& st, std::vector<Candidate>& out) {
    out.clear();
    for (int i = 0; i < st.m; ++i) {
        if (st.pi[i] != -1) continue;
        for (int j = 0; j < st.m; ++j) {
            if (st.x_col_used[j]) continue;
            out.push_back({st.px[static_cast<std::size_t>(i) * st.m + j], 0, i, j});
        }
    }
    for (int k = 0; k < st.n; ++k) {
        if (st.phi[k] != -1) continue;
        for (int l = 0; l < st.n; ++l) {
            if (st.y_col_used[l]) continue;
            out.push_back({st.py[static_cast<std::size_t>(k) * st.n + l], 1, k, l});
        }
    }
}

/// Greedy core: seed with a choice among the `h` smallest Q entries, then at
/// every step take one of the `h` cheapest extensions from the joint x/y
/// candidate pool. rng == nullptr means h is ignored and the first candidate
/// is always taken (plain deterministic greedy; x wins exact ties).
inline Solution greedy_core(const BapInstance& inst, int h, Rng* rng) {
    const int m = inst.m(), n = inst.n();
    GreedyState st(inst);

    // Seed pair: smallest Q entry, lexicographic (i,j,k,l) on ties.
    struct Seed {
        long long q;
        int i, j, k, l;
        bool operator<(const Seed& o) const {
            if (q != o.q) return q < o.q;
            if (i != o.i) return i < o.i;
            if (j != o.j) return j < o.j;
            if (k != o.k) return k < o.k;
            return l < o.l;
        }
    };
    // h best Q entries, kept in a bounded max-heap so the full m^2 n^2 scan
    // needs no side storage.
    std::vector<Seed> seeds;
    seeds.reserve(h);
    const auto worse = [](const Seed& a, const Seed& b) { return a < b; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const long long* block = inst.q_block(i, j);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const Seed s{block[static_cast<std::size_t>(k) * n + l], i, j, k, l};
                    if (seeds.size() < static_cast<std::size_t>(h)) {
                        seeds.push_back(s);
                        std::push_heap(seeds.begin(), seeds.end(), worse);
                    } else if (s < seeds.front()) {
                        std::pop_heap(seeds.begin(), seeds.end(), worse);
                        seeds.back() = s;
                        std::push_heap(seeds.begin(), seeds.end(), worse);
                    }
                }
        }
    std::sort(seeds.begin(), seeds.end());
    const Seed chosen =
        seeds[rng ? static_cast<std::size_t>(uniform_below(*rng, seeds.size())) : 0];
    st.assign_x(chosen.i, chosen.j);
    st.assign_y(chosen.k, chosen.l);

    std::vector<Candidate> cands;
    while (st.x_left + st.y_left > 0) {
        collect_candidates(st, cands);
        const std::size_t pool = std::min<std::size_t>(h, cands.size());
        std::partial_sort(cands.begin(), cands.begin() + pool, cands.end());
        const Candidate& pick =
            cands[rng ? static_cast<std::size_t>(uniform_below(*rng, pool)) : 0];
        if (pick.side == 0)
            st.assign_x(pick.row, pick.col);
        else
            st.assign_y(pick.row, pick.col);
    }
    return st.finish();
}

}  // namespace detail

/// Deterministic greedy: start from the globally smallest Q entry, then
/// repeatedly add the single cheapest x- or y-assignment (x preferred on
/// exact ties, lowest indices within a side). O(n^3) after the initial scan.
inline Solution greedy(const BapInstance& inst) { return detail::greedy_core(inst, 1, nullptr); }

/// Semi-greedy variant: every decision picks uniformly among the h best
/// candidates. h = 1 reproduces greedy() exactly.
inline Solution greedy_randomized(const BapInstance& inst, int h, std::uint64_t seed) {
    if (h < 1) throw std::invalid_argument("greedy_randomized: h must be >= 1");
    Rng rng = make_rng(seed);
    return detail::greedy_core(inst, h, &rng);
}

/// Round the uniform fractional solution (x = 1/m, y = 1/n): optimize y
/// against fractional x by one LAP (costs scaled by m to stay integral),
/// then optimize x against that y. The result never exceeds the instance
/// average. O(m^2 n^2 + n^3).
inline Solution rounding(const BapInstance& inst) {
    const int m = inst.m(), n = inst.n();

    // y-side costs: sum_ij q[i][j][k][l] + m * d[k][l]  (m times the true
    // fractional cost; the scaling cannot change the LAP argmin).
    std::vector<long long> ycost(static_cast<std::size_t>(n) * n);
    {
        std::vector<int128> wide(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const long long* block = inst.q_block(i, j);
                for (std::size_t t = 0; t < wide.size(); ++t) wide[t] += block[t];
            }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                wide[static_cast<std::size_t>(k) * n + l] +=
                    static_cast<int128>(m) * inst.d(k, l);
        for (std::size_t t = 0; t < wide.size(); ++t) {
            if (wide[t] > std::numeric_limits<long long>::max() ||
                wide[t] < std::numeric_limits<long long>::min())
                throw std::overflow_error("rounding: scaled y-cost exceeds 64-bit range");
            ycost[t] = static_cast<long long>(wide[t]);
        }
    }
    std::vector<int> phi = lap_exact(ycost, n).assignment;

    // x-side costs against the integral phi.
    std::vector<long long> xcost(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const long long* block = inst.q_block(i, j);
            long long sum = inst.c(i, j);
            for (int k = 0; k < n; ++k) sum += block[static_cast<std::size_t>(k) * n + phi[k]];
            xcost[static_cast<std::size_t>(i) * m + j] = sum;
        }
    std::vector<int> pi = lap_exact(xcost, m).assignment;
    return Solution(std::move(pi), std::move(phi));
}

}  // namespace bap
