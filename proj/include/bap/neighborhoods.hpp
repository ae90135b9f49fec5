#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caches.hpp"
#include "exhaustive.hpp"
#include "instance.hpp"
#include "lap.hpp"

namespace bap {

enum class Family {
    TwoExchange,      // one-side swaps, deltas through E/G
    ThreeExchange,    // swaps plus both 3-cycles of every index triple
    Alternating,      // full one-side LAP re-optimization, alternating sides
    DualTwoExchange,  // x-swap and y-swap applied simultaneously
    TwoExchangeOpt,   // each swap combined with a full LAP re-opt of the other side
    ThreeExchangeOpt,
    Shift,            // cyclic shifts of the image side of one permutation
    ShiftShuffle,     // shifts plus bucket-interleave reorderings
    DualShift,        // all mn simultaneous shift pairs, one pass
    ShiftOpt,         // each one-side shift combined with a LAP re-opt
};

enum class Rule { First, Best };
enum class LapMode { Exact, Greedy };

struct SearchVariant {
    Family family = Family::TwoExchange;
    Rule rule = Rule::Best;
    LapMode lap_mode = LapMode::Exact;

    void validate() const {
        if (lap_mode == LapMode::Greedy && family != Family::TwoExchangeOpt)
            throw std::invalid_argument(
                "greedy LAP mode is only supported for the optimized 2-exchange search");
    }
};

/// Cooperative wall-clock limit, polled between moves.
struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;

    static Deadline after(std::optional<std::chrono::milliseconds> budget) {
        Deadline d;
        if (budget) d.at = std::chrono::steady_clock::now() + *budget;
        return d;
    }
    bool expired() const { return at && std::chrono::steady_clock::now() >= *at; }
};

namespace detail {

inline LapResult solve_lap(const std::vector<long long>& cost, int n, LapMode mode) {
    return mode == LapMode::Exact ? lap_exact(cost, n) : lap_greedy(cost, n);
}

inline long long linear_x_part(const BapInstance& inst, const std::vector<int>& pi) {
    long long sum = 0;
    for (int i = 0; i < inst.m(); ++i) sum += inst.c(i, pi[i]);
    return sum;
}

inline long long linear_y_part(const BapInstance& inst, const std::vector<int>& phi) {
    long long sum = 0;
    for (int k = 0; k < inst.n(); ++k) sum += inst.d(k, phi[k]);
    return sum;
}

/// g matrix (q conditioned on pi, plus d) built from scratch into `out`.
inline void build_g_for(const BapInstance& inst, const std::vector<int>& pi,
                        std::vector<long long>& out) {
    const int n = inst.n();
    out.assign(static_cast<std::size_t>(n) * n, 0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out[static_cast<std::size_t>(k) * n + l] = inst.d(k, l);
    for (int i = 0; i < inst.m(); ++i) {
        const long long* block = inst.q_block(i, pi[i]);
        for (std::size_t t = 0; t < out.size(); ++t) out[t] += block[t];
    }
}

/// e matrix (q conditioned on phi, plus c) built from scratch into `out`.
inline void build_e_for(const BapInstance& inst, const std::vector<int>& phi,
                        std::vector<long long>& out) {
    const int m = inst.m(), n = inst.n();
    out.assign(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const long long* block = inst.q_block(i, j);
            long long sum = inst.c(i, j);
            for (int k = 0; k < n; ++k) sum += block[static_cast<std::size_t>(k) * n + phi[k]];
            out[static_cast<std::size_t>(i) * m + j] = sum;
        }
}

// -------------------------------------------------------------------------
// Move enumeration shared by the plain exchange searches and the certifier.
// Scan order is fixed: x-side pairs, y-side pairs, then (for 3-exchange)
// x-side triple rotations and y-side triple rotations, all lexicographic.
// -------------------------------------------------------------------------

struct SwapMove {
    enum class Kind { XSwap, YSwap, XRot1, XRot2, YRot1, YRot2 };
    Kind kind;
    int a = 0, b = 0, c = 0;
    long long delta = 0;
};

inline long long rotation_delta_x(const DeltaCaches& caches, const Solution& s, int i1, int i2,
                                  int i3, bool second) {
    const int m = s.m();
    const long long* e = caches.e.data();
    const int j1 = s.pi(i1), j2 = s.pi(i2), j3 = s.pi(i3);
    const long long base = e[static_cast<std::size_t>(i1) * m + j1] +
                           e[static_cast<std::size_t>(i2) * m + j2] +
                           e[static_cast<std::size_t>(i3) * m + j3];
    if (!second)
        return e[static_cast<std::size_t>(i1) * m + j2] +
               e[static_cast<std::size_t>(i2) * m + j3] +
               e[static_cast<std::size_t>(i3) * m + j1] - base;
    return e[static_cast<std::size_t>(i1) * m + j3] + e[static_cast<std::size_t>(i2) * m + j1] +
           e[static_cast<std::size_t>(i3) * m + j2] - base;
}

inline long long rotation_delta_y(const DeltaCaches& caches, const Solution& s, int k1, int k2,
                                  int k3, bool second) {
    const int n = s.n();
    const long long* g = caches.g.data();
    const int l1 = s.phi(k1), l2 = s.phi(k2), l3 = s.phi(k3);
    const long long base = g[static_cast<std::size_t>(k1) * n + l1] +
                           g[static_cast<std::size_t>(k2) * n + l2] +
                           g[static_cast<std::size_t>(k3) * n + l3];
    if (!second)
        return g[static_cast<std::size_t>(k1) * n + l2] +
               g[static_cast<std::size_t>(k2) * n + l3] +
               g[static_cast<std::size_t>(k3) * n + l1] - base;
    return g[static_cast<std::size_t>(k1) * n + l3] + g[static_cast<std::size_t>(k2) * n + l1] +
           g[static_cast<std::size_t>(k3) * n + l2] - base;
}

/// Visit every move of the (2- or 3-) exchange neighborhood in scan order.
/// The visitor returns true to stop the scan (first-improvement).
template <typename Visitor>
void for_each_exchange_move(const DeltaCaches& caches, const Solution& s, bool triples,
                            long long& evaluations, Visitor&& visit) {
    const int m = s.m(), n = s.n();
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2) {
            ++evaluations;
            if (visit(SwapMove{SwapMove::Kind::XSwap, i1, i2, 0,
                               delta_x_swap(caches, s, i1, i2)}))
                return;
        }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = k1 + 1; k2 < n; ++k2) {
            ++evaluations;
            if (visit(SwapMove{SwapMove::Kind::YSwap, k1, k2, 0,
                               delta_y_swap(caches, s, k1, k2)}))
                return;
        }
    if (!triples) return;
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2)
            for (int i3 = i2 + 1; i3 < m; ++i3) {
                evaluations += 2;
                if (visit(SwapMove{SwapMove::Kind::XRot1, i1, i2, i3,
                                   rotation_delta_x(caches, s, i1, i2, i3, false)}))
                    return;
                if (visit(SwapMove{SwapMove::Kind::XRot2, i1, i2, i3,
                                   rotation_delta_x(caches, s, i1, i2, i3, true)}))
                    return;
            }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = k1 + 1; k2 < n; ++k2)
            for (int k3 = k2 + 1; k3 < n; ++k3) {
                evaluations += 2;
                if (visit(SwapMove{SwapMove::Kind::YRot1, k1, k2, k3,
                                   rotation_delta_y(caches, s, k1, k2, k3, false)}))
                    return;
                if (visit(SwapMove{SwapMove::Kind::YRot2, k1, k2, k3,
                                   rotation_delta_y(caches, s, k1, k2, k3, true)}))
                    return;
            }
}

/// A 3-cycle is two transpositions, so the incremental cache updates of
/// apply_x_swap / apply_y_swap cover rotations as well.
inline void apply_swap_move(const BapInstance& inst, DeltaCaches& caches, Solution& s,
                            const SwapMove& mv) {
    switch (mv.kind) {
        case SwapMove::Kind::XSwap: apply_x_swap(inst, caches, s, mv.a, mv.b); break;
        case SwapMove::Kind::YSwap: apply_y_swap(inst, caches, s, mv.a, mv.b); break;
        case SwapMove::Kind::XRot1:
            apply_x_swap(inst, caches, s, mv.a, mv.b);
            apply_x_swap(inst, caches, s, mv.b, mv.c);
            break;
        case SwapMove::Kind::XRot2:
            apply_x_swap(inst, caches, s, mv.a, mv.c);
            apply_x_swap(inst, caches, s, mv.b, mv.c);
            break;
        case SwapMove::Kind::YRot1:
            apply_y_swap(inst, caches, s, mv.a, mv.b);
            apply_y_swap(inst, caches, s, mv.b, mv.c);
            break;
        case SwapMove::Kind::YRot2:
            apply_y_swap(inst, caches, s, mv.a, mv.c);
            apply_y_swap(inst, caches, s, mv.b, mv.c);
            break;
    }
}

inline void search_exchange(const BapInstance& inst, Solution& s, Rule rule, bool triples,
                            const Deadline& deadline, SearchReport& report) {
    DeltaCaches caches = build_caches(inst, s);
    long long value = evaluate(inst, s);
    while (true) {
        if (deadline.expired()) {
            report.converged = false;
            break;
        }
        bool found = false;
        SwapMove chosen{};
        for_each_exchange_move(caches, s, triples, report.evaluations,
                               [&](const SwapMove& mv) {
                                   if (mv.delta >= 0) return false;
                                   if (!found || mv.delta < chosen.delta) {
                                       chosen = mv;
                                       found = true;
                                   }
                                   return rule == Rule::First;
                               });
        if (!found) break;
        apply_swap_move(inst, caches, s, chosen);
        value += chosen.delta;
        ++report.iterations;
    }
    report.value = value;
}

// -------------------------------------------------------------------------
// Alternating Algorithm: re-optimize pi against phi with one LAP, then phi
// against the new pi; stop when a full cycle no longer strictly improves.
// On the terminating cycle the freshly certified pi is kept, so both sides
// of the returned pair meet their LAP optimum value.
// -------------------------------------------------------------------------

inline void search_alternating(const BapInstance& inst, Solution& s, const Deadline& deadline,
                               SearchReport& report) {
    long long value = evaluate(inst, s);
    std::vector<long long> e, g;
    while (true) {
        if (deadline.expired()) {
            report.converged = false;
            break;
        }
        build_e_for(inst, s.phi(), e);
        LapResult lx = lap_exact(e, inst.m());
        build_g_for(inst, lx.assignment, g);
        LapResult ly = lap_exact(g, inst.n());
        report.evaluations += 2;
        const long long cycle_value = ly.value + linear_x_part(inst, lx.assignment);
        if (cycle_value > value)
            throw std::logic_error("alternating search: cycle increased the objective");
        if (cycle_value == value) {
            s.set_pi(std::move(lx.assignment));
            break;
        }
        s.set_pi(std::move(lx.assignment));
        s.set_phi(std::move(ly.assignment));
        value = cycle_value;
        ++report.iterations;
    }
    report.value = value;
}

// -------------------------------------------------------------------------
// [2,2]-exchange: both one-sided swaps and every simultaneous pair of them.
// -------------------------------------------------------------------------

struct DualMove {
    bool has_x = false, has_y = false;
    int i1 = 0, i2 = 0, k1 = 0, k2 = 0;
    long long delta = 0;
};

template <typename Visitor>
void for_each_dual_move(const BapInstance& inst, const DeltaCaches& caches, const Solution& s,
                        long long& evaluations, Visitor&& visit) {
    const int m = s.m(), n = s.n();
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2) {
            ++evaluations;
            if (visit(DualMove{true, false, i1, i2, 0, 0, delta_x_swap(caches, s, i1, i2)}))
                return;
        }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = k1 + 1; k2 < n; ++k2) {
            ++evaluations;
            if (visit(DualMove{false, true, 0, 0, k1, k2, delta_y_swap(caches, s, k1, k2)}))
                return;
        }
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2)
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = k1 + 1; k2 < n; ++k2) {
                    ++evaluations;
                    if (visit(DualMove{true, true, i1, i2, k1, k2,
                                       dual_swap_delta(inst, caches, s, i1, i2, k1, k2)}))
                        return;
                }
}

inline void search_dual_exchange(const BapInstance& inst, Solution& s, Rule rule,
                                 const Deadline& deadline, SearchReport& report) {
    DeltaCaches caches = build_caches(inst, s);
    long long value = evaluate(inst, s);
    while (true) {
        if (deadline.expired()) {
            report.converged = false;
            break;
        }
        bool found = false;
        bool out_of_time = false;
        long long polls = 0;
        DualMove chosen{};
        // One sweep is O(m^2 n^2); poll the clock periodically inside it.
        for_each_dual_move(inst, caches, s, report.evaluations, [&](const DualMove& mv) {
            if ((++polls & 4095) == 0 && deadline.expired()) {
                out_of_time = true;
                return true;
            }
            if (mv.delta >= 0) return false;
            if (!found || mv.delta < chosen.delta) {
                chosen = mv;
                found = true;
            }
            return rule == Rule::First;
        });
        if (out_of_time) {
            report.converged = false;
            break;
        }
        if (!found) break;
        if (chosen.has_x) apply_x_swap(inst, caches, s, chosen.i1, chosen.i2);
        if (chosen.has_y) apply_y_swap(inst, caches, s, chosen.k1, chosen.k2);
        value += chosen.delta;
        ++report.iterations;
    }
    report.value = value;
}

// -------------------------------------------------------------------------
// Optimized exchanges: each one-side move is scored with the other side
// fully re-optimized by a LAP on the incrementally derived cost matrix.
// The moved side changes in AT MOST h positions, so the scan starts with the
// two identity moves (pure re-optimization of either side); without them a
// rank-1 instance can converge strictly above its optimum.
// -------------------------------------------------------------------------

struct OptMove {
    SwapMove::Kind kind = SwapMove::Kind::XSwap;
    int a = 0, b = 0, c = 0;
    long long value = 0;               // full objective of the candidate
    std::vector<int> other_side;       // re-optimized permutation
    std::vector<long long> side_cost;  // derived cost matrix of the moved side
};

/// Images of a move applied to the current side, as (index, old, new) rows.
inline void move_rows(const Solution& s, const SwapMove& mv, std::vector<std::array<int, 3>>& rows) {
    rows.clear();
    const bool xside = mv.kind == SwapMove::Kind::XSwap || mv.kind == SwapMove::Kind::XRot1 ||
                       mv.kind == SwapMove::Kind::XRot2;
    const auto img = [&](int idx) { return xside ? s.pi(idx) : s.phi(idx); };
    switch (mv.kind) {
        case SwapMove::Kind::XSwap:
        case SwapMove::Kind::YSwap:
            rows.push_back({mv.a, img(mv.a), img(mv.b)});
            rows.push_back({mv.b, img(mv.b), img(mv.a)});
            break;
        case SwapMove::Kind::XRot1:
        case SwapMove::Kind::YRot1:
            rows.push_back({mv.a, img(mv.a), img(mv.b)});
            rows.push_back({mv.b, img(mv.b), img(mv.c)});
            rows.push_back({mv.c, img(mv.c), img(mv.a)});
            break;
        case SwapMove::Kind::XRot2:
        case SwapMove::Kind::YRot2:
            rows.push_back({mv.a, img(mv.a), img(mv.c)});
            rows.push_back({mv.b, img(mv.b), img(mv.a)});
            rows.push_back({mv.c, img(mv.c), img(mv.b)});
            break;
    }
}

inline void search_optimized_exchange(const BapInstance& inst, Solution& s, Rule rule,
                                      LapMode lap_mode, bool triples, const Deadline& deadline,
                                      SearchReport& report) {
    const int m = inst.m(), n = inst.n();
    DeltaCaches caches = build_caches(inst, s);
    long long value = evaluate(inst, s);
    long long cpart = linear_x_part(inst, s.pi());
    long long dpart = linear_y_part(inst, s.phi());

    std::vector<long long> derived;
    std::vector<std::array<int, 3>> rows;
    bool out_of_time = false;

    // Enumerates one-side moves (x before y, pairs before triples) and hands
    // each candidate's derived matrix + LAP result to the accept check.
    const auto scan = [&](auto&& accept) {
        const auto consider_x = [&](const SwapMove& mv) {
            if (deadline.expired()) {
                out_of_time = true;
                return true;
            }
            move_rows(s, mv, rows);
            derived = caches.g;
            long long cnew = cpart;
            for (const auto& r : rows) {
                const long long* add = inst.q_block(r[0], r[2]);
                const long long* sub = inst.q_block(r[0], r[1]);
                for (std::size_t t = 0; t < derived.size(); ++t) derived[t] += add[t] - sub[t];
                cnew += inst.c(r[0], r[2]) - inst.c(r[0], r[1]);
            }
            LapResult lap = solve_lap(derived, n, lap_mode);
            ++report.evaluations;
            OptMove cand{mv.kind, mv.a, mv.b, mv.c, lap.value + cnew,
                         std::move(lap.assignment), std::move(derived)};
            return accept(std::move(cand));
        };
        const auto consider_y = [&](const SwapMove& mv) {
            if (deadline.expired()) {
                out_of_time = true;
                return true;
            }
            move_rows(s, mv, rows);
            derived = caches.e;
            long long dnew = dpart;
            for (const auto& r : rows) {
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        const long long* block = inst.q_block(i, j);
                        derived[static_cast<std::size_t>(i) * m + j] +=
                            block[static_cast<std::size_t>(r[0]) * n + r[2]] -
                            block[static_cast<std::size_t>(r[0]) * n + r[1]];
                    }
                dnew += inst.d(r[0], r[2]) - inst.d(r[0], r[1]);
            }
            LapResult lap = solve_lap(derived, m, lap_mode);
            ++report.evaluations;
            OptMove cand{mv.kind, mv.a, mv.b, mv.c, lap.value + dnew,
                         std::move(lap.assignment), std::move(derived)};
            return accept(std::move(cand));
        };

        // Identity moves first: (i1 == i2) leaves the side unchanged, so the
        // derived matrix equals the cache and the LAP re-optimizes the other
        // side outright.
        if (consider_x({SwapMove::Kind::XSwap, 0, 0, 0, 0})) return;
        if (consider_y({SwapMove::Kind::YSwap, 0, 0, 0, 0})) return;
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = i1 + 1; i2 < m; ++i2)
                if (consider_x({SwapMove::Kind::XSwap, i1, i2, 0, 0})) return;
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = k1 + 1; k2 < n; ++k2)
                if (consider_y({SwapMove::Kind::YSwap, k1, k2, 0, 0})) return;
        if (!triples) return;
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = i1 + 1; i2 < m; ++i2)
                for (int i3 = i2 + 1; i3 < m; ++i3) {
                    if (consider_x({SwapMove::Kind::XRot1, i1, i2, i3, 0})) return;
                    if (consider_x({SwapMove::Kind::XRot2, i1, i2, i3, 0})) return;
                }
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = k1 + 1; k2 < n; ++k2)
                for (int k3 = k2 + 1; k3 < n; ++k3) {
                    if (consider_y({SwapMove::Kind::YRot1, k1, k2, k3, 0})) return;
                    if (consider_y({SwapMove::Kind::YRot2, k1, k2, k3, 0})) return;
                }
    };

    const auto is_x_move = [](SwapMove::Kind k) {
        return k == SwapMove::Kind::XSwap || k == SwapMove::Kind::XRot1 ||
               k == SwapMove::Kind::XRot2;
    };

    while (true) {
        bool found = false;
        OptMove chosen;
        scan([&](OptMove cand) {
            if (cand.value >= value) return false;
            if (!found || cand.value < chosen.value) {
                chosen = std::move(cand);
                found = true;
            }
            return rule == Rule::First;
        });
        if (out_of_time) {
            report.converged = false;
            break;
        }
        if (!found) break;

        if (is_x_move(chosen.kind)) {
            std::vector<int> pi = s.pi();
            move_rows(s, {chosen.kind, chosen.a, chosen.b, chosen.c, 0}, rows);
            for (const auto& r : rows) pi[r[0]] = r[2];
            s.set_pi(std::move(pi));
            s.set_phi(std::move(chosen.other_side));
            caches.g = std::move(chosen.side_cost);  // g matches the new pi
            rebuild_e(inst, s, caches);              // phi changed wholesale
        } else {
            std::vector<int> phi = s.phi();
            move_rows(s, {chosen.kind, chosen.a, chosen.b, chosen.c, 0}, rows);
            for (const auto& r : rows) phi[r[0]] = r[2];
            s.set_phi(std::move(phi));
            s.set_pi(std::move(chosen.other_side));
            caches.e = std::move(chosen.side_cost);
            rebuild_g(inst, s, caches);
        }
        caches.stamp = s.version();
        value = chosen.value;
        cpart = linear_x_part(inst, s.pi());
        dpart = linear_y_part(inst, s.phi());
        ++report.iterations;
    }
    report.value = value;
}

// -------------------------------------------------------------------------
// Shift-based searches.
// -------------------------------------------------------------------------

/// pi with every image advanced by `a` (cyclically).
inline std::vector<int> shifted(const std::vector<int>& p, int a) {
    const int sz = static_cast<int>(p.size());
    std::vector<int> out(p.size());
    for (int i = 0; i < sz; ++i) out[i] = (p[i] + a) % sz;
    return out;
}

/// Bucket interleave: split the first B*u positions (B = size/u buckets of u
/// elements) into buckets, read first elements of every bucket, then second
/// ones, and so on, with an extra cyclic offset `a` inside that prefix.
/// Positions past the bucketized prefix keep their image, which keeps the
/// result a permutation for every offset.
inline std::vector<int> shuffled(const std::vector<int>& p, int u, int a) {
    const int sz = static_cast<int>(p.size());
    const int buckets = sz / u;
    const int prefix = buckets * u;
    std::vector<int> out(p.begin(), p.end());
    for (int i = 0; i < prefix; ++i) {
        const int pos = (i % buckets) * u + i / buckets;
        out[i] = p[(pos + a) % prefix];
    }
    return out;
}

struct ReorderMove {
    bool xside = true;
    std::vector<int> perm;
    long long delta = 0;
};

template <typename Visitor>
void for_each_shift_move(const BapInstance& inst, const DeltaCaches& caches, const Solution& s,
                         bool with_shuffle, long long& evaluations, Visitor&& visit) {
    const int m = inst.m(), n = inst.n();
    const auto x_delta = [&](const std::vector<int>& pi) {
        long long d = 0;
        for (int i = 0; i < m; ++i)
            d += caches.e[static_cast<std::size_t>(i) * m + pi[i]] -
                 caches.e[static_cast<std::size_t>(i) * m + s.pi(i)];
        return d;
    };
    const auto y_delta = [&](const std::vector<int>& phi) {
        long long d = 0;
        for (int k = 0; k < n; ++k)
            d += caches.g[static_cast<std::size_t>(k) * n + phi[k]] -
                 caches.g[static_cast<std::size_t>(k) * n + s.phi(k)];
        return d;
    };

    for (int a = 1; a < m; ++a) {
        auto pi = shifted(s.pi(), a);
        const long long d = x_delta(pi);
        ++evaluations;
        if (visit(ReorderMove{true, std::move(pi), d})) return;
    }
    for (int b = 1; b < n; ++b) {
        auto phi = shifted(s.phi(), b);
        const long long d = y_delta(phi);
        ++evaluations;
        if (visit(ReorderMove{false, std::move(phi), d})) return;
    }
    if (!with_shuffle) return;
    for (int u = 1; u <= m / 2; ++u) {
        const int prefix = (m / u) * u;
        for (int a = 0; a < prefix; ++a) {
            auto pi = shuffled(s.pi(), u, a);
            ++evaluations;
            const long long d = x_delta(pi);
            if (visit(ReorderMove{true, std::move(pi), d})) return;
        }
    }
    for (int v = 1; v <= n / 2; ++v) {
        const int prefix = (n / v) * v;
        for (int b = 0; b < prefix; ++b) {
            auto phi = shuffled(s.phi(), v, b);
            ++evaluations;
            const long long d = y_delta(phi);
            if (visit(ReorderMove{false, std::move(phi), d})) return;
        }
    }
}

inline void search_shift(const BapInstance& inst, Solution& s, Rule rule, bool with_shuffle,
                         const Deadline& deadline, SearchReport& report) {
    DeltaCaches caches = build_caches(inst, s);
    long long value = evaluate(inst, s);
    while (true) {
        if (deadline.expired()) {
            report.converged = false;
            break;
        }
        bool found = false;
        ReorderMove chosen;
        for_each_shift_move(inst, caches, s, with_shuffle, report.evaluations,
                            [&](ReorderMove mv) {
                                if (mv.delta >= 0) return false;
                                if (!found || mv.delta < chosen.delta) {
                                    chosen = std::move(mv);
                                    found = true;
                                }
                                return rule == Rule::First;
                            });
        if (!found) break;
        if (chosen.xside) {
            s.set_pi(std::move(chosen.perm));
            rebuild_g(inst, s, caches);
        } else {
            s.set_phi(std::move(chosen.perm));
            rebuild_e(inst, s, caches);
        }
        caches.stamp = s.version();
        value += chosen.delta;
        ++report.iterations;
    }
    report.value = value;
}

/// Dual shift explores the full cyclic-shift class of the start, which makes
/// it a local optimum after one pass; the pass is exactly shift_class_scan.
inline void search_dual_shift(const BapInstance& inst, Solution& s, SearchReport& report) {
    const long long start_value = evaluate(inst, s);
    SearchReport scan = shift_class_scan(inst, s);
    report.evaluations += scan.evaluations;
    if (scan.value < start_value) {
        s = std::move(scan.solution);
        report.iterations = 1;
    }
    report.value = scan.value < start_value ? scan.value : start_value;
}

inline void search_shift_opt(const BapInstance& inst, Solution& s, Rule rule,
                             const Deadline& deadline, SearchReport& report) {
    const int m = inst.m(), n = inst.n();
    long long value = evaluate(inst, s);
    std::vector<long long> cost;
    bool out_of_time = false;

    struct Cand {
        bool xside = true;
        std::vector<int> moved, other;
        long long value = 0;
    };

    // Shift offsets include 0, so the pure re-optimization of either side is
    // part of the neighborhood.
    const auto scan = [&](auto&& accept) {
        for (int a = 0; a < m; ++a) {
            if (deadline.expired()) {
                out_of_time = true;
                return;
            }
            auto pi = shifted(s.pi(), a);
            build_g_for(inst, pi, cost);
            LapResult lap = lap_exact(cost, n);
            ++report.evaluations;
            const long long v = lap.value + linear_x_part(inst, pi);
            if (accept(Cand{true, std::move(pi), std::move(lap.assignment), v})) return;
        }
        for (int b = 0; b < n; ++b) {
            if (deadline.expired()) {
                out_of_time = true;
                return;
            }
            auto phi = shifted(s.phi(), b);
            build_e_for(inst, phi, cost);
            LapResult lap = lap_exact(cost, m);
            ++report.evaluations;
            const long long v = lap.value + linear_y_part(inst, phi);
            if (accept(Cand{false, std::move(phi), std::move(lap.assignment), v})) return;
        }
    };

    while (true) {
        bool found = false;
        Cand chosen;
        scan([&](Cand cand) {
            if (cand.value >= value) return false;
            if (!found || cand.value < chosen.value) {
                chosen = std::move(cand);
                found = true;
            }
            return rule == Rule::First;
        });
        if (out_of_time) {
            report.converged = false;
            break;
        }
        if (!found) break;
        if (chosen.xside) {
            s.set_pi(std::move(chosen.moved));
            s.set_phi(std::move(chosen.other));
        } else {
            s.set_phi(std::move(chosen.moved));
            s.set_pi(std::move(chosen.other));
        }
        value = chosen.value;
        ++report.iterations;
    }
    report.value = value;
}

}  // namespace detail

/// Run the local search selected by `variant` from `start` until it reaches
/// a local optimum of its neighborhood (or the time budget runs out, in
/// which case the report comes back with converged = false). The objective
/// strictly decreases at every accepted move.
inline SearchReport local_search(const BapInstance& inst, Solution start,
                                 const SearchVariant& variant,
                                 std::optional<std::chrono::milliseconds> budget = {}) {
    variant.validate();
    if (!start.fits(inst)) throw std::invalid_argument("local_search: size mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    const Deadline deadline = Deadline::after(budget);
    SearchReport report;
    switch (variant.family) {
        case Family::TwoExchange:
            detail::search_exchange(inst, start, variant.rule, false, deadline, report);
            break;
        case Family::ThreeExchange:
            detail::search_exchange(inst, start, variant.rule, true, deadline, report);
            break;
        case Family::Alternating:
            detail::search_alternating(inst, start, deadline, report);
            break;
        case Family::DualTwoExchange:
            detail::search_dual_exchange(inst, start, variant.rule, deadline, report);
            break;
        case Family::TwoExchangeOpt:
            detail::search_optimized_exchange(inst, start, variant.rule, variant.lap_mode, false,
                                              deadline, report);
            break;
        case Family::ThreeExchangeOpt:
            detail::search_optimized_exchange(inst, start, variant.rule, variant.lap_mode, true,
                                              deadline, report);
            break;
        case Family::Shift:
            detail::search_shift(inst, start, variant.rule, false, deadline, report);
            break;
        case Family::ShiftShuffle:
            detail::search_shift(inst, start, variant.rule, true, deadline, report);
            break;
        case Family::DualShift:
            detail::search_dual_shift(inst, start, report);
            break;
        case Family::ShiftOpt:
            detail::search_shift_opt(inst, start, variant.rule, deadline, report);
            break;
    }
    report.solution = std::move(start);
    report.elapsed_ms = detail::ms_since(t0);
    return report;
}

// ---------------------------------------------------------------------------
// Independent local-optimum certification. Everything below recomputes
// objective values from scratch (fresh cost matrices, full evaluate calls),
// sharing no incremental state with the searches it checks.
// ---------------------------------------------------------------------------

struct ImprovingMove {
    std::string kind;
    std::vector<int> indices;
    long long delta = 0;  // candidate value minus current value, negative
};

struct CertifyResult {
    bool locally_optimal = true;
    std::optional<ImprovingMove> witness;

    explicit operator bool() const { return locally_optimal; }
};

inline CertifyResult certify_local_optimum(const BapInstance& inst, const Solution& s,
                                           const SearchVariant& variant) {
    variant.validate();
    if (!s.fits(inst)) throw std::invalid_argument("certify: size mismatch");
    const int m = inst.m(), n = inst.n();
    const long long base = evaluate(inst, s);
    CertifyResult result;

    const auto report = [&](const char* kind, std::vector<int> idx, long long cand) {
        if (cand >= base) return false;
        result.locally_optimal = false;
        result.witness = ImprovingMove{kind, std::move(idx), cand - base};
        return true;
    };
    const auto eval_perms = [&](const std::vector<int>& pi, const std::vector<int>& phi) {
        return evaluate(inst, Solution(pi, phi));
    };

    const auto scan_exchange = [&](bool triples) {
        std::vector<int> pi = s.pi(), phi = s.phi();
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = i1 + 1; i2 < m; ++i2) {
                std::swap(pi[i1], pi[i2]);
                if (report("x_swap", {i1, i2}, eval_perms(pi, phi))) return;
                std::swap(pi[i1], pi[i2]);
            }
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = k1 + 1; k2 < n; ++k2) {
                std::swap(phi[k1], phi[k2]);
                if (report("y_swap", {k1, k2}, eval_perms(pi, phi))) return;
                std::swap(phi[k1], phi[k2]);
            }
        if (!triples) return;
        const auto try_rot = [&](std::vector<int>& p, int a, int b, int c, bool second,
                                 const char* kind) {
            std::vector<int> rp = p;
            if (!second) {
                rp[a] = p[b];
                rp[b] = p[c];
                rp[c] = p[a];
            } else {
                rp[a] = p[c];
                rp[b] = p[a];
                rp[c] = p[b];
            }
            return std::pair<std::vector<int>, const char*>(std::move(rp), kind);
        };
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = i1 + 1; i2 < m; ++i2)
                for (int i3 = i2 + 1; i3 < m; ++i3)
                    for (bool second : {false, true}) {
                        auto [rp, kind] = try_rot(pi, i1, i2, i3, second, "x_rotate");
                        if (report(kind, {i1, i2, i3, second}, eval_perms(rp, phi))) return;
                    }
        for (int k1 = 0; k1 < n; ++k1)
            for (int k2 = k1 + 1; k2 < n; ++k2)
                for (int k3 = k2 + 1; k3 < n; ++k3)
                    for (bool second : {false, true}) {
                        auto [rp, kind] = try_rot(phi, k1, k2, k3, second, "y_rotate");
                        if (report(kind, {k1, k2, k3, second}, eval_perms(pi, rp))) return;
                    }
    };

    std::vector<long long> cost;
    switch (variant.family) {
        case Family::TwoExchange: scan_exchange(false); break;
        case Family::ThreeExchange: scan_exchange(true); break;
        case Family::Alternating: {
            detail::build_e_for(inst, s.phi(), cost);
            const long long vx = lap_exact(cost, m).value + detail::linear_y_part(inst, s.phi());
            if (report("x_reopt", {}, vx)) return result;
            detail::build_g_for(inst, s.pi(), cost);
            const long long vy = lap_exact(cost, n).value + detail::linear_x_part(inst, s.pi());
            report("y_reopt", {}, vy);
            break;
        }
        case Family::DualTwoExchange: {
            std::vector<int> pi = s.pi(), phi = s.phi();
            for (int i1 = 0; i1 < m; ++i1)
                for (int i2 = i1 + 1; i2 < m; ++i2) {
                    std::swap(pi[i1], pi[i2]);
                    if (report("x_swap", {i1, i2}, eval_perms(pi, phi))) return result;
                    std::swap(pi[i1], pi[i2]);
                }
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = k1 + 1; k2 < n; ++k2) {
                    std::swap(phi[k1], phi[k2]);
                    if (report("y_swap", {k1, k2}, eval_perms(pi, phi))) return result;
                    std::swap(phi[k1], phi[k2]);
                }
            for (int i1 = 0; i1 < m; ++i1)
                for (int i2 = i1 + 1; i2 < m; ++i2) {
                    std::swap(pi[i1], pi[i2]);
                    for (int k1 = 0; k1 < n; ++k1)
                        for (int k2 = k1 + 1; k2 < n; ++k2) {
                            std::swap(phi[k1], phi[k2]);
                            const bool hit =
                                report("dual_swap", {i1, i2, k1, k2}, eval_perms(pi, phi));
                            std::swap(phi[k1], phi[k2]);
                            if (hit) {
                                std::swap(pi[i1], pi[i2]);
                                return result;
                            }
                        }
                    std::swap(pi[i1], pi[i2]);
                }
            break;
        }
        case Family::TwoExchangeOpt:
        case Family::ThreeExchangeOpt: {
            const bool triples = variant.family == Family::ThreeExchangeOpt;
            std::vector<int> pi = s.pi(), phi = s.phi();
            const auto check_x = [&](std::vector<int> cand_pi, const char* kind,
                                     std::vector<int> idx) {
                detail::build_g_for(inst, cand_pi, cost);
                const long long v = detail::solve_lap(cost, n, variant.lap_mode).value +
                                    detail::linear_x_part(inst, cand_pi);
                return report(kind, std::move(idx), v);
            };
            const auto check_y = [&](std::vector<int> cand_phi, const char* kind,
                                     std::vector<int> idx) {
                detail::build_e_for(inst, cand_phi, cost);
                const long long v = detail::solve_lap(cost, m, variant.lap_mode).value +
                                    detail::linear_y_part(inst, cand_phi);
                return report(kind, std::move(idx), v);
            };
            if (check_x(pi, "y_reopt", {})) return result;   // x unchanged, y re-optimized
            if (check_y(phi, "x_reopt", {})) return result;  // y unchanged, x re-optimized
            for (int i1 = 0; i1 < m; ++i1)
                for (int i2 = i1 + 1; i2 < m; ++i2) {
                    std::vector<int> cand = pi;
                    std::swap(cand[i1], cand[i2]);
                    if (check_x(std::move(cand), "x_swap_reopt", {i1, i2})) return result;
                }
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = k1 + 1; k2 < n; ++k2) {
                    std::vector<int> cand = phi;
                    std::swap(cand[k1], cand[k2]);
                    if (check_y(std::move(cand), "y_swap_reopt", {k1, k2})) return result;
                }
            if (!triples) break;
            for (int i1 = 0; i1 < m; ++i1)
                for (int i2 = i1 + 1; i2 < m; ++i2)
                    for (int i3 = i2 + 1; i3 < m; ++i3)
                        for (bool second : {false, true}) {
                            std::vector<int> cand = pi;
                            if (!second) {
                                cand[i1] = pi[i2];
                                cand[i2] = pi[i3];
                                cand[i3] = pi[i1];
                            } else {
                                cand[i1] = pi[i3];
                                cand[i2] = pi[i1];
                                cand[i3] = pi[i2];
                            }
                            if (check_x(std::move(cand), "x_rotate_reopt",
                                        {i1, i2, i3, second}))
                                return result;
                        }
            for (int k1 = 0; k1 < n; ++k1)
                for (int k2 = k1 + 1; k2 < n; ++k2)
                    for (int k3 = k2 + 1; k3 < n; ++k3)
                        for (bool second : {false, true}) {
                            std::vector<int> cand = phi;
                            if (!second) {
                                cand[k1] = phi[k2];
                                cand[k2] = phi[k3];
                                cand[k3] = phi[k1];
                            } else {
                                cand[k1] = phi[k3];
                                cand[k2] = phi[k1];
                                cand[k3] = phi[k2];
                            }
                            if (check_y(std::move(cand), "y_rotate_reopt",
                                        {k1, k2, k3, second}))
                                return result;
                        }
            break;
        }
        case Family::Shift:
        case Family::ShiftShuffle: {
            for (int a = 1; a < m; ++a)
                if (report("x_shift", {a}, eval_perms(detail::shifted(s.pi(), a), s.phi())))
                    return result;
            for (int b = 1; b < n; ++b)
                if (report("y_shift", {b}, eval_perms(s.pi(), detail::shifted(s.phi(), b))))
                    return result;
            if (variant.family == Family::Shift) break;
            for (int u = 1; u <= m / 2; ++u) {
                const int prefix = (m / u) * u;
                for (int a = 0; a < prefix; ++a)
                    if (report("x_shuffle", {u, a},
                               eval_perms(detail::shuffled(s.pi(), u, a), s.phi())))
                        return result;
            }
            for (int v = 1; v <= n / 2; ++v) {
                const int prefix = (n / v) * v;
                for (int b = 0; b < prefix; ++b)
                    if (report("y_shuffle", {v, b},
                               eval_perms(s.pi(), detail::shuffled(s.phi(), v, b))))
                        return result;
            }
            break;
        }
        case Family::DualShift: {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < n; ++b)
                    if (report("dual_shift", {a, b},
                               eval_perms(detail::shifted(s.pi(), a),
                                          detail::shifted(s.phi(), b))))
                        return result;
            break;
        }
        case Family::ShiftOpt: {
            for (int a = 0; a < m; ++a) {
                auto pi = detail::shifted(s.pi(), a);
                detail::build_g_for(inst, pi, cost);
                const long long v =
                    lap_exact(cost, n).value + detail::linear_x_part(inst, pi);
                if (report("x_shift_reopt", {a}, v)) return result;
            }
            for (int b = 0; b < n; ++b) {
                auto phi = detail::shifted(s.phi(), b);
                detail::build_e_for(inst, phi, cost);
                const long long v =
                    lap_exact(cost, m).value + detail::linear_y_part(inst, phi);
                if (report("y_shift_reopt", {b}, v)) return result;
            }
            break;
        }
    }
    return result;
}

}  // namespace bap
