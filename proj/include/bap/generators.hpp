#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "instance.hpp"
#include "rng.hpp"

namespace bap {

enum class GenKind { Uniform, Normal, Euclidean, Rank1 };

/// A family of benchmark instances to generate. Instance `origin + i` of the
/// batch is produced with effective seed `seed ^ (origin + i)`, so members
/// can be generated independently (and in parallel).
struct GenSpec {
    GenKind kind = GenKind::Uniform;
    int m = 1;
    int n = 1;
    std::uint64_t seed = 0;
    int count = 1;
    int origin = 0;

    void validate() const {
        if (m < 1 || n < 1 || m > n) throw std::invalid_argument("gen: need 1 <= m <= n");
        if (count < 1) throw std::invalid_argument("gen: count must be >= 1");
    }
};

/// Factor matrices for a rank-1 instance, q[i][j][k][l] = a[i][j] * b[k][l].
/// Leave a/b empty to have them drawn uniformly from [0, mn].
struct Rank1Spec {
    int m = 1;
    int n = 1;
    std::vector<long long> a;  // m x m, non-negative
    std::vector<long long> b;  // n x n, non-negative
};

namespace detail {

/// Rounding rule used for all generated costs: nearest integer, halves away
/// from zero.
inline long long round_half_away(double v) { return std::llround(v); }

inline std::string instance_name(const char* type, int m, int n, int index) {
    return std::string(type) + " " + std::to_string(m) + "x" + std::to_string(n) + " " +
           std::to_string(index);
}

inline Rng instance_rng(const GenSpec& spec, int index) {
    return make_rng(spec.seed ^ static_cast<std::uint64_t>(spec.origin + index));
}

}  // namespace detail

/// Uniform instance: C = D = 0, q i.i.d. uniform on [0, mn] rounded to the
/// nearest integer.
inline BapInstance gen_uniform(const GenSpec& spec, int index = 0) {
    spec.validate();
    Rng rng = detail::instance_rng(spec, index);
    const int m = spec.m, n = spec.n;
    const double hi = static_cast<double>(m) * n;
    std::uniform_real_distribution<double> dist(0.0, hi);
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n);
    for (auto& v : q) v = detail::round_half_away(dist(rng));
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0),
                       detail::instance_name("uniform", m, n, spec.origin + index));
}

/// Normal instance: q i.i.d. N(mn/2, mn/6) rounded; negative samples are
/// kept as-is, so this class is excluded from the non-negativity bound tests.
inline BapInstance gen_normal(const GenSpec& spec, int index = 0) {
    spec.validate();
    Rng rng = detail::instance_rng(spec, index);
    const int m = spec.m, n = spec.n;
    const double mn = static_cast<double>(m) * n;
    std::normal_distribution<double> dist(mn / 2.0, mn / 6.0);
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n);
    for (auto& v : q) v = detail::round_half_away(dist(rng));
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0),
                       detail::instance_name("normal", m, n, spec.origin + index));
}

/// Euclidean instance: four point sets A, B (size m) and U, V (size n) drawn
/// uniformly from the square [0, 1.5*sqrt(mn)]^2, and
/// q[i][j][k][l] = round(|a_i - u_k| * |b_j - v_l|). The points are kept on
/// the instance so Q can be recomputed for audit. For very small mn the
/// square is tiny and most rounded products collapse to 0; the formula is
/// kept verbatim anyway.
inline BapInstance gen_euclidean(const GenSpec& spec, int index = 0) {
    spec.validate();
    Rng rng = detail::instance_rng(spec, index);
    const int m = spec.m, n = spec.n;
    const double side = 1.5 * std::sqrt(static_cast<double>(m) * n);
    std::uniform_real_distribution<double> coord(0.0, side);
    const auto draw_points = [&](int count) {
        std::vector<Point> pts(count);
        for (auto& p : pts) {
            p.x = coord(rng);
            p.y = coord(rng);
        }
        return pts;
    };
    PointSets pts;
    pts.a = draw_points(m);
    pts.b = draw_points(m);
    pts.u = draw_points(n);
    pts.v = draw_points(n);

    const auto dist = [](const Point& p, const Point& q) {
        return std::hypot(p.x - q.x, p.y - q.y);
    };
    std::vector<double> au(static_cast<std::size_t>(m) * n), bv(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) au[static_cast<std::size_t>(i) * n + k] = dist(pts.a[i], pts.u[k]);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < n; ++l) bv[static_cast<std::size_t>(j) * n + l] = dist(pts.b[j], pts.v[l]);

    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n);
    std::size_t t = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    q[t++] = detail::round_half_away(au[static_cast<std::size_t>(i) * n + k] *
                                                     bv[static_cast<std::size_t>(j) * n + l]);
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0),
                       detail::instance_name("euclidean", m, n, spec.origin + index),
                       std::move(pts));
}

/// Build the rank-1 instance defined by factor matrices a and b.
inline BapInstance make_rank1(int m, int n, const std::vector<long long>& a,
                              const std::vector<long long>& b, std::string name = "") {
    if (a.size() != static_cast<std::size_t>(m) * m || b.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("rank1: factor matrices have wrong shape");
    for (long long v : a)
        if (v < 0) throw std::invalid_argument("rank1: factors must be non-negative");
    for (long long v : b)
        if (v < 0) throw std::invalid_argument("rank1: factors must be non-negative");
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n);
    std::size_t t = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const long long aij = a[static_cast<std::size_t>(i) * m + j];
            for (std::size_t s = 0; s < b.size(); ++s) q[t++] = aij * b[s];
        }
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0), std::move(name));
}

struct Rank1Result {
    BapInstance instance;
    std::vector<long long> a;
    std::vector<long long> b;
};

/// Rank-1 instance from a spec; missing factors are drawn uniformly from
/// [0, mn] (rounded), so Q is non-negative by construction.
inline Rank1Result gen_rank1(const Rank1Spec& r1, std::uint64_t seed = 0, int index = 0) {
    if (r1.m < 1 || r1.n < 1 || r1.m > r1.n)
        throw std::invalid_argument("rank1: need 1 <= m <= n");
    std::vector<long long> a = r1.a, b = r1.b;
    Rng rng = make_rng(seed ^ static_cast<std::uint64_t>(index));
    const double hi = static_cast<double>(r1.m) * r1.n;
    std::uniform_real_distribution<double> dist(0.0, hi);
    if (a.empty()) {
        a.resize(static_cast<std::size_t>(r1.m) * r1.m);
        for (auto& v : a) v = detail::round_half_away(dist(rng));
    }
    if (b.empty()) {
        b.resize(static_cast<std::size_t>(r1.n) * r1.n);
        for (auto& v : b) v = detail::round_half_away(dist(rng));
    }
    BapInstance inst =
        make_rank1(r1.m, r1.n, a, b, detail::instance_name("rank1", r1.m, r1.n, index));
    return Rank1Result{std::move(inst), std::move(a), std::move(b)};
}

inline BapInstance generate(const GenSpec& spec, int index = 0) {
    switch (spec.kind) {
        case GenKind::Uniform: return gen_uniform(spec, index);
        case GenKind::Normal: return gen_normal(spec, index);
        case GenKind::Euclidean: return gen_euclidean(spec, index);
        case GenKind::Rank1: {
            Rank1Spec r1;
            r1.m = spec.m;
            r1.n = spec.n;
            return gen_rank1(r1, spec.seed, spec.origin + index).instance;
        }
    }
    throw std::invalid_argument("gen: unknown kind");
}

// ---------------------------------------------------------------------------
// Hand-built trap instances. These are tiny inputs on which specific
// heuristics are provably bad; the library ships them as test fixtures.
// ---------------------------------------------------------------------------

/// 2x2x3x3 instance on which Greedy commits to the single cheapest Q entry
/// and ends at 2003 while the optimum is 5 (epsilon = 1, L = 1000).
inline BapInstance fixture_greedy_pathology() {
    const int m = 2, n = 3;
    const long long L = 1000;
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n, 0);
    const auto at = [&](int i, int j, int k, int l) -> long long& {
        return q[((static_cast<std::size_t>(i) * m + j) * n + k) * n + l];
    };
    at(0, 0, 0, 0) = -1;
    at(0, 0, 1, 1) = 1;
    at(0, 0, 2, 2) = 1;
    at(1, 1, 0, 0) = 2;
    at(0, 0, 1, 2) = 2;
    at(0, 0, 2, 1) = 2;
    at(1, 1, 1, 1) = L;
    at(1, 1, 2, 2) = L;
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0), "greedy_pathology 2x3 0");
}

/// 2x2 instance whose identity solution (value -4) is locally optimal for
/// every one-side exchange, while simultaneous swaps reach the optimum -100
/// (epsilon = 1, L = 100).
inline BapInstance fixture_exchange_trap() {
    const int m = 2, n = 2;
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n, 0);
    q[((0 * 2 + 1) * 2 + 0) * 2 + 1] = -100;  // q[0][1][0][1]
    std::vector<long long> c(m * m, 0), d(n * n, 0);
    c[0] = c[3] = -1;
    d[0] = d[3] = -1;
    return BapInstance(m, n, std::move(q), std::move(c), std::move(d), "exchange_trap 2x2 0");
}

/// Family where the identity solution is locally optimal for every
/// [h,p]-exchange: q[i][i][k][k] = -1, q[i][i+1][k][k+1] = -L and
/// q[i][i][k][k+1] = hL/(m-h), indices cyclic. L = 100*(m-h) keeps the
/// penalty entries integral. Requires h < m.
inline BapInstance fixture_hp_trap(int m, int n, int h) {
    if (m < 1 || n < 1 || m > n) throw std::invalid_argument("hp_trap: need 1 <= m <= n");
    if (h < 1 || h >= m) throw std::invalid_argument("hp_trap: requires 1 <= h < m");
    const long long L = 100LL * (m - h);
    const long long penalty = h * L / (m - h);  // exact by choice of L
    std::vector<long long> q(static_cast<std::size_t>(m) * m * n * n, 0);
    const auto at = [&](int i, int j, int k, int l) -> long long& {
        return q[((static_cast<std::size_t>(i) * m + j) * n + k) * n + l];
    };
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < n; ++k) {
            at(i, i, k, k) = -1;
            at(i, (i + 1) % m, k, (k + 1) % n) = -L;
            at(i, i, k, (k + 1) % n) = penalty;
        }
    }
    return BapInstance(m, n, std::move(q), std::vector<long long>(m * m, 0),
                       std::vector<long long>(n * n, 0),
                       "hp_trap" + std::to_string(h) + " " + std::to_string(m) + "x" +
                           std::to_string(n) + " 0");
}

/// Fixture lookup by name: "greedy_pathology", "exchange_trap", or
/// "hp_trap" with explicit sizes.
inline BapInstance fixture(const std::string& name, int m = 0, int n = 0, int h = 0) {
    if (name == "greedy_pathology") return fixture_greedy_pathology();
    if (name == "exchange_trap") return fixture_exchange_trap();
    if (name == "hp_trap") return fixture_hp_trap(m, n, h);
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace bap
