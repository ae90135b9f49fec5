#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace bap {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Generating point sets of a euclidean instance, kept so Q can be audited
/// (q[i][j][k][l] must equal round(|a_i - u_k| * |b_j - v_l|)).
struct PointSets {
    std::vector<Point> a, b;  // |a| = |b| = m
    std::vector<Point> u, v;  // |u| = |v| = n
};

/// Largest admissible sum of absolute costs. The margin below INT64_MAX
/// keeps every quantity the solvers form (objective values, swap deltas,
/// four-term cache sums) inside signed 64-bit range.
inline constexpr long long kCostMassLimit = std::numeric_limits<long long>::max() / 4;

/// A bilinear assignment instance: quartic cost array q (m x m x n x n,
/// row-major), linear terms c (m x m) and d (n x n), with m <= n.
/// Immutable after construction and safe to share across threads.
class BapInstance {
public:
    BapInstance(int m, int n, std::vector<long long> q, std::vector<long long> c,
                std::vector<long long> d, std::string name = "",
                std::optional<PointSets> points = std::nullopt)
        : m_(m),
          n_(n),
          q_(std::move(q)),
          c_(std::move(c)),
          d_(std::move(d)),
          name_(std::move(name)),
          points_(std::move(points)) {
        if (m_ < 1 || n_ < 1) throw std::invalid_argument("instance: sizes must be positive");
        if (m_ > n_) throw std::invalid_argument("instance: requires m <= n");
        const std::size_t qn = static_cast<std::size_t>(m_) * m_ * n_ * n_;
        if (q_.size() != qn) throw std::invalid_argument("instance: Q has wrong shape");
        if (c_.size() != static_cast<std::size_t>(m_) * m_)
            throw std::invalid_argument("instance: C has wrong shape");
        if (d_.size() != static_cast<std::size_t>(n_) * n_)
            throw std::invalid_argument("instance: D has wrong shape");
        if (points_) {
            if (points_->a.size() != static_cast<std::size_t>(m_) ||
                points_->b.size() != static_cast<std::size_t>(m_) ||
                points_->u.size() != static_cast<std::size_t>(n_) ||
                points_->v.size() != static_cast<std::size_t>(n_))
                throw std::invalid_argument("instance: point sets have wrong sizes");
        }
        unsigned __int128 mass = 0;
        for (long long v : q_) mass += static_cast<unsigned long long>(std::llabs(v));
        for (long long v : c_) mass += static_cast<unsigned long long>(std::llabs(v));
        for (long long v : d_) mass += static_cast<unsigned long long>(std::llabs(v));
        if (mass > static_cast<unsigned __int128>(kCostMassLimit))
            throw std::overflow_error("instance: total cost magnitude exceeds 64-bit budget");
        mass_ = static_cast<long long>(mass);
    }

    int m() const { return m_; }
    int n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::optional<PointSets>& points() const { return points_; }

    long long q(int i, int j, int k, int l) const { return q_[qindex(i, j, k, l)]; }
    long long c(int i, int j) const { return c_[static_cast<std::size_t>(i) * m_ + j]; }
    long long d(int k, int l) const { return d_[static_cast<std::size_t>(k) * n_ + l]; }

    /// Pointer to the n*n block q[i][j][.][.]; hot loops stride it directly.
    const long long* q_block(int i, int j) const {
        return q_.data() + (static_cast<std::size_t>(i) * m_ + j) * n_ * n_;
    }

    const std::vector<long long>& q_data() const { return q_; }
    const std::vector<long long>& c_data() const { return c_; }
    const std::vector<long long>& d_data() const { return d_; }

    /// Sum of absolute cost entries (the load-guard quantity).
    long long cost_mass() const { return mass_; }

    /// True when Q is non-negative and C, D are zero; precondition of the
    /// average-relative performance bounds.
    bool nonnegative_pure() const {
        for (long long v : q_)
            if (v < 0) return false;
        for (long long v : c_)
            if (v != 0) return false;
        for (long long v : d_)
            if (v != 0) return false;
        return true;
    }

    bool same_costs(const BapInstance& o) const {
        return m_ == o.m_ && n_ == o.n_ && q_ == o.q_ && c_ == o.c_ && d_ == o.d_;
    }

private:
    std::size_t qindex(int i, int j, int k, int l) const {
        return ((static_cast<std::size_t>(i) * m_ + j) * n_ + k) * n_ + l;
    }

    int m_, n_;
    std::vector<long long> q_, c_, d_;
    std::string name_;
    std::optional<PointSets> points_;
    long long mass_ = 0;
};

/// A feasible solution: permutation pi over rows of the x side (pi[i] = j)
/// and phi over rows of the y side. version() increases on every mutation;
/// delta caches record it to detect stale use.
class Solution {
public:
    Solution() = default;
    Solution(std::vector<int> pi, std::vector<int> phi)
        : pi_(std::move(pi)), phi_(std::move(phi)) {
        if (!is_permutation(pi_) || !is_permutation(phi_))
            throw std::invalid_argument("solution: pi/phi must be permutations");
    }

    static Solution identity(int m, int n) {
        std::vector<int> p(m), f(n);
        for (int i = 0; i < m; ++i) p[i] = i;
        for (int k = 0; k < n; ++k) f[k] = k;
        return Solution(std::move(p), std::move(f));
    }

    int m() const { return static_cast<int>(pi_.size()); }
    int n() const { return static_cast<int>(phi_.size()); }
    const std::vector<int>& pi() const { return pi_; }
    const std::vector<int>& phi() const { return phi_; }
    int pi(int i) const { return pi_[i]; }
    int phi(int k) const { return phi_[k]; }
    std::uint64_t version() const { return version_; }

    void swap_x(int i1, int i2) {
        std::swap(pi_[i1], pi_[i2]);
        ++version_;
    }
    void swap_y(int k1, int k2) {
        std::swap(phi_[k1], phi_[k2]);
        ++version_;
    }
    void set_pi(std::vector<int> pi) {
        if (pi.size() != pi_.size() || !is_permutation(pi))
            throw std::invalid_argument("solution: bad pi replacement");
        pi_ = std::move(pi);
        ++version_;
    }
    void set_phi(std::vector<int> phi) {
        if (phi.size() != phi_.size() || !is_permutation(phi))
            throw std::invalid_argument("solution: bad phi replacement");
        phi_ = std::move(phi);
        ++version_;
    }

    bool fits(const BapInstance& inst) const { return m() == inst.m() && n() == inst.n(); }

    bool operator==(const Solution& o) const { return pi_ == o.pi_ && phi_ == o.phi_; }

    static bool is_permutation(const std::vector<int>& p) {
        std::vector<char> seen(p.size(), 0);
        for (int v : p) {
            if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }

private:
    std::vector<int> pi_, phi_;
    std::uint64_t version_ = 0;
};

/// Outcome of one search run. `iterations` counts accepted moves, or
/// neighborhood switches for the composite searches; `evaluations` counts
/// candidate moves examined.
struct SearchReport {
    Solution solution;
    long long value = 0;
    long long iterations = 0;
    long long evaluations = 0;
    std::int64_t elapsed_ms = 0;
    bool converged = true;
};

/// Objective value of s: sum_{i,k} q[i][pi(i)][k][phi(k)] + sum_i c[i][pi(i)]
/// + sum_k d[k][phi(k)]. Pure integer arithmetic, O(mn).
inline long long evaluate(const BapInstance& inst, const Solution& s) {
    if (!s.fits(inst)) throw std::invalid_argument("evaluate: solution/instance size mismatch");
    const int m = inst.m(), n = inst.n();
    long long total = 0;
    for (int i = 0; i < m; ++i) {
        const long long* block = inst.q_block(i, s.pi(i));
        for (int k = 0; k < n; ++k) total += block[static_cast<std::size_t>(k) * n + s.phi(k)];
        total += inst.c(i, s.pi(i));
    }
    for (int k = 0; k < n; ++k) total += inst.d(k, s.phi(k));
    return total;
}

/// Exact mean objective over all m!*n! feasible solutions:
/// sum(Q)/(mn) + sum(C)/m + sum(D)/n.
inline Rational average_value(const BapInstance& inst) {
    int128 sq = 0, sc = 0, sd = 0;
    for (long long v : inst.q_data()) sq += v;
    for (long long v : inst.c_data()) sc += v;
    for (long long v : inst.d_data()) sd += v;
    const int128 m = inst.m(), n = inst.n();
    return Rational(sq, m * n) + Rational(sc, m) + Rational(sd, n);
}

}  // namespace bap
