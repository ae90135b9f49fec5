#pragma once

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <vector>

#include "instance.hpp"

namespace bap {

/// Thrown when an exhaustive operation would exceed its configured size cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }

inline std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(now() - t0).count();
}

}  // namespace detail

/// Scan the whole cyclic-shift class of s: all mn solutions with pi shifted
/// by a on the image side (pi'(i) = (pi(i)+a) mod m) and phi shifted by b.
/// Returns the best member; its value never exceeds average_value(inst),
/// since the class mean equals the global mean. O(m^2 n^2).
inline SearchReport shift_class_scan(const BapInstance& inst, const Solution& s) {
    if (!s.fits(inst)) throw std::invalid_argument("shift_class_scan: size mismatch");
    const auto t0 = detail::now();
    const int m = inst.m(), n = inst.n();
    std::vector<int> pi(m), phi(n);
    SearchReport report;
    report.solution = s;
    report.value = evaluate(inst, s);
    for (int a = 0; a < m; ++a) {
        for (int i = 0; i < m; ++i) pi[i] = (s.pi(i) + a) % m;
        for (int b = 0; b < n; ++b) {
            for (int k = 0; k < n; ++k) phi[k] = (s.phi(k) + b) % n;
            Solution cand(pi, phi);
            const long long value = evaluate(inst, cand);
            ++report.evaluations;
            if (value < report.value) {
                report.value = value;
                report.solution = std::move(cand);
                ++report.iterations;
            }
        }
    }
    report.elapsed_ms = detail::ms_since(t0);
    return report;
}

/// Exact optimum by enumerating all m!*n! permutation pairs, for test
/// oracles only. Refuses instances beyond `pair_limit` candidate pairs.
/// For each pi the y side is scored through a conditional cost matrix, so a
/// pair costs O(n) instead of O(mn). The first optimum in lexicographic
/// (pi, phi) order is returned.
inline SearchReport brute_force_solve(const BapInstance& inst,
                                      long long pair_limit = 10'000'000) {
    const auto t0 = detail::now();
    const int m = inst.m(), n = inst.n();
    int128 pairs = 1;
    for (int i = 2; i <= m; ++i) pairs *= i;
    for (int k = 2; k <= n; ++k) pairs *= k;
    if (pairs > pair_limit)
        throw CapacityError("brute_force_solve: m!*n! exceeds the candidate-pair limit");

    std::vector<int> pi(m), phi0(n);
    for (int i = 0; i < m; ++i) pi[i] = i;
    for (int k = 0; k < n; ++k) phi0[k] = k;
    std::vector<long long> gp(static_cast<std::size_t>(n) * n);

    SearchReport report;
    bool have_best = false;
    do {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) gp[static_cast<std::size_t>(k) * n + l] = inst.d(k, l);
        long long cpart = 0;
        for (int i = 0; i < m; ++i) {
            const long long* block = inst.q_block(i, pi[i]);
            for (std::size_t t = 0; t < gp.size(); ++t) gp[t] += block[t];
            cpart += inst.c(i, pi[i]);
        }
        std::vector<int> phi = phi0;
        do {
            long long value = cpart;
            for (int k = 0; k < n; ++k) value += gp[static_cast<std::size_t>(k) * n + phi[k]];
            ++report.evaluations;
            if (!have_best || value < report.value) {
                report.value = value;
                report.solution = Solution(pi, phi);
                have_best = true;
            }
        } while (std::next_permutation(phi.begin(), phi.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));

    report.elapsed_ms = detail::ms_since(t0);
    return report;
}

}  // namespace bap
