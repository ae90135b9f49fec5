#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "construct.hpp"
#include "instance.hpp"
#include "neighborhoods.hpp"
#include "rng.hpp"

namespace bap {

/// Stopping rule for repeated runs: wall-clock limit, restart limit, or
/// both. At least one must be set. Time is checked cooperatively between
/// moves, so an overrun is bounded by a single move's duration.
struct Budget {
    std::optional<std::int64_t> time_ms;
    std::optional<long long> restarts;

    void validate() const {
        if (!time_ms && !restarts)
            throw std::invalid_argument("budget: set a time limit or a restart limit");
        if (time_ms && *time_ms < 0) throw std::invalid_argument("budget: negative time limit");
        if (restarts && *restarts < 1) throw std::invalid_argument("budget: restarts must be >= 1");
    }
};

struct MetaReport {
    SearchReport best;
    long long restarts = 0;
    long long best_iter = 0;           // restart index that produced `best`
    std::vector<long long> values;     // final value of every restart, in order
    std::int64_t elapsed_ms = 0;
};

struct ConstructorSpec {
    enum class Kind { Random, RandomXYGreedy, Greedy, GreedyRandomized, Rounding, Identity };
    Kind kind = Kind::Random;
    int h = 2;  // candidate-list size for GreedyRandomized
};

inline Solution construct(const BapInstance& inst, const ConstructorSpec& ctor,
                          std::uint64_t seed) {
    switch (ctor.kind) {
        case ConstructorSpec::Kind::Random: return random_solution(inst.m(), inst.n(), seed);
        case ConstructorSpec::Kind::RandomXYGreedy: return random_xy_greedy(inst, seed);
        case ConstructorSpec::Kind::Greedy: return greedy(inst);
        case ConstructorSpec::Kind::GreedyRandomized:
            return greedy_randomized(inst, ctor.h, seed);
        case ConstructorSpec::Kind::Rounding: return rounding(inst);
        case ConstructorSpec::Kind::Identity: return Solution::identity(inst.m(), inst.n());
    }
    throw std::invalid_argument("unknown constructor");
}

/// Any search a multi-start can drive: plain local searches and the VNS
/// composites both fit.
using SearchFn =
    std::function<SearchReport(const BapInstance&, Solution, std::optional<std::chrono::milliseconds>)>;

inline SearchFn search_fn(const SearchVariant& variant) {
    return [variant](const BapInstance& inst, Solution start,
                     std::optional<std::chrono::milliseconds> budget) {
        return local_search(inst, std::move(start), variant, budget);
    };
}

namespace detail {

inline std::optional<std::chrono::milliseconds> remaining(
    const std::optional<std::chrono::steady_clock::time_point>& deadline) {
    if (!deadline) return std::nullopt;
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        *deadline - std::chrono::steady_clock::now());
    return left.count() > 0 ? left : std::chrono::milliseconds(0);
}

}  // namespace detail

/// Restart the (constructor, search) pair until the budget is exhausted;
/// restart r uses seed derive_seed(master_seed, r). Sequential runs are
/// deterministic given (master_seed, restart limit); with threads > 1 the
/// same restart set is executed and the reduction (value, then lowest
/// restart index) selects the same best.
inline MetaReport multistart(const BapInstance& inst, const ConstructorSpec& ctor,
                             const SearchFn& search, const Budget& budget,
                             std::uint64_t master_seed, int threads = 1) {
    budget.validate();
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (budget.time_ms) deadline = t0 + std::chrono::milliseconds(*budget.time_ms);

    const auto run_one = [&](long long r) {
        Solution start = construct(inst, ctor, derive_seed(master_seed, r));
        return search(inst, std::move(start), detail::remaining(deadline));
    };

    MetaReport meta;
    if (threads <= 1) {
        for (long long r = 0;; ++r) {
            if (budget.restarts && r >= *budget.restarts) break;
            // Restart 0 always runs so a report exists even under a tiny budget.
            if (r > 0 && deadline && std::chrono::steady_clock::now() >= *deadline) break;
            SearchReport rep = run_one(r);
            meta.values.push_back(rep.value);
            if (r == 0 || rep.value < meta.best.value) {
                meta.best = std::move(rep);
                meta.best_iter = r;
            }
        }
    } else {
        const long long cap = budget.restarts
                                  ? *budget.restarts
                                  : std::numeric_limits<long long>::max();
        std::atomic<long long> next{0};
        std::mutex merge_mutex;
        std::vector<std::pair<long long, SearchReport>> done;  // (restart, report)
        const auto worker = [&] {
            for (;;) {
                const long long r = next.fetch_add(1);
                if (r >= cap) return;
                if (r > 0 && deadline && std::chrono::steady_clock::now() >= *deadline) return;
                SearchReport rep = run_one(r);
                std::lock_guard<std::mutex> lock(merge_mutex);
                done.emplace_back(r, std::move(rep));
            }
        };
        std::vector<std::thread> pool;
        const int nthreads = std::max(1, threads);
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        std::sort(done.begin(), done.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [r, rep] : done) {
            meta.values.push_back(rep.value);
            if (meta.values.size() == 1 || rep.value < meta.best.value) {
                meta.best = std::move(rep);
                meta.best_iter = r;
            }
        }
    }
    meta.restarts = static_cast<long long>(meta.values.size());
    meta.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return meta;
}

/// Wall-clock budget equal to one run of `search` from a random start, for
/// experiments that grant every multi-start strategy the runtime of one slow
/// search.
inline Budget calibration_budget(const BapInstance& inst, const SearchFn& search,
                                 std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    search(inst, random_solution(inst.m(), inst.n(), seed), std::nullopt);
    Budget b;
    b.time_ms = std::max<std::int64_t>(
        1, std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
               .count());
    return b;
}

// ---------------------------------------------------------------------------
// Variable neighborhood search composites. `iterations` of the returned
// report counts how many times control switched from the primary
// neighborhood to the escape neighborhood.
// ---------------------------------------------------------------------------

enum class VnsVariant {
    TwoExPlusAA,         // 2-exchange to convergence, then alternating once
    TwoExAAStep,         // 2-exchange with single alternating steps as escapes
    AAPlus2ExOptFirst,   // alternating once, then optimized 2-exchange (first)
    AA2ExOptStep,        // alternating with best optimized step as escape
    AA2ExOptFirstStep,   // alternating with first optimized step as escape
};

namespace detail {

/// One scan of the optimized 2-exchange neighborhood of s. Returns the
/// accepted candidate (per rule) strictly below `value`, or nothing.
inline std::optional<std::pair<Solution, long long>> optimized_step(
    const BapInstance& inst, const Solution& s, long long value, Rule rule,
    const Deadline& deadline, long long& evaluations, bool& out_of_time) {
    const int m = inst.m(), n = inst.n();
    std::vector<long long> g0, e0, derived;
    build_g_for(inst, s.pi(), g0);
    build_e_for(inst, s.phi(), e0);
    const long long cpart = linear_x_part(inst, s.pi());
    const long long dpart = linear_y_part(inst, s.phi());

    std::optional<std::pair<Solution, long long>> best;
    const auto consider = [&](Solution cand, long long cand_value) {
        if (cand_value >= value) return false;
        if (!best || cand_value < best->second) best.emplace(std::move(cand), cand_value);
        return rule == Rule::First;
    };

    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = i1 + 1; i2 < m; ++i2) {
            if (deadline.expired()) {
                out_of_time = true;
                return best;
            }
            std::vector<int> pi = s.pi();
            std::swap(pi[i1], pi[i2]);
            derived = g0;
            const long long* a12 = inst.q_block(i1, pi[i1]);
            const long long* a21 = inst.q_block(i2, pi[i2]);
            const long long* a11 = inst.q_block(i1, s.pi(i1));
            const long long* a22 = inst.q_block(i2, s.pi(i2));
            for (std::size_t t = 0; t < derived.size(); ++t)
                derived[t] += a12[t] + a21[t] - a11[t] - a22[t];
            LapResult lap = lap_exact(derived, n);
            ++evaluations;
            const long long cnew = cpart + inst.c(i1, pi[i1]) + inst.c(i2, pi[i2]) -
                                   inst.c(i1, s.pi(i1)) - inst.c(i2, s.pi(i2));
            if (consider(Solution(std::move(pi), std::move(lap.assignment)),
                         lap.value + cnew))
                return best;
        }
    for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = k1 + 1; k2 < n; ++k2) {
            if (deadline.expired()) {
                out_of_time = true;
                return best;
            }
            std::vector<int> phi = s.phi();
            std::swap(phi[k1], phi[k2]);
            derived = e0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const long long* block = inst.q_block(i, j);
                    derived[static_cast<std::size_t>(i) * m + j] +=
                        block[static_cast<std::size_t>(k1) * n + phi[k1]] +
                        block[static_cast<std::size_t>(k2) * n + phi[k2]] -
                        block[static_cast<std::size_t>(k1) * n + s.phi(k1)] -
                        block[static_cast<std::size_t>(k2) * n + s.phi(k2)];
                }
            LapResult lap = lap_exact(derived, m);
            ++evaluations;
            const long long dnew = dpart + inst.d(k1, phi[k1]) + inst.d(k2, phi[k2]) -
                                   inst.d(k1, s.phi(k1)) - inst.d(k2, s.phi(k2));
            if (consider(Solution(std::move(lap.assignment), std::move(phi)),
                         lap.value + dnew))
                return best;
        }
    return best;
}

/// Escape loop shared by AA2ExOptStep, AA2ExOptFirstStep and the h-start
/// driver: `s` must already be a fixed point of the alternating search.
inline SearchReport aa_optimized_loop(const BapInstance& inst, Solution s, long long value,
                                      Rule rule, const Deadline& deadline,
                                      SearchReport carry) {
    SearchReport report = std::move(carry);
    bool out_of_time = false;
    while (true) {
        if (deadline.expired()) {
            report.converged = false;
            break;
        }
        ++report.iterations;  // one switch to the optimized neighborhood
        auto step = optimized_step(inst, s, value, rule, deadline, report.evaluations,
                                   out_of_time);
        if (out_of_time) {
            report.converged = false;
            break;
        }
        if (!step) break;
        SearchVariant aa{Family::Alternating};
        SearchReport rep = local_search(inst, std::move(step->first), aa,
                                        remaining(deadline.at));
        report.evaluations += rep.evaluations;
        s = std::move(rep.solution);
        value = rep.value;
        if (!rep.converged) {
            report.converged = false;
            break;
        }
    }
    report.solution = std::move(s);
    report.value = value;
    return report;
}

}  // namespace detail

inline SearchReport vns(const BapInstance& inst, Solution start, VnsVariant variant,
                        std::optional<std::chrono::milliseconds> budget = {}) {
    if (!start.fits(inst)) throw std::invalid_argument("vns: size mismatch");
    const auto t0 = std::chrono::steady_clock::now();
    const Deadline deadline = Deadline::after(budget);
    SearchReport report;

    const auto finish = [&](Solution s, long long value) {
        report.solution = std::move(s);
        report.value = value;
        report.elapsed_ms = detail::ms_since(t0);
        return report;
    };

    switch (variant) {
        case VnsVariant::TwoExPlusAA: {
            SearchVariant twoex{Family::TwoExchange, Rule::Best};
            SearchReport r1 = local_search(inst, std::move(start), twoex,
                                           detail::remaining(deadline.at));
            SearchVariant aa{Family::Alternating};
            SearchReport r2 = local_search(inst, std::move(r1.solution), aa,
                                           detail::remaining(deadline.at));
            report.iterations = 1;
            report.evaluations = r1.evaluations + r2.evaluations;
            report.converged = r1.converged && r2.converged;
            return finish(std::move(r2.solution), r2.value);
        }
        case VnsVariant::TwoExAAStep: {
            Solution s = std::move(start);
            long long value = evaluate(inst, s);
            std::vector<long long> cost;
            while (true) {
                SearchVariant twoex{Family::TwoExchange, Rule::Best};
                SearchReport r2 = local_search(inst, std::move(s), twoex,
                                               detail::remaining(deadline.at));
                report.evaluations += r2.evaluations;
                s = std::move(r2.solution);
                value = r2.value;
                if (!r2.converged || deadline.expired()) {
                    report.converged = false;
                    break;
                }
                ++report.iterations;
                // Single alternating step: re-optimize pi; on success resume
                // the cheap search.
                detail::build_e_for(inst, s.phi(), cost);
                LapResult lx = lap_exact(cost, inst.m());
                ++report.evaluations;
                const long long vx = lx.value + detail::linear_y_part(inst, s.phi());
                if (vx < value) {
                    s.set_pi(std::move(lx.assignment));
                    value = vx;
                    continue;
                }
                detail::build_g_for(inst, lx.assignment, cost);
                LapResult ly = lap_exact(cost, inst.n());
                ++report.evaluations;
                const long long vy = ly.value + detail::linear_x_part(inst, lx.assignment);
                if (vy < value) {
                    s.set_pi(std::move(lx.assignment));
                    s.set_phi(std::move(ly.assignment));
                    value = vy;
                    continue;
                }
                // Equal-value cycle; confirm the incumbent's own y side has no
                // strict improvement before declaring a joint fixed point.
                detail::build_g_for(inst, s.pi(), cost);
                LapResult ly2 = lap_exact(cost, inst.n());
                ++report.evaluations;
                const long long vy2 = ly2.value + detail::linear_x_part(inst, s.pi());
                if (vy2 < value) {
                    s.set_phi(std::move(ly2.assignment));
                    value = vy2;
                    continue;
                }
                break;
            }
            return finish(std::move(s), value);
        }
        case VnsVariant::AAPlus2ExOptFirst: {
            SearchVariant aa{Family::Alternating};
            SearchReport r1 = local_search(inst, std::move(start), aa,
                                           detail::remaining(deadline.at));
            SearchVariant opt{Family::TwoExchangeOpt, Rule::First};
            SearchReport r2 = local_search(inst, std::move(r1.solution), opt,
                                           detail::remaining(deadline.at));
            report.iterations = 1;
            report.evaluations = r1.evaluations + r2.evaluations;
            report.converged = r1.converged && r2.converged;
            return finish(std::move(r2.solution), r2.value);
        }
        case VnsVariant::AA2ExOptStep:
        case VnsVariant::AA2ExOptFirstStep: {
            SearchVariant aa{Family::Alternating};
            SearchReport r1 = local_search(inst, std::move(start), aa,
                                           detail::remaining(deadline.at));
            SearchReport carry;
            carry.evaluations = r1.evaluations;
            carry.converged = r1.converged;
            const Rule rule =
                variant == VnsVariant::AA2ExOptFirstStep ? Rule::First : Rule::Best;
            SearchReport out = detail::aa_optimized_loop(inst, std::move(r1.solution), r1.value,
                                                         rule, deadline, std::move(carry));
            out.elapsed_ms = detail::ms_since(t0);
            return out;
        }
    }
    throw std::invalid_argument("unknown vns variant");
}

/// Build h starting solutions with random_xy_greedy, run the alternating
/// search on each, keep the best, then escape with first-improvement
/// optimized 2-exchange steps. h = 1 reproduces vns(AA2ExOptFirstStep) from
/// the restart-0 start exactly.
inline SearchReport h_start_vns(const BapInstance& inst, int h,
                                std::optional<std::chrono::milliseconds> budget,
                                std::uint64_t master_seed) {
    if (h < 1) throw std::invalid_argument("h_start_vns: h must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const Deadline deadline = Deadline::after(budget);

    SearchReport carry;
    std::optional<SearchReport> best;
    for (int r = 0; r < h; ++r) {
        Solution start = random_xy_greedy(inst, derive_seed(master_seed, r));
        SearchVariant aa{Family::Alternating};
        SearchReport rep =
            local_search(inst, std::move(start), aa, detail::remaining(deadline.at));
        carry.evaluations += rep.evaluations;
        carry.converged = carry.converged && rep.converged;
        if (!best || rep.value < best->value) best = std::move(rep);
        if (deadline.expired()) break;
    }
    SearchReport out = detail::aa_optimized_loop(inst, std::move(best->solution), best->value,
                                                 Rule::First, deadline, std::move(carry));
    out.elapsed_ms = detail::ms_since(t0);
    return out;
}

inline SearchFn vns_fn(VnsVariant variant) {
    return [variant](const BapInstance& inst, Solution start,
                     std::optional<std::chrono::milliseconds> budget) {
        return vns(inst, std::move(start), variant, budget);
    };
}

}  // namespace bap
