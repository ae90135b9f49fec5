#include <catch2/catch_amalgamated.hpp>

#include <bap/bap.hpp>

#include "oracles.hpp"

using namespace bap;

namespace {

BapInstance zero_instance(int m, int n) {
    return BapInstance(m, n, std::vector<long long>(static_cast<std::size_t>(m) * m * n * n, 0),
                       std::vector<long long>(static_cast<std::size_t>(m) * m, 0),
                       std::vector<long long>(static_cast<std::size_t>(n) * n, 0), "zero");
}

}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
    REQUIRE(Rational(6, 4) == Rational(3, 2));
    REQUIRE(Rational(-6, 4).str() == "-3/2");
    REQUIRE(Rational(2007, 6).str() == "669/2");
    REQUIRE(Rational(7).str() == "7");
    REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    REQUIRE(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    REQUIRE(Rational(5, 3) > Rational(3, 2));
    REQUIRE(Rational(-1, 2) < Rational(0));
    REQUIRE_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("evaluate on the zero instance is 0 for any solution") {
    BapInstance inst = zero_instance(3, 4);
    for (std::uint64_t seed : {1u, 2u, 3u})
        REQUIRE(evaluate(inst, random_solution(3, 4, seed)) == 0);
}

TEST_CASE("evaluate matches the trap-instance value from its construction") {
    BapInstance trap = fixture_exchange_trap();
    REQUIRE(evaluate(trap, Solution::identity(2, 2)) == -4);
}

TEST_CASE("evaluate equals the naive quadruple-loop summation") {
    GenSpec spec{GenKind::Uniform, 3, 3, 1234, 1, 0};
    BapInstance inst = gen_uniform(spec);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Solution s = random_solution(3, 3, seed);
        REQUIRE(evaluate(inst, s) == oracle::naive_evaluate(inst, s));
    }
}

TEST_CASE("evaluate rejects mismatched dimensions") {
    BapInstance inst = zero_instance(2, 3);
    REQUIRE_THROWS_AS(evaluate(inst, Solution::identity(3, 3)), std::invalid_argument);
}

TEST_CASE("instance construction validates shapes and the cost-mass guard") {
    REQUIRE_THROWS_AS(BapInstance(2, 1, {}, {}, {}), std::invalid_argument);  // m > n
    REQUIRE_THROWS_AS(BapInstance(1, 1, {1, 2}, {0}, {0}), std::invalid_argument);
    const long long big = kCostMassLimit;
    REQUIRE_THROWS_AS(BapInstance(1, 1, {big}, {big}, {0}), std::overflow_error);
    REQUIRE_NOTHROW(BapInstance(1, 1, {big}, {0}, {0}));
}

TEST_CASE("average_value: all-ones Q on a 2x3 instance averages to 6") {
    const int m = 2, n = 3;
    BapInstance inst(m, n, std::vector<long long>(static_cast<std::size_t>(m) * m * n * n, 1),
                     std::vector<long long>(m * m, 0), std::vector<long long>(n * n, 0));
    REQUIRE(average_value(inst) == Rational(6));
}

TEST_CASE("average_value of the zero instance is 0") {
    REQUIRE(average_value(zero_instance(2, 2)) == Rational(0));
}

TEST_CASE("average_value equals the exhaustive mean over all 36 solutions") {
    GenSpec spec{GenKind::Normal, 3, 3, 77, 1, 0};
    BapInstance inst = gen_normal(spec);
    REQUIRE(average_value(inst) == oracle::enumeration_mean(inst));
}

TEST_CASE("solution validates permutations and tracks versions") {
    REQUIRE_THROWS_AS(Solution({0, 0}, {0, 1}), std::invalid_argument);
    Solution s = Solution::identity(3, 3);
    const auto v0 = s.version();
    s.swap_x(0, 2);
    REQUIRE(s.version() == v0 + 1);
    REQUIRE(s.pi() == std::vector<int>{2, 1, 0});
    REQUIRE_THROWS_AS(s.set_pi({0, 1}), std::invalid_argument);
}

TEST_CASE("shift_class_scan returns the class minimum") {
    GenSpec spec{GenKind::Uniform, 3, 3, 5, 1, 0};
    BapInstance inst = gen_uniform(spec);
    Solution s = random_solution(3, 3, 11);
    SearchReport rep = shift_class_scan(inst, s);

    long long best = evaluate(inst, s);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::vector<int> pi(3), phi(3);
            for (int i = 0; i < 3; ++i) pi[i] = (s.pi(i) + a) % 3;
            for (int k = 0; k < 3; ++k) phi[k] = (s.phi(k) + b) % 3;
            best = std::min(best, evaluate(inst, Solution(pi, phi)));
        }
    REQUIRE(rep.value == best);
    REQUIRE(rep.value == evaluate(inst, rep.solution));
    REQUIRE(rep.evaluations == 9);
}

TEST_CASE("shift_class_scan never exceeds the instance average") {
    for (int t = 0; t < 100; ++t) {
        GenSpec spec{GenKind::Uniform, 6, 6, 900 + static_cast<std::uint64_t>(t), 1, 0};
        BapInstance inst = gen_uniform(spec);
        SearchReport rep = shift_class_scan(inst, random_solution(6, 6, t));
        REQUIRE(Rational(rep.value) <= average_value(inst));
    }
}

TEST_CASE("shift_class_scan on the zero instance stays at 0") {
    REQUIRE(shift_class_scan(zero_instance(2, 3), Solution::identity(2, 3)).value == 0);
}

TEST_CASE("brute_force_solve finds the enumeration optimum") {
    REQUIRE(brute_force_solve(zero_instance(2, 2)).value == 0);
    REQUIRE(brute_force_solve(fixture_exchange_trap()).value == -100);

    GenSpec spec{GenKind::Uniform, 3, 3, 21, 1, 0};
    BapInstance inst = gen_uniform(spec);
    SearchReport rep = brute_force_solve(inst);
    REQUIRE(rep.value == oracle::enumeration_min(inst));
    REQUIRE(rep.value == evaluate(inst, rep.solution));
    REQUIRE(rep.evaluations == 36);
}

TEST_CASE("brute_force_solve refuses oversized instances") {
    REQUIRE_THROWS_AS(brute_force_solve(zero_instance(8, 12)), CapacityError);
}
