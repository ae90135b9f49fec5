#include <catch2/catch_amalgamated.hpp>

#include <bap/bap.hpp>

#include "oracles.hpp"

using namespace bap;

namespace {

BapInstance seeded(int m, int n, std::uint64_t seed) {
    GenSpec spec{GenKind::Normal, m, n, seed, 1, 0};
    return gen_normal(spec);
}

void require_caches_match_rebuild(const BapInstance& inst, const Solution& s,
                                  const DeltaCaches& caches) {
    DeltaCaches fresh = build_caches(inst, s);
    REQUIRE(caches.e == fresh.e);
    REQUIRE(caches.g == fresh.g);
}

}  // namespace

TEST_CASE("caches on the zero instance are all zero") {
    BapInstance inst(2, 3, std::vector<long long>(36, 0), std::vector<long long>(4, 0),
                     std::vector<long long>(9, 0));
    DeltaCaches caches = build_caches(inst, Solution::identity(2, 3));
    for (long long v : caches.e) REQUIRE(v == 0);
    for (long long v : caches.g) REQUIRE(v == 0);
}

TEST_CASE("cache diagonals reproduce the objective") {
    BapInstance inst = seeded(4, 5, 3);
    Solution s = random_solution(4, 5, 9);
    DeltaCaches caches = build_caches(inst, s);

    long long e_diag = 0, d_part = 0;
    for (int i = 0; i < 4; ++i) e_diag += caches.e[static_cast<std::size_t>(i) * 4 + s.pi(i)];
    for (int k = 0; k < 5; ++k) d_part += inst.d(k, s.phi(k));
    REQUIRE(e_diag + d_part == evaluate(inst, s));

    long long g_diag = 0, c_part = 0;
    for (int k = 0; k < 5; ++k) g_diag += caches.g[static_cast<std::size_t>(k) * 5 + s.phi(k)];
    for (int i = 0; i < 4; ++i) c_part += inst.c(i, s.pi(i));
    REQUIRE(g_diag + c_part == evaluate(inst, s));
}

TEST_CASE("cache entries match naive conditional sums") {
    BapInstance inst = seeded(4, 4, 17);
    Solution s = random_solution(4, 4, 2);
    DeltaCaches caches = build_caches(inst, s);
    Rng rng = make_rng(5);
    for (int t = 0; t < 10; ++t) {
        const int k = static_cast<int>(uniform_below(rng, 4));
        const int l = static_cast<int>(uniform_below(rng, 4));
        REQUIRE(caches.g[static_cast<std::size_t>(k) * 4 + l] ==
                oracle::naive_g_entry(inst, s, k, l));
        REQUIRE(caches.e[static_cast<std::size_t>(k) * 4 + l] ==
                oracle::naive_e_entry(inst, s, k, l));
    }
}

TEST_CASE("swap deltas equal full re-evaluation on every pair") {
    BapInstance inst = seeded(4, 4, 23);
    Solution s = random_solution(4, 4, 4);
    DeltaCaches caches = build_caches(inst, s);
    const long long base = evaluate(inst, s);
    for (int i1 = 0; i1 < 4; ++i1)
        for (int i2 = i1 + 1; i2 < 4; ++i2) {
            Solution t = s;
            t.swap_x(i1, i2);
            REQUIRE(delta_x_swap(caches, s, i1, i2) == evaluate(inst, t) - base);
        }
    for (int k1 = 0; k1 < 4; ++k1)
        for (int k2 = k1 + 1; k2 < 4; ++k2) {
            Solution t = s;
            t.swap_y(k1, k2);
            REQUIRE(delta_y_swap(caches, s, k1, k2) == evaluate(inst, t) - base);
        }
}

TEST_CASE("swap deltas are zero on the zero instance") {
    BapInstance inst(3, 3, std::vector<long long>(81, 0), std::vector<long long>(9, 0),
                     std::vector<long long>(9, 0));
    Solution s = Solution::identity(3, 3);
    DeltaCaches caches = build_caches(inst, s);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            REQUIRE(delta_x_swap(caches, s, a, b) == 0);
            REQUIRE(delta_y_swap(caches, s, a, b) == 0);
        }
}

TEST_CASE("deltas reject equal indices and stale caches") {
    BapInstance inst = seeded(3, 3, 1);
    Solution s = Solution::identity(3, 3);
    DeltaCaches caches = build_caches(inst, s);
    REQUIRE_THROWS_AS(delta_x_swap(caches, s, 1, 1), std::invalid_argument);
    s.swap_x(0, 1);  // caches now stale
    REQUIRE_THROWS_AS(delta_x_swap(caches, s, 0, 1), std::logic_error);
    REQUIRE_THROWS_AS(apply_y_swap(inst, caches, s, 0, 1), std::logic_error);
}

TEST_CASE("applying a swap twice restores solution and caches exactly") {
    BapInstance inst = seeded(4, 5, 31);
    Solution s = random_solution(4, 5, 8);
    DeltaCaches caches = build_caches(inst, s);
    const Solution before = s;
    const DeltaCaches snapshot = caches;

    const long long d1 = delta_x_swap(caches, s, 1, 3);
    apply_x_swap(inst, caches, s, 1, 3);
    const long long d2 = delta_x_swap(caches, s, 1, 3);
    REQUIRE(d2 == -d1);
    apply_x_swap(inst, caches, s, 1, 3);
    REQUIRE(s == before);
    REQUIRE(caches.e == snapshot.e);
    REQUIRE(caches.g == snapshot.g);
}

TEST_CASE("incremental updates equal rebuilds after every move") {
    BapInstance inst = seeded(5, 5, 41);
    Solution s = random_solution(5, 5, 1);
    DeltaCaches caches = build_caches(inst, s);
    require_caches_match_rebuild(inst, s, caches);

    Rng rng = make_rng(99);
    long long value = evaluate(inst, s);
    for (int move = 0; move < 100; ++move) {
        const bool xside = uniform_below(rng, 2) == 0;
        int a = static_cast<int>(uniform_below(rng, 5));
        int b = static_cast<int>(uniform_below(rng, 5));
        if (a == b) b = (b + 1) % 5;
        const long long delta = xside ? delta_x_swap(caches, s, a, b)
                                      : delta_y_swap(caches, s, a, b);
        if (xside)
            apply_x_swap(inst, caches, s, a, b);
        else
            apply_y_swap(inst, caches, s, a, b);
        value += delta;
        REQUIRE(value == evaluate(inst, s));
        require_caches_match_rebuild(inst, s, caches);
    }
}

TEST_CASE("caches on the zero instance stay zero through moves") {
    BapInstance inst(3, 3, std::vector<long long>(81, 0), std::vector<long long>(9, 0),
                     std::vector<long long>(9, 0));
    Solution s = Solution::identity(3, 3);
    DeltaCaches caches = build_caches(inst, s);
    apply_x_swap(inst, caches, s, 0, 2);
    apply_y_swap(inst, caches, s, 1, 2);
    for (long long v : caches.e) REQUIRE(v == 0);
    for (long long v : caches.g) REQUIRE(v == 0);
}

TEST_CASE("dual swap delta is exact") {
    SECTION("zero instance") {
        BapInstance inst(3, 3, std::vector<long long>(81, 0), std::vector<long long>(9, 0),
                         std::vector<long long>(9, 0));
        Solution s = Solution::identity(3, 3);
        DeltaCaches caches = build_caches(inst, s);
        REQUIRE(dual_swap_delta(inst, caches, s, 0, 1, 0, 2) == 0);
    }
    SECTION("trap instance escape move") {
        BapInstance trap = fixture_exchange_trap();
        Solution s = Solution::identity(2, 2);
        DeltaCaches caches = build_caches(trap, s);
        REQUIRE(dual_swap_delta(trap, caches, s, 0, 1, 0, 1) == -96);
    }
    SECTION("matches evaluate on all pair combinations") {
        BapInstance inst = seeded(4, 4, 57);
        Solution s = random_solution(4, 4, 3);
        DeltaCaches caches = build_caches(inst, s);
        const long long base = evaluate(inst, s);
        for (int i1 = 0; i1 < 4; ++i1)
            for (int i2 = i1 + 1; i2 < 4; ++i2)
                for (int k1 = 0; k1 < 4; ++k1)
                    for (int k2 = k1 + 1; k2 < 4; ++k2) {
                        Solution t = s;
                        t.swap_x(i1, i2);
                        t.swap_y(k1, k2);
                        REQUIRE(dual_swap_delta(inst, caches, s, i1, i2, k1, k2) ==
                                evaluate(inst, t) - base);
                    }
    }
}
