#include <catch2/catch_amalgamated.hpp>

#include <bap/bap.hpp>

#include <cmath>
#include <sstream>

#include "oracles.hpp"

using namespace bap;

namespace {

std::string to_text(const BapInstance& inst) {
    std::ostringstream out;
    write_instance(inst, out);
    return out.str();
}

}  // namespace

TEST_CASE("uniform generator: range, degenerate size, determinism") {
    SECTION("1x1 instance") {
        GenSpec spec{GenKind::Uniform, 1, 1, 3, 1, 0};
        BapInstance inst = gen_uniform(spec);
        REQUIRE(inst.q_data().size() == 1);
        REQUIRE(inst.q(0, 0, 0, 0) >= 0);
        REQUIRE(inst.q(0, 0, 0, 0) <= 1);
        REQUIRE(inst.c(0, 0) == 0);
        REQUIRE(inst.d(0, 0) == 0);
    }
    SECTION("entries lie in [0, mn]") {
        GenSpec spec{GenKind::Uniform, 4, 6, 8, 1, 0};
        BapInstance inst = gen_uniform(spec);
        for (long long v : inst.q_data()) {
            REQUIRE(v >= 0);
            REQUIRE(v <= 24);
        }
        REQUIRE(inst.name() == "uniform 4x6 0");
    }
    SECTION("same seed, same bytes") {
        GenSpec spec{GenKind::Uniform, 3, 5, 99, 1, 0};
        REQUIRE(to_text(gen_uniform(spec)) == to_text(gen_uniform(spec)));
    }
}

TEST_CASE("normal generator matches its distribution parameters") {
    GenSpec spec{GenKind::Normal, 20, 20, 5150, 1, 0};
    BapInstance inst = gen_normal(spec);
    const double mu = 200.0, sigma = 400.0 / 6.0;
    double sum = 0;
    for (long long v : inst.q_data()) sum += static_cast<double>(v);
    const double mean = sum / static_cast<double>(inst.q_data().size());
    REQUIRE(std::abs(mean - mu) < 0.05 * mu);

    double sq = 0;
    for (long long v : inst.q_data()) sq += (v - mean) * (v - mean);
    const double sd = std::sqrt(sq / static_cast<double>(inst.q_data().size()));
    REQUIRE(std::abs(sd - sigma) < 0.10 * sigma);

    REQUIRE(to_text(gen_normal(spec)) == to_text(gen_normal(spec)));
}

TEST_CASE("euclidean generator: Q is auditable from the stored points") {
    GenSpec spec{GenKind::Euclidean, 4, 5, 31337, 1, 0};
    BapInstance inst = gen_euclidean(spec);
    REQUIRE(inst.points().has_value());
    const PointSets& pts = *inst.points();
    const auto dist = [](const Point& p, const Point& q) {
        return std::hypot(p.x - q.x, p.y - q.y);
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 5; ++k)
                for (int l = 0; l < 5; ++l) {
                    const long long expect =
                        std::llround(dist(pts.a[i], pts.u[k]) * dist(pts.b[j], pts.v[l]));
                    REQUIRE(inst.q(i, j, k, l) == expect);
                    REQUIRE(inst.q(i, j, k, l) >= 0);
                }
    REQUIRE(to_text(gen_euclidean(spec)) == to_text(gen_euclidean(spec)));
}

TEST_CASE("coincident points produce the all-zero euclidean instance") {
    PointSets pts;
    pts.a.assign(2, Point{1.0, 1.0});
    pts.b.assign(2, Point{1.0, 1.0});
    pts.u.assign(3, Point{1.0, 1.0});
    pts.v.assign(3, Point{1.0, 1.0});
    // Q recomputed from coincident points must vanish entirely.
    std::vector<long long> q(36, 0);
    BapInstance inst(2, 3, q, std::vector<long long>(4, 0), std::vector<long long>(9, 0),
                     "euclidean 2x3 0", pts);
    for (long long v : inst.q_data()) REQUIRE(v == 0);
}

TEST_CASE("rank1 generator obeys its defining identity") {
    SECTION("all-ones factors give all-ones Q") {
        BapInstance inst = make_rank1(2, 3, std::vector<long long>(4, 1),
                                      std::vector<long long>(9, 1));
        for (long long v : inst.q_data()) REQUIRE(v == 1);
    }
    SECTION("entrywise product identity and non-negativity") {
        Rank1Spec spec{3, 4, {}, {}};
        Rank1Result pack = gen_rank1(spec, 71, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l)
                        REQUIRE(pack.instance.q(i, j, k, l) ==
                                pack.a[static_cast<std::size_t>(i) * 3 + j] *
                                    pack.b[static_cast<std::size_t>(k) * 4 + l]);
        REQUIRE(pack.instance.nonnegative_pure());
    }
    SECTION("negative factors are rejected") {
        REQUIRE_THROWS_AS(make_rank1(1, 1, {-1}, {1}), std::invalid_argument);
    }
}

TEST_CASE("fixtures reproduce their defining values") {
    BapInstance gp = fixture_greedy_pathology();
    REQUIRE(gp.m() == 2);
    REQUIRE(gp.n() == 3);
    REQUIRE(average_value(gp) == Rational(2007, 6));

    BapInstance trap = fixture_exchange_trap();
    REQUIRE(evaluate(trap, Solution::identity(2, 2)) == -4);
    REQUIRE(brute_force_solve(trap).value == -100);

    BapInstance hp = fixture_hp_trap(4, 5, 2);
    // Identity collects the -1 of every (i,k) pair.
    REQUIRE(evaluate(hp, Solution::identity(4, 5)) == -20);
    REQUIRE_THROWS_AS(fixture_hp_trap(3, 3, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(fixture("nope"), std::invalid_argument);
    REQUIRE(fixture("exchange_trap").same_costs(trap));
}

TEST_CASE("instance files round-trip") {
    GenSpec spec{GenKind::Euclidean, 3, 4, 4242, 1, 0};
    BapInstance inst = gen_euclidean(spec);
    std::stringstream buf;
    write_instance(inst, buf);
    BapInstance back = read_instance(buf, "fallback");
    REQUIRE(back.same_costs(inst));
    REQUIRE(back.name() == inst.name());
    REQUIRE(back.points().has_value());
    REQUIRE(to_text(back) == to_text(inst));
}

TEST_CASE("hand-written 1x1 file parses to the stated costs") {
    std::stringstream in(
        "# a comment\n"
        "BAP 1 1\n"
        "C\n"
        "5\n"
        "\n"
        "D\n"
        "-2\n"
        "Q\n"
        "9\n");
    BapInstance inst = read_instance(in, "tiny");
    REQUIRE(inst.m() == 1);
    REQUIRE(inst.n() == 1);
    REQUIRE(inst.c(0, 0) == 5);
    REQUIRE(inst.d(0, 0) == -2);
    REQUIRE(inst.q(0, 0, 0, 0) == 9);
    REQUIRE(inst.name() == "tiny");
}

TEST_CASE("malformed instance files raise ParseError with a line number") {
    SECTION("truncated file") {
        std::stringstream in("BAP 2 2\nC\n0 0\n");
        try {
            read_instance(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            REQUIRE(e.line() >= 3);
        }
    }
    SECTION("non-integer token") {
        std::stringstream in("BAP 1 1\nC\nx\nD\n0\nQ\n0\n");
        REQUIRE_THROWS_AS(read_instance(in), ParseError);
    }
    SECTION("bad header") {
        std::stringstream in("QAP 2 2\n");
        REQUIRE_THROWS_AS(read_instance(in), ParseError);
    }
    SECTION("m > n rejected") {
        std::stringstream in("BAP 3 2\nC\n");
        REQUIRE_THROWS_AS(read_instance(in), ParseError);
    }
    SECTION("oversized dimensions rejected before allocation") {
        std::stringstream in("BAP 1000 1000\nC\n");
        REQUIRE_THROWS_AS(read_instance(in), ParseError);
    }
    SECTION("token overflow") {
        std::stringstream in("BAP 1 1\nC\n99999999999999999999999999\nD\n0\nQ\n0\n");
        REQUIRE_THROWS_AS(read_instance(in), ParseError);
    }
}

TEST_CASE("solution files round-trip and validate") {
    Solution s = random_solution(4, 6, 12);
    std::stringstream buf;
    write_solution(s, buf);
    Solution back = read_solution(buf, 4, 6);
    REQUIRE(back == s);

    std::stringstream bad("0 0 1 2\n0 1 2 3 4 5\n");
    REQUIRE_THROWS_AS(read_solution(bad, 4, 6), ParseError);
}
