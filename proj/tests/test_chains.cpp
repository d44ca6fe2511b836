#include <catch2/catch_amalgamated.hpp>

#include "limitwp/chains.hpp"

using namespace limitwp;
using namespace limitwp::chains;

TEST_CASE("chain construction and genus bookkeeping") {
    invariants::GenusProfile p{2, 3, 2};  // g = 6

    SECTION("trivial multiplicities reproduce the original curve") {
        ChainModel c = build_chain(p, {1, 1});
        CHECK(c.size() == 2);
        CHECK(c.edges.size() == 2);
        CHECK(c.arithmetic_genus() == 6);
    }
    SECTION("one inserted rational curve") {
        ChainModel c = build_chain(p, {2, 1});
        CHECK(c.size() == 3);
        CHECK(c.edges.size() == 3);
        CHECK(c.arithmetic_genus() == 6);
        CHECK(c.comps[2].node == 0);
        CHECK(c.comps[2].genus == 0);
    }
    SECTION("longer chains on both nodes") {
        ChainModel c = build_chain(p, {3, 3});
        CHECK(c.size() == 6);
        CHECK(c.arithmetic_genus() == 6);
        // every inserted curve meets exactly two others
        for (long k = 2; k < c.size(); ++k) CHECK(c.degree_at(k) == 2);
    }
    SECTION("genus preserved across a grid of multiplicities") {
        invariants::GenusProfile q{1, 2, 3};
        for (long a = 1; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b)
                for (long cc = 1; cc <= 3; ++cc) {
                    ChainModel c = build_chain(q, {a, b, cc});
                    CHECK(c.size() == 2 + (a - 1) + (b - 1) + (cc - 1));
                    CHECK(c.arithmetic_genus() == q.genus());
                }
    }
    CHECK_THROWS_AS(build_chain(p, {1, 0}), ChainError);
    CHECK_THROWS_AS(build_chain(p, {1}), ChainError);
}

TEST_CASE("twist-degree calculus") {
    invariants::GenusProfile p{2, 3, 2};
    ChainModel c = build_chain(p, {2, 1});

    SECTION("zero weights give the dualizing degrees") {
        auto deg = twist_degrees(c, {0, 0, 0});
        CHECK(deg == std::vector<long>{2 * 2 - 2 + 2, 2 * 3 - 2 + 2, 0});
        long total = 0;
        for (long d : deg) total += d;
        CHECK(total == 2 * p.genus() - 2);
    }
    SECTION("degree conservation and constant-shift invariance") {
        for (long a : {0L, 1L, 3L})
            for (long b : {0L, 2L, 5L})
                for (long e : {0L, 1L, 4L}) {
                    auto deg = twist_degrees(c, {a, b, e});
                    long total = 0;
                    for (long d : deg) total += d;
                    CHECK(total == 2 * p.genus() - 2);
                    CHECK(deg == twist_degrees(c, {a + 7, b + 7, e + 7}));
                }
    }
    SECTION("an indicator weight moves degree across the edges") {
        ChainModel plain = build_chain(p, {1, 1});
        auto deg = twist_degrees(plain, {1, 0});
        CHECK(deg[0] == (2 * 2 - 2 + 2) - 2);  // both edges leave C1
        CHECK(deg[1] == (2 * 3 - 2 + 2) + 2);
    }
}

TEST_CASE("weight-tuple constraints") {
    invariants::GenusProfile p{2, 3, 2};
    ChainModel c = build_chain(p, {2, 1});

    CHECK(validate_lambda_constraints(c, 1, {0, 0, 0}).ok);
    CHECK(validate_lambda_constraints(c, 1, {0, 3, 3}).ok);  // bound g2 = 3 near C1
    CHECK_FALSE(validate_lambda_constraints(c, 1, {1, 0, 0}).ok);   // nonzero on C1
    CHECK_FALSE(validate_lambda_constraints(c, 1, {0, -1, 0}).ok);  // negative
    CHECK_FALSE(validate_lambda_constraints(c, 1, {0, 4, 3}).ok);   // C2 meets C1 via node 2
    // the inserted curve on node 1 does not meet C2's bound for side 2
    CHECK(validate_lambda_constraints(c, 2, {2, 0, 1}).ok);
    CHECK_FALSE(validate_lambda_constraints(c, 2, {3, 0, 1}).ok);  // bound g1 = 2 near C2
}

TEST_CASE("multiplicity class normalization") {
    CHECK(normalize_mu({Rat(2), Rat(4)}) == std::vector<long>{1, 2});
    CHECK(normalize_mu({Rat(1, 2), Rat(1, 3)}) == std::vector<long>{3, 2});
    CHECK(normalize_mu({Rat(5), Rat(5), Rat(5)}) == std::vector<long>{1, 1, 1});
    // idempotence and scale invariance
    for (long t : {2L, 3L, 7L}) {
        std::vector<Rat> mu{Rat(3 * t), Rat(4 * t), Rat(6 * t)};
        auto n = normalize_mu(mu);
        CHECK(n == std::vector<long>{3, 4, 6});
        std::vector<Rat> again(n.begin(), n.end());
        CHECK(normalize_mu(again) == n);
    }
    CHECK_THROWS_AS(normalize_mu({Rat(1), Rat(0)}), ChainError);
    CHECK_THROWS_AS(normalize_mu(std::vector<Rat>{}), ChainError);
}

TEST_CASE("necessary-condition weight enumeration") {
    auto pd = invariants::compute_profile(2, 3, 2);
    invariants::GenusProfile p = pd.profile;

    SECTION("trivial chain contains the reference weight tuple") {
        ChainModel c = build_chain(p, {1, 1});
        auto res = feasible_lambda_search(c, 1, 1000);
        REQUIRE(res.complete);
        TwistTuple expected{0, pd.twist.ell_of(1)};  // weight on C2 equals ell_1
        bool found = false;
        for (const auto& t : res.tuples) found = found || t == expected;
        CHECK(found);
        // the degree on C1 for that tuple matches the reference sheaf degree
        CHECK(twist_degrees(c, expected)[0] ==
              2 * p.g1 - 2 + (1 + pd.twist.ell_of(1)) * p.delta);
        for (const auto& t : res.tuples) CHECK(t[0] == 0);
    }
    SECTION("a nontrivial chain yields a nonempty finite list") {
        ChainModel c = build_chain(p, {2, 1});
        auto res = feasible_lambda_search(c, 1, 100000);
        REQUIRE(res.complete);
        CHECK(!res.tuples.empty());
        for (const auto& t : res.tuples) {
            CHECK(t[0] == 0);
            CHECK(validate_lambda_constraints(c, 1, t).ok);
        }
    }
    SECTION("budget exhaustion is reported") {
        ChainModel c = build_chain(p, {3, 3});
        auto res = feasible_lambda_search(c, 1, 5);
        CHECK_FALSE(res.complete);
        CHECK(res.examined >= 5);
    }
}

TEST_CASE("component count of the two-node family") {
    invariants::GenusProfile p{2, 3, 2};
    CHECK(component_count_two_nodes(p) == 6 - std::gcd(3L, 4L));  // 5
    // the count is 1 exactly in the irreducible case
    for (long g1 = 1; g1 <= 6; ++g1)
        for (long g2 = 1; g2 <= 6; ++g2) {
            invariants::GenusProfile q{g1, g2, 2};
            CHECK((component_count_two_nodes(q) == 1) == irreducible_family(q));
        }
    CHECK_THROWS_AS(component_count_two_nodes({2, 3, 3}), ChainError);
    CHECK_THROWS_AS(component_count_two_nodes({0, 3, 2}), ChainError);
}
