#include <catch2/catch_amalgamated.hpp>

#include "limitwp/curvemodel.hpp"

using namespace limitwp;
using namespace limitwp::curvemodel;

static Poly P(std::initializer_list<long> coef) {
    std::vector<Rat> v;
    for (long c : coef) v.emplace_back(c);
    return Poly(std::move(v));
}

// y^2 = x^5 + 1, genus 2, conjugate pair of marked points over x = 0
static ComponentModel genus2_conjugate() {
    return ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}),
                                         {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}});
}

// y^2 = (x+1)(x^6+1), genus 3, marked points (0,1) and (1,2)
static ComponentModel genus3_generic() {
    return ComponentModel::hyperelliptic(P({1, 1, 0, 0, 0, 0, 1, 1}),
                                         {{Rat(0), Rat(1)}, {Rat(1), Rat(2)}});
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(ComponentModel::hyperelliptic(P({1, 0, 1}), {}), ModelError);  // even degree
    CHECK_THROWS_AS(ComponentModel::hyperelliptic(P({0, 0, 1, 2}), {}), ModelError);  // not monic
    CHECK_THROWS_AS(ComponentModel::hyperelliptic(P({0, 0, 0, 1}), {}), ModelError);  // x^3 not sqfree
    // marked point on the branch locus
    CHECK_THROWS_AS(
        ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}), {{Rat(-1), Rat(0)}}), ModelError);
    // marked point off the curve
    CHECK_THROWS_AS(
        ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}), {{Rat(0), Rat(2)}}), ModelError);
    CHECK_THROWS_AS(ComponentModel::rational_line({Rat(1), Rat(1)}), ModelError);
    CHECK(genus2_conjugate().genus() == 2);
    CHECK(genus3_generic().genus() == 3);
}

TEST_CASE("expansion of y at (0,1)") {
    auto m = genus2_conjugate();
    Series s = expand_local(m, fe_y(), LocalPoint::finite(Rat(0), Rat(1)), 11);
    CHECK(s.coeff(0) == 1);
    CHECK(s.coeff(5) == Rat(1, 2));
    CHECK(s.coeff(10) == Rat(-1, 8));
    Series x = expand_local(m, fe_x(), LocalPoint::finite(Rat(0), Rat(1)), 11);
    CHECK(x.coeff(1) == 1);
    CHECK(x.coeff(0) == 0);
    Series one = expand_local(m, fe_const(Rat(1)), LocalPoint::finite(Rat(0), Rat(1)), 5);
    CHECK(one.coeff(0) == 1);
}

TEST_CASE("expansion at infinity") {
    auto m = genus2_conjugate();
    Series x = expand_local(m, fe_x(), LocalPoint::infinity(), 11);
    CHECK(x.valuation() == -2);
    Series y = expand_local(m, fe_y(), LocalPoint::infinity(), 11);
    CHECK(y.valuation() == -5);
    CHECK(y.coeff(-5) == 1);
    // y^2 - x^5 = 1
    Series diff = y * y - x * x * x * x * x;
    CHECK(diff.coeff(0) == 1);
    CHECK(diff.coeff(-1) == 0);
    auto r = ComponentModel::rational_line({Rat(0)});
    Series xr = expand_local(r, fe_x(), LocalPoint::infinity(), 3);
    CHECK(xr.valuation() == -1);
}

TEST_CASE("expansion refuses bad points") {
    auto m = genus2_conjugate();
    CHECK_THROWS_AS(expand_local(m, fe_x(), LocalPoint::finite(Rat(-1), Rat(0)), 5), ModelError);
    CHECK_THROWS_AS(expand_local(m, fe_x(), LocalPoint::finite(Rat(0), Rat(3)), 5), ModelError);
}

TEST_CASE("expansion is multiplicative and respects d/dx") {
    auto m = genus3_generic();
    FunctionElement a = fe_add(fe_y(), fe_x());
    FunctionElement b = fe_sub(fe_mul(m, fe_x(), fe_x()), fe_const(Rat(3)));
    LocalPoint pt = LocalPoint::finite(Rat(1), Rat(2));
    Series sa = expand_local(m, a, pt, 8);
    Series sb = expand_local(m, b, pt, 8);
    Series sab = expand_local(m, fe_mul(m, a, b), pt, 8);
    for (int k = 0; k < 8; ++k) CHECK(sab.coeff(k) == (sa * sb).coeff(k));
    // t = x - 1 at this point, so d/dx agrees with d/dt
    Series da = expand_local(m, fe_derivative(m, a), pt, 7);
    for (int k = 0; k < 7; ++k) CHECK(da.coeff(k) == sa.derivative().coeff(k));
}

TEST_CASE("branch point expansion in the y uniformizer") {
    auto m = genus3_generic();  // f = (x+1)(x^6+1), branch point at x = -1
    Series y = expand_at_branch_point(m, fe_y(), Rat(-1), 6);
    CHECK(y.valuation() == 1);
    CHECK(y.coeff(1) == 1);
    for (int k : {2, 3, 4, 5}) CHECK(y.coeff(k) == 0);
    FunctionElement xp1 = fe_add(fe_x(), fe_const(Rat(1)));
    Series s = expand_at_branch_point(m, xp1, Rat(-1), 8);
    CHECK(s.valuation() == 2);
    // (x+1) * (x^6+1) = y^2 exactly
    Series u = expand_at_branch_point(m, fe_add(fe_mul(m, fe_mul(m, fe_x(), fe_x()),
                                                       fe_mul(m, fe_mul(m, fe_x(), fe_x()),
                                                              fe_mul(m, fe_x(), fe_x()))),
                                                fe_const(Rat(1))),
                                      Rat(-1), 8);
    Series prod = s * u;
    CHECK(prod.coeff(2) == 1);
    for (int k : {0, 1, 3, 4, 5}) CHECK(prod.coeff(k) == 0);
}

TEST_CASE("canonical sections of a genus-2 model") {
    auto m = genus2_conjugate();
    SectionSpace s = rr_space(m, PlaceDivisor{});
    REQUIRE(s.dim() == 2);
    // basis spans {1, x} (as multiples of dx/y)
    for (const auto& e : s.basis) {
        CHECK(e.q.is_zero());
        CHECK(e.d.degree() == 0);
        CHECK(e.p.degree() <= 1);
    }
    CHECK(s.basis[0].p * s.basis[1].d != s.basis[1].p * s.basis[0].d);
}

TEST_CASE("degree-1 sheaf on a rational model with three nodes") {
    auto m = ComponentModel::rational_line({Rat(0), Rat(1), Rat(-2)});
    CHECK(h0(m, delta_divisor(m)) == 2);
    CHECK(h0(m, PlaceDivisor{}) == 0);  // h0(omega) = 0 on P^1
}

TEST_CASE("conjugate node pair sees the hyperelliptic pencil") {
    auto m = genus2_conjugate();
    CHECK(h0(m, (-1) * delta_divisor(m)) == 1);
    CHECK(h0(m, (-2) * delta_divisor(m)) == 0);
}

static long lcg_next(uint64_t& state, long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((state >> 33) % static_cast<uint64_t>(hi - lo + 1));
}

TEST_CASE("riemann-roch identity on random twists") {
    std::vector<ComponentModel> models = {
        ComponentModel::rational_line({Rat(0), Rat(1), Rat(-2)}),
        genus2_conjugate(),
        genus3_generic(),
    };
    uint64_t state = 20260823;
    for (const auto& m : models) {
        long gamma = m.genus();
        for (int trial = 0; trial < 25; ++trial) {
            PlaceDivisor E;
            for (const auto& Pm : m.marked()) E.add_point(Pm, lcg_next(state, -3, 3));
            E.at_infinity = lcg_next(state, -3, 6);
            long lhs_deg = 2 * gamma - 2 + E.degree();
            PlaceDivisor dual = (-1) * E + (-1) * reference_canonical(m);
            long lhs = h0(m, E) - h0(m, dual);
            CHECK(lhs == lhs_deg - gamma + 1);
        }
    }
}

TEST_CASE("basis elements satisfy the defining order bounds") {
    auto m = genus3_generic();
    PlaceDivisor E;
    E.add_point(m.marked()[0], 2);
    E.add_point(m.marked()[1], -1);
    E.at_infinity = 1;
    SectionSpace s = rr_space(m, E);
    REQUIRE(s.dim() > 0);
    for (const auto& e : s.basis) {
        CHECK_FALSE(e.is_zero());
        for (const auto& [Pm, mult] : E.points) {
            Series loc = expand_local(m, e, LocalPoint::finite(Pm.a, Pm.b), 8);
            if (!loc.known_zero()) CHECK(loc.valuation() >= -mult);
        }
        Series inf = expand_local(m, e, LocalPoint::infinity(), 2);
        long bound = -(2 * m.genus() - 2 + E.at_infinity);
        if (!inf.known_zero()) CHECK(inf.valuation() >= bound);
    }
}

TEST_CASE("unsupported twists are rejected") {
    auto m = genus2_conjugate();
    PlaceDivisor bad;
    bad.add_irr(P({1, 0, 1}), false, 1);
    CHECK_THROWS_AS(rr_space(m, bad), UnsupportedDivisor);
    PlaceDivisor off;
    off.add_point({Rat(3), Rat(5)}, 1);  // 25 != 3^5+1
    CHECK_THROWS_AS(rr_space(m, off), UnsupportedDivisor);
}

TEST_CASE("condition chain on a generic genus-3 pair configuration") {
    auto pd = invariants::compute_profile(2, 3, 2);
    auto m = genus3_generic();  // plays C_2, checked with i = 1
    auto c1 = check_condition_1(m, 1, pd);
    CHECK(c1.ok);
    auto c3 = check_condition_3(m, 1, pd);
    CHECK(c3.ok);
    auto c5 = check_condition_5(m, 1, pd);
    CHECK(c5.ok);
}

TEST_CASE("conjugate pair breaks condition 1 at n = 1") {
    auto pd = invariants::compute_profile(2, 2, 2);
    auto m = genus2_conjugate();
    auto c1 = check_condition_1(m, 1, pd);
    REQUIRE_FALSE(c1.ok);
    CHECK(c1.failing_n == 1);
    CHECK(c1.expected == 0);
    CHECK(c1.found == 1);
    // the implication chain forces (3) and (5) to fail too
    CHECK_FALSE(check_condition_3(m, 1, pd).ok);
    auto c5 = check_condition_5(m, 1, pd);
    REQUIRE_FALSE(c5.ok);
    // the witness is the conjugate pair itself
    REQUIRE(c5.witness.has_value());
}

TEST_CASE("conjugation symmetry of h0") {
    auto m = genus3_generic();
    for (long m0 = 0; m0 <= 2; ++m0)
        for (long m1 = 0; m1 <= 2; ++m1) {
            PlaceDivisor D, Dc;
            D.add_point(m.marked()[0], -m0);
            D.add_point(m.marked()[1], -m1);
            Dc.add_point({m.marked()[0].a, -m.marked()[0].b}, -m0);
            Dc.add_point({m.marked()[1].a, -m.marked()[1].b}, -m1);
            CHECK(h0(m, D) == h0(m, Dc));
        }
}
