#include <catch2/catch_amalgamated.hpp>

#include "limitwp/modelgen.hpp"
#include "limitwp/ramification.hpp"

using namespace limitwp;
using namespace limitwp::ramification;
namespace cm = limitwp::curvemodel;
namespace mg = limitwp::modelgen;
namespace ng = limitwp::nodalglue;

static Poly P(std::initializer_list<long> coef) {
    std::vector<Rat> v;
    for (long c : coef) v.emplace_back(c);
    return Poly(std::move(v));
}

static long mult_at(const PlaceDivisor& d, const cm::MarkedPoint& pt) {
    return ng::detail::point_mult(d, pt);
}

static long irr_mult(const PlaceDivisor& d, const Poly& h, bool ramified) {
    for (const auto& e : d.irr)
        if (e.ramified == ramified && e.minpoly == h) return e.mult;
    return 0;
}

TEST_CASE("divisors of basic function elements") {
    // y^2 = x^5 + 1 = (x+1)(x^4-x^3+x^2-x+1), genus 2
    auto m = cm::ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}), {});
    Poly quartic = P({1, -1, 1, -1, 1});

    PlaceDivisor dy = divisor_of(m, cm::fe_y());
    CHECK(dy.degree() == 0);
    CHECK(mult_at(dy, {Rat(-1), Rat(0)}) == 1);
    CHECK(irr_mult(dy, quartic, true) == 1);
    CHECK(dy.at_infinity == -5);

    PlaceDivisor dx = divisor_of(m, cm::fe_x());
    CHECK(dx.degree() == 0);
    CHECK(mult_at(dx, {Rat(0), Rat(1)}) == 1);
    CHECK(mult_at(dx, {Rat(0), Rat(-1)}) == 1);
    CHECK(dx.at_infinity == -2);

    // fiber over x = 3 is irrational: both branch orders aggregate
    PlaceDivisor d3 = divisor_of(m, cm::fe_sub(cm::fe_x(), cm::fe_const(Rat(3))));
    CHECK(d3.degree() == 0);
    CHECK(irr_mult(d3, P({-3, 1}), false) == 2);

    // multiplicativity
    PlaceDivisor dxy = divisor_of(m, cm::fe_mul(m, cm::fe_x(), cm::fe_y()));
    CHECK(dxy == dx + dy);

    // a denominator: div(1/(x - 3)) = -div(x - 3)
    PlaceDivisor inv = divisor_of(m, {Poly(Rat(1)), {}, P({-3, 1})});
    CHECK(inv == (-1) * d3);
}

TEST_CASE("divisors on a rational model") {
    auto m = cm::ComponentModel::rational_line({Rat(0), Rat(1)});
    cm::FunctionElement e{P({1, 0, 1}), {}, P({-1, 1})};  // (x^2+1)/(x-1)
    PlaceDivisor d = divisor_of(m, e);
    CHECK(d.degree() == 0);
    CHECK(irr_mult(d, P({1, 0, 1}), false) == 1);
    CHECK(mult_at(d, {Rat(1), Rat(0)}) == -1);
    CHECK(d.at_infinity == -1);
}

TEST_CASE("canonical ramification divisor of a genus-2 model") {
    auto m = cm::ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}), {});
    LinearSystem sys = full_system(m, {});
    REQUIRE(sys.dim() == 2);
    RamDivisor rd = ram_divisor(sys);
    CHECK(rd.total_degree == invariants::plucker_ram_degree(2, 2, 2));  // = 6
    // the six Weierstrass points: the five branch points and infinity
    CHECK(mult_at(rd.divisor, {Rat(-1), Rat(0)}) == 1);
    CHECK(irr_mult(rd.divisor, P({1, -1, 1, -1, 1}), true) == 1);
    CHECK(rd.divisor.at_infinity == 1);
    CHECK(rd.divisor.points.size() == 1);
    CHECK(rd.divisor.irr.size() == 1);
}

TEST_CASE("ramification divisor is invariant under basis change") {
    mg::Rng rng(811);
    auto m = mg::random_component(rng, 2, 2);
    PlaceDivisor E = 2 * cm::delta_divisor(m);
    LinearSystem sys = full_system(m, E);
    REQUIRE(sys.dim() >= 3);
    LinearSystem mixed = sys;
    // unimodular recombination
    mixed.basis[0] = cm::fe_add(sys.basis[0], cm::fe_scale(Rat(3), sys.basis[1]));
    mixed.basis[1] = cm::fe_add(sys.basis[1], cm::fe_scale(Rat(-2, 5), sys.basis[2]));
    mixed.basis[2] = cm::fe_add(sys.basis[2], sys.basis[0]);
    CHECK(ram_divisor(sys).divisor == ram_divisor(mixed).divisor);
}

// local ramification weight of the system from its triangularized vanishing
// orders: sum of (order_j - j) plus dim * (order of the trivialization)
static long weight_from_orders(const std::vector<long>& orders, long triv_ord) {
    long n = static_cast<long>(orders.size());
    long w = static_cast<long>(orders.size()) * triv_ord - n * (n - 1) / 2;
    for (long o : orders) w += o;
    return w;
}

TEST_CASE("vanishing-order oracle matches the divisor pipeline") {
    auto m = cm::ComponentModel::hyperelliptic(P({1, 0, 0, 0, 0, 1}),
                                               {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}});
    SECTION("canonical system") {
        LinearSystem sys = full_system(m, {});
        RamDivisor rd = ram_divisor(sys);
        // branch point x = -1 (a Weierstrass point): orders 0, 2
        auto ob = vanishing_orders_at_branch(m, sys.basis, Rat(-1));
        CHECK(ob == std::vector<long>{0, 2});
        CHECK(weight_from_orders(ob, 0) == mult_at(rd.divisor, {Rat(-1), Rat(0)}));
        // ordinary point (0, 1): orders 0, 1, weight 0
        auto oo = vanishing_orders(m, sys.basis, cm::LocalPoint::finite(Rat(0), Rat(1)));
        CHECK(oo == std::vector<long>{0, 1});
        CHECK(weight_from_orders(oo, 0) == mult_at(rd.divisor, {Rat(0), Rat(1)}));
        // infinity: trivialization order 2g - 2 = 2
        auto oi = vanishing_orders(m, sys.basis, cm::LocalPoint::infinity());
        CHECK(weight_from_orders(oi, 2) == rd.divisor.at_infinity);
    }
    SECTION("twisted system") {
        PlaceDivisor E = 2 * cm::delta_divisor(m);
        LinearSystem sys = full_system(m, E);
        RamDivisor rd = ram_divisor(sys);
        CHECK(rd.total_degree ==
              invariants::plucker_ram_degree(sys.dim(), 2 * 2 - 2 + E.degree(), 2));
        for (const auto& pt : m.marked()) {
            auto o = vanishing_orders(m, sys.basis, cm::LocalPoint::finite(pt.a, pt.b));
            CHECK(weight_from_orders(o, mult_at(E, pt)) == mult_at(rd.divisor, pt));
        }
        auto oi = vanishing_orders(m, sys.basis, cm::LocalPoint::infinity());
        CHECK(weight_from_orders(oi, 2 + E.at_infinity) == rd.divisor.at_infinity);
    }
}

TEST_CASE("limit divisor assembly on rational components") {
    mg::Rng rng(822);
    auto pd = invariants::compute_profile(0, 0, 3);
    NodalCurve c(mg::random_component(rng, 0, 3), mg::random_component(rng, 0, 3));
    auto glue = mg::random_glue(rng, 3);
    LimitDivisor a = assemble_limit(c, pd, extended_system(c, pd, 1, glue),
                                    extended_system(c, pd, 2, glue));
    LimitDivisor b = assemble_limit_restricted(c, pd, restricted_system(c, pd, 1, glue),
                                               restricted_system(c, pd, 2, glue));
    CHECK(a == b);
    CHECK(a.total_degree() == invariants::total_limit_degree(pd));  // g^3 - g = 6
    CHECK(a.comp1.effective());
    CHECK(a.comp2.effective());
    for (long mult : a.node_mult) CHECK(mult >= 0);
}

TEST_CASE("limit divisor assembly with differing twists") {
    mg::Rng rng(833);
    auto pd = invariants::compute_profile(1, 2, 2);
    ComponentModel c2 = mg::generic_component(rng, pd, 1);  // genus 2, plays C_2
    ComponentModel c1 = mg::generic_component(rng, pd, 2);  // genus 1, plays C_1
    NodalCurve c(c1, c2);
    auto glue = mg::random_glue(rng, 2);
    LimitDivisor a = assemble_limit(c, pd, extended_system(c, pd, 1, glue),
                                    extended_system(c, pd, 2, glue));
    LimitDivisor b = assemble_limit_restricted(c, pd, restricted_system(c, pd, 1, glue),
                                               restricted_system(c, pd, 2, glue));
    CHECK(a == b);
    CHECK(a.total_degree() == invariants::total_limit_degree(pd));  // 60
}

TEST_CASE("complete-system limit requires the divisibility profile") {
    mg::Rng rng(844);
    auto pd = invariants::compute_profile(2, 3, 2);
    NodalCurve c(mg::random_component(rng, 2, 2), mg::random_component(rng, 3, 2));
    CHECK_THROWS_AS(special_limit(c, pd), RamError);

    auto pd2 = invariants::compute_profile(2, 2, 2);
    NodalCurve c2(mg::random_component(rng, 2, 2, /*conjugate_pair=*/true),
                  mg::random_component(rng, 2, 2));
    CHECK_THROWS_AS(special_limit(c2, pd2), RamError);  // special node configuration
}
