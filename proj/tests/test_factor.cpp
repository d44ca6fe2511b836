#include <catch2/catch_amalgamated.hpp>

#include "limitwp/factor.hpp"

using namespace limitwp;

static Poly P(std::initializer_list<long> coef) {
    std::vector<Rat> v;
    for (long c : coef) v.emplace_back(c);
    return Poly(std::move(v));
}

static Poly product(const std::vector<QFactor>& fs) {
    Poly p(Rat(1));
    for (const auto& f : fs)
        for (int k = 0; k < f.mult; ++k) p *= f.poly;
    return p;
}

TEST_CASE("x^5 + 1 splits as (x+1)(x^4-x^3+x^2-x+1)") {
    auto fs = factor_rationals(P({1, 0, 0, 0, 0, 1}));
    REQUIRE(fs.size() == 2);
    std::sort(fs.begin(), fs.end(),
              [](const QFactor& a, const QFactor& b) { return a.poly.degree() < b.poly.degree(); });
    CHECK(fs[0].poly == P({1, 1}));
    CHECK(fs[1].poly == P({1, -1, 1, -1, 1}));
    CHECK(fs[0].mult == 1);
    CHECK(fs[1].mult == 1);
}

TEST_CASE("multiplicities survive") {
    Poly f = P({-1, 1}) * P({-1, 1}) * P({1, 0, 1}) * P({3});
    auto fs = factor_rationals(f);
    REQUIRE(fs.size() == 2);
    Poly prod = product(fs);
    CHECK(prod == f.monic());
}

TEST_CASE("irreducible stays whole") {
    auto fs = factor_rationals(P({1, 1, 1, 1, 1}));  // cyclotomic Phi_5
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].poly.degree() == 4);
}

TEST_CASE("non-monic rational coefficients") {
    Poly f = Rat(3, 7) * (P({1, 2}) * P({-5, 3}) * P({1, 0, 0, 2}));
    auto fs = factor_rationals(f);
    Poly prod = product(fs);
    CHECK(prod == f.monic());
    int total = 0;
    for (const auto& g : fs) total += g.poly.degree() * g.mult;
    CHECK(total == f.degree());
    for (const auto& g : fs) CHECK((g.poly.degree() <= 1 || g.poly.degree() == 3));
}

TEST_CASE("larger product with repeated structure") {
    // (x^2-2)^2 (x^3-x-1) (x-4)
    Poly f = P({-2, 0, 1}) * P({-2, 0, 1}) * P({-1, -1, 0, 1}) * P({-4, 1});
    auto fs = factor_rationals(f);
    CHECK(product(fs) == f.monic());
    int count_quad = 0;
    for (const auto& g : fs)
        if (g.poly == P({-2, 0, 1})) {
            count_quad++;
            CHECK(g.mult == 2);
        }
    CHECK(count_quad == 1);
}

TEST_CASE("random products round-trip") {
    uint64_t seed = 7;
    auto next = [&] {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((seed >> 33) % 11) - 5;
    };
    for (int trial = 0; trial < 10; ++trial) {
        Poly f(Rat(1));
        for (int i = 0; i < 3; ++i) {
            std::vector<Rat> c;
            int d = 1 + static_cast<int>((seed >> 17) % 3);
            for (int j = 0; j < d; ++j) c.emplace_back(next());
            c.emplace_back(1);
            f *= Poly(std::move(c));
        }
        auto fs = factor_rationals(f);
        CHECK(product(fs) == f.monic());
    }
}

TEST_CASE("large coefficients force multi-step lifting") {
    // x^15 - 112 x^10 + 448 x^5 - 64 = (deg 5) * (deg 10); the coefficient
    // bound exceeds the working prime, so the factors only appear after
    // lifting the modular factorization
    std::vector<Rat> c(16, Rat(0));
    c[15] = 1;
    c[10] = -112;
    c[5] = 448;
    c[0] = -64;
    Poly f(std::move(c));
    auto fs = factor_rationals(f);
    CHECK(product(fs) == f.monic());
    REQUIRE(fs.size() == 2);
    CHECK(std::min(fs[0].poly.degree(), fs[1].poly.degree()) == 5);
    CHECK(std::max(fs[0].poly.degree(), fs[1].poly.degree()) == 10);

    // a product with an enormous coefficient spread round-trips as well
    Poly big = (Poly(std::vector<Rat>{Rat(Int("1000000000000000000007")), Rat(1)}) *
                Poly(std::vector<Rat>{Rat(-3), Rat(Int("999999999999999999989")), Rat(1)}));
    auto bs = factor_rationals(big);
    CHECK(product(bs) == big.monic());
    CHECK(bs.size() == 2);
}

TEST_CASE("modular gcd agrees with the euclidean gcd") {
    uint64_t seed = 99;
    auto next = [&] {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((seed >> 33) % 2001) - 1000;
    };
    auto rand_poly = [&](int deg) {
        std::vector<Rat> c;
        for (int j = 0; j < deg; ++j) c.emplace_back(next());
        c.emplace_back(1);
        return Poly(std::move(c));
    };
    for (int trial = 0; trial < 3; ++trial) {
        Poly g = rand_poly(9);
        Poly a = g * rand_poly(30);
        Poly b = g * rand_poly(28);
        Poly got = gcd_big(a, b);
        CHECK(got == gcd(a, b));
        CHECK((a % got).is_zero());
        // coprime pair: fast exit
        CHECK(gcd_big(rand_poly(40), rand_poly(41)).degree() == 0);
    }
}
