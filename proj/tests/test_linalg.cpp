#include <catch2/catch_amalgamated.hpp>

#include "limitwp/linalg.hpp"

using namespace limitwp;

TEST_CASE("rref rank kernel") {
    QMat m(3, 4);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3; m(0, 3) = 4;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6; m(1, 3) = 8;
    m(2, 0) = 1; m(2, 1) = 0; m(2, 2) = 1; m(2, 3) = 0;
    CHECK(m.rank() == 2);
    QMat k = m.kernel();
    CHECK(k.rows() == 2);
    for (int i = 0; i < k.rows(); ++i) {
        auto v = m.apply(k.row(i));
        for (const auto& x : v) CHECK(x == 0);
    }
}

TEST_CASE("determinant") {
    QMat m(2, 2);
    m(0, 0) = Rat(1, 2); m(0, 1) = 1;
    m(1, 0) = 1;         m(1, 1) = 3;
    CHECK(m.det() == Rat(1, 2));
    QMat s(3, 3);
    CHECK(s.det() == 0);
}

TEST_CASE("row space containment") {
    QMat a = QMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    QMat b = QMat::from_rows({{Rat(3), Rat(5)}});
    CHECK(a.row_space_contains(b));
    CHECK_FALSE(b.row_space_contains(a));
    QMat c = QMat::from_rows({{Rat(6), Rat(10)}});
    CHECK(b.same_row_space(c));
}

TEST_CASE("smith normal form small") {
    ZMat a(2, 2);
    a(0, 0) = 2; a(0, 1) = 4;
    a(1, 0) = 6; a(1, 1) = 8;
    auto f = smith_normal_form(a);
    CHECK(f.rank == 2);
    // invariant factors 2, 4 (det = -8, gcd = 2)
    CHECK(f.s(0, 0) == 2);
    CHECK(f.s(1, 1) == 4);
    CHECK(f.s(0, 0) * f.s(1, 1) == 8);
    // U*A*V == S
    ZMat prod = f.u * a * f.v;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(prod(i, j) == f.s(i, j));
}

TEST_CASE("smith kernel vectors") {
    // rank-1 matrix: left and right kernels are 1-dimensional
    ZMat a(2, 2);
    a(0, 0) = 1; a(0, 1) = 2;
    a(1, 0) = 2; a(1, 1) = 4;
    auto f = smith_normal_form(a);
    CHECK(f.rank == 1);
    auto lk = f.left_kernel_basis();
    REQUIRE(lk.size() == 1);
    CHECK(lk[0][0] * 1 + lk[0][1] * 2 == 0);
    CHECK(lk[0][0] * 2 + lk[0][1] * 4 == 0);
    auto rk = f.right_kernel_basis();
    REQUIRE(rk.size() == 1);
    CHECK(1 * rk[0][0] + 2 * rk[0][1] == 0);
}

TEST_CASE("smith divisibility chain random") {
    // deterministic pseudo-random integer matrices
    uint64_t seed = 42;
    auto next = [&] {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((seed >> 33) % 21) - 10;
    };
    for (int trial = 0; trial < 20; ++trial) {
        ZMat a(3, 4);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = next();
        auto f = smith_normal_form(a);
        ZMat prod = f.u * a * f.v;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i != j || i >= f.rank)
                    CHECK(prod(i, j) == 0);
                else
                    CHECK(prod(i, j) > 0);
            }
        for (int i = 0; i + 1 < f.rank; ++i) CHECK(f.s(i + 1, i + 1) % f.s(i, i) == 0);
    }
}
