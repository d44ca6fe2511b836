#pragma once

// Two smooth components glued along their marked points: global sections of
// glued sheaves, restriction maps, smoothability of a sheaf (or a pair) via
// principality witnesses and gluing-class arithmetic, and exact solvability
// of multiplicative lattice systems.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "limitwp/curvemodel.hpp"
#include "limitwp/invariants.hpp"
#include "limitwp/linalg.hpp"

namespace limitwp::nodalglue {

using curvemodel::ComponentModel;
using curvemodel::FunctionElement;
using curvemodel::MarkedPoint;
using curvemodel::PlaceDivisor;

struct GlueError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class NodalCurve {
public:
    NodalCurve(ComponentModel c1, ComponentModel c2) : comp_{std::move(c1), std::move(c2)} {
        if (comp_[0].delta() != comp_[1].delta())
            throw GlueError("components must carry the same number of nodes");
    }

    const ComponentModel& comp(int i) const { return comp_[i - 1]; }
    long delta() const { return comp_[0].delta(); }
    long genus() const { return comp_[0].genus() + comp_[1].genus() + delta() - 1; }

    invariants::GenusProfile profile() const {
        return {comp_[0].genus(), comp_[1].genus(), delta()};
    }

private:
    ComponentModel comp_[2];
};

// An invertible sheaf on the nodal curve: omega_j(side_j) on each component,
// glued over node r by the scalar glue[r] (side-1 value = glue[r] * side-2
// value in the reference trivializations).
struct GluedSheaf {
    PlaceDivisor side1;
    PlaceDivisor side2;
    std::vector<Rat> glue;

    const PlaceDivisor& side(int j) const { return j == 1 ? side1 : side2; }
};

// Trivialized value at a node: for a section z * dx/y (resp. z * dx) of
// omega(E) with E-coefficient c at the point, the value is the t^(-c)
// coefficient of z/y (resp. z) in the local coordinate t = x - a.
inline Rat node_value(const ComponentModel& m, const FunctionElement& z, const MarkedPoint& P,
                      long c) {
    FunctionElement w = z;
    if (!m.is_rational()) w = curvemodel::fe_mul(m, z, {{}, Poly(Rat(1)), m.f()});  // z / y
    Series s = curvemodel::expand_local(m, w, curvemodel::LocalPoint::finite(P.a, P.b),
                                        static_cast<int>(1 - c));
    return s.coeff(static_cast<int>(-c));
}

namespace detail {

inline long point_mult(const PlaceDivisor& d, const MarkedPoint& P) {
    for (const auto& [Q, m] : d.points)
        if (Q == P) return m;
    return 0;
}

inline FunctionElement combo(const std::vector<FunctionElement>& basis,
                             const std::vector<Rat>& coef, size_t off, size_t n) {
    FunctionElement acc;
    for (size_t k = 0; k < n; ++k)
        if (coef[off + k] != 0)
            acc = curvemodel::fe_add(acc, curvemodel::fe_scale(coef[off + k], basis[k]));
    return acc;
}

}  // namespace detail

struct GluedSections {
    curvemodel::SectionSpace s1;
    curvemodel::SectionSpace s2;
    std::vector<std::pair<FunctionElement, FunctionElement>> basis;
    QMat rho1;  // rows: coordinates of the glued basis in s1's basis
    QMat rho2;

    long dim() const { return static_cast<long>(basis.size()); }
};

// H^0 of a glued sheaf as matched section pairs: the side-1 and side-2 node
// values must agree through the glue scalars at every node.
inline GluedSections glued_h0(const NodalCurve& c, const GluedSheaf& sheaf) {
    long delta = c.delta();
    if (static_cast<long>(sheaf.glue.size()) != delta)
        throw GlueError("glue vector length must equal the node count");
    for (const Rat& g : sheaf.glue)
        if (g == 0) throw GlueError("glue scalars must be nonzero");
    auto s1 = curvemodel::rr_space(c.comp(1), sheaf.side1);
    auto s2 = curvemodel::rr_space(c.comp(2), sheaf.side2);
    long n1 = s1.dim(), n2 = s2.dim();

    std::vector<std::vector<Rat>> rows;
    for (long r = 0; r < delta; ++r) {
        const MarkedPoint& P1 = c.comp(1).marked()[r];
        const MarkedPoint& P2 = c.comp(2).marked()[r];
        long c1 = detail::point_mult(sheaf.side1, P1);
        long c2 = detail::point_mult(sheaf.side2, P2);
        std::vector<Rat> row(n1 + n2, Rat(0));
        for (long k = 0; k < n1; ++k)
            row[k] = node_value(c.comp(1), s1.basis[k], P1, c1);
        for (long l = 0; l < n2; ++l)
            row[n1 + l] = -sheaf.glue[r] * node_value(c.comp(2), s2.basis[l], P2, c2);
        rows.push_back(std::move(row));
    }

    GluedSections out{std::move(s1), std::move(s2), {}, QMat(0, n1), QMat(0, n2)};
    std::vector<std::vector<Rat>> sols;
    if (rows.empty()) {
        for (long j = 0; j < n1 + n2; ++j) {
            std::vector<Rat> v(n1 + n2, Rat(0));
            v[j] = 1;
            sols.push_back(std::move(v));
        }
    } else {
        QMat ker = QMat::from_rows(rows).kernel();
        for (int i = 0; i < ker.rows(); ++i) sols.push_back(ker.row(i));
    }
    QMat r1(static_cast<int>(sols.size()), static_cast<int>(n1));
    QMat r2(static_cast<int>(sols.size()), static_cast<int>(n2));
    for (size_t i = 0; i < sols.size(); ++i) {
        for (long k = 0; k < n1; ++k) r1(static_cast<int>(i), static_cast<int>(k)) = sols[i][k];
        for (long l = 0; l < n2; ++l)
            r2(static_cast<int>(i), static_cast<int>(l)) = sols[i][n1 + l];
        out.basis.push_back({detail::combo(out.s1.basis, sols[i], 0, n1),
                             detail::combo(out.s2.basis, sols[i], n1, n2)});
    }
    out.rho1 = std::move(r1);
    out.rho2 = std::move(r2);
    return out;
}

// The dualizing sheaf of the nodal curve: sides omega_j(Delta), glue -1 at
// every node (opposite residues).
inline GluedSheaf dualizing_sheaf(const NodalCurve& c) {
    return {curvemodel::delta_divisor(c.comp(1)), curvemodel::delta_divisor(c.comp(2)),
            std::vector<Rat>(c.delta(), Rat(-1))};
}

// Twist of the reference sheaf construction for index i: side i carries
// omega_i((1+ell_i)Delta), the other side omega_{3-i}((1-ell_i)Delta).
inline PlaceDivisor reference_twist(const NodalCurve& c, const invariants::ProfileData& pd,
                                    int i, int j) {
    long sign = (i == j) ? 1 : -1;
    return (1 + sign * pd.twist.ell_of(i)) * curvemodel::delta_divisor(c.comp(j));
}

inline GluedSheaf reference_sheaf(const NodalCurve& c, const invariants::ProfileData& pd, int i,
                                  std::vector<Rat> glue) {
    return {reference_twist(c, pd, i, 1), reference_twist(c, pd, i, 2), std::move(glue)};
}

struct Subspace {
    curvemodel::SectionSpace ambient;
    QMat coords;  // rows: a basis of the subspace in ambient coordinates

    long dim() const { return coords.rows(); }
};

// Image of the restriction map from H^0 of the glued reference sheaf for
// index i to H^0 of its side-i sheaf.
inline Subspace vpi_subspace(const NodalCurve& c, const invariants::ProfileData& pd, int i,
                             const std::vector<Rat>& glue) {
    auto c1 = curvemodel::check_condition_1(c.comp(3 - i), i, pd);
    if (!c1.ok)
        throw GlueError("node configuration fails the generic-cohomology condition at n = " +
                        std::to_string(c1.failing_n.value_or(-1)));
    GluedSections g = glued_h0(c, reference_sheaf(c, pd, i, glue));
    const QMat& rho = (i == 1) ? g.rho1 : g.rho2;
    QMat red = rho;
    red.rref();
    std::vector<std::vector<Rat>> rows;
    for (int r = 0; r < red.rows(); ++r) {
        bool zero = true;
        for (int j = 0; j < red.cols(); ++j) zero = zero && red(r, j) == 0;
        if (!zero) rows.push_back(red.row(r));
    }
    return {(i == 1) ? std::move(g.s1) : std::move(g.s2),
            rows.empty() ? QMat(0, red.cols()) : QMat::from_rows(rows)};
}

// Witness z with div(z) = E - ref, when the class difference is principal:
// the generator of L(ref - E) if that space is a line on a degree-0 class.
inline std::optional<FunctionElement> principal_witness(const ComponentModel& m,
                                                        const PlaceDivisor& ref,
                                                        const PlaceDivisor& E) {
    PlaceDivisor diff = ref - E;
    if (diff.degree() != 0) return std::nullopt;
    auto space = curvemodel::rr_space(m, diff + (-1) * curvemodel::reference_canonical(m));
    if (space.dim() != 1) return std::nullopt;
    return space.basis[0];
}

// A sheaf with ell_i != 0 is a limit of the twist construction for index i
// iff both restrictions are isomorphic to the reference sheaves; the glue is
// unconstrained in the single-sheaf case.
inline bool smoothable_single(const NodalCurve& c, const invariants::ProfileData& pd, int i,
                              const GluedSheaf& L) {
    if (pd.twist.ell_of(i) == 0) throw GlueError("requires a nonzero twist multiplier");
    for (int j = 1; j <= 2; ++j)
        if (!principal_witness(c.comp(j), reference_twist(c, pd, i, j), L.side(j)))
            return false;
    return true;
}

namespace detail {

// Gluing vector of L rewritten on the reference sides: entry r picks up the
// ratio of the leading node coefficients of the two principality witnesses.
inline std::optional<std::vector<Rat>> normalized_glue(const NodalCurve& c,
                                                       const invariants::ProfileData& pd, int i,
                                                       const GluedSheaf& L) {
    std::vector<FunctionElement> wit;
    for (int j = 1; j <= 2; ++j) {
        auto z = principal_witness(c.comp(j), reference_twist(c, pd, i, j), L.side(j));
        if (!z) return std::nullopt;
        wit.push_back(*z);
    }
    std::vector<Rat> out;
    for (long r = 0; r < c.delta(); ++r) {
        Rat zeta[2];
        for (int j = 1; j <= 2; ++j) {
            const MarkedPoint& P = c.comp(j).marked()[r];
            long ord = point_mult(L.side(j), P) -
                       point_mult(reference_twist(c, pd, i, j), P);
            Series s = curvemodel::expand_local(c.comp(j), wit[j - 1],
                                                curvemodel::LocalPoint::finite(P.a, P.b),
                                                static_cast<int>(ord + 1));
            zeta[j - 1] = s.coeff(static_cast<int>(ord));
            if (zeta[j - 1] == 0) throw std::logic_error("witness valuation mismatch");
        }
        out.push_back(L.glue[r] * zeta[1] / zeta[0]);
    }
    return out;
}

}  // namespace detail

// Pair criterion: both sheaves restrict to the reference sides
// and the product of their gluing classes with weights (lambda_2, lambda_1)
// is the class of the corresponding power of the dualizing glue.  Classes are
// compared modulo one global scalar, so the test is that all node entries of
// the weighted product agree.
inline bool smoothable_pair(const NodalCurve& c, const invariants::ProfileData& pd,
                            const GluedSheaf& L1, const GluedSheaf& L2) {
    if (!pd.twist.lambda) throw GlueError("requires both twist multipliers nonzero");
    auto [l1, l2] = *pd.twist.lambda;
    auto u1 = detail::normalized_glue(c, pd, 1, L1);
    auto u2 = detail::normalized_glue(c, pd, 2, L2);
    if (!u1 || !u2) return false;
    // (-1)^(l1+l2) from the dualizing glue is constant across nodes and drops
    // out of the proportionality test
    std::vector<Rat> w;
    for (long r = 0; r < c.delta(); ++r)
        w.push_back(rat_pow((*u1)[r], l2) * rat_pow((*u2)[r], l1));
    for (long r = 1; r < c.delta(); ++r)
        if (w[r] != w[0]) return false;
    return true;
}

// Multiplicative system prod_j t_j^(A(r,j)) = c_r over an algebraically
// closed field.
struct ExponentLattice {
    ZMat a;
    std::vector<Rat> c;
};

struct RadicalScalar {
    Rat base;   // positive rational
    long root;  // the entry is sign * base^(1/root)
    bool negate = false;
};

struct LatticeSolution {
    bool solvable = false;
    std::optional<std::vector<RadicalScalar>> witness;
};

// Exact solvability via Smith normal form: solvable iff every integer left
// kernel vector v of A satisfies prod c_r^(v_r) = 1.  When a real radical
// witness exists it is returned with entries base^(1/root).
inline LatticeSolution lattice_solve(const ExponentLattice& lat) {
    if (lat.a.rows() != static_cast<int>(lat.c.size()))
        throw std::invalid_argument("target length must match the equation count");
    for (const Rat& x : lat.c)
        if (x == 0) throw std::invalid_argument("targets must be nonzero");
    auto snf = smith_normal_form(lat.a);
    for (const auto& v : snf.left_kernel_basis()) {
        Rat prod(1);
        for (size_t r = 0; r < v.size(); ++r) prod *= rat_pow(lat.c[r], to_long(v[r]));
        if (prod != 1) return {false, std::nullopt};
    }
    // diagonalized targets d_i = prod c_r^(U(i,r)); y_i^(s_i) = d_i
    long n = lat.a.cols();
    std::vector<Rat> d(snf.rank, Rat(1));
    std::vector<long> s(snf.rank);
    long N = 1;
    for (int i = 0; i < snf.rank; ++i) {
        for (int r = 0; r < lat.a.rows(); ++r) d[i] *= rat_pow(lat.c[r], to_long(snf.u(i, r)));
        s[i] = to_long(snf.s(i, i));
        N = std::lcm(N, s[i]);
    }
    // t_j = prod_i y_i^(V(j,i)) = (prod_i d_i^((N/s_i) V(j,i)))^(1/N)
    std::vector<RadicalScalar> wit;
    for (long j = 0; j < n; ++j) {
        Rat base(1);
        for (int i = 0; i < snf.rank; ++i)
            base *= rat_pow(d[i], (N / s[i]) * to_long(snf.v(static_cast<int>(j), i)));
        bool neg = base < 0;
        if (neg && N % 2 == 0) return {true, std::nullopt};  // no real radical witness
        wit.push_back({neg ? -base : base, N, neg});
    }
    return {true, wit};
}

// Rank of the solution torus of the homogeneous system A t = 1.
inline long solution_rank(const ZMat& a) {
    return a.cols() - smith_normal_form(a).rank;
}

}  // namespace limitwp::nodalglue
