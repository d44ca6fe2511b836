#pragma once

// Ramification divisors of linear systems on component models (Wronskian
// determinants over the exact function field, divisors of function elements
// with closed-point support), and their assembly into the limit Weierstrass
// divisor of the nodal curve along both published decompositions.

#include <stdexcept>
#include <vector>

#include "limitwp/curvemodel.hpp"
#include "limitwp/factor.hpp"
#include "limitwp/invariants.hpp"
#include "limitwp/nodalglue.hpp"

namespace limitwp::ramification {

using curvemodel::ComponentModel;
using curvemodel::FunctionElement;
using curvemodel::PlaceDivisor;
using nodalglue::NodalCurve;

struct RamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

constexpr long ORD_INF = 1L << 40;

// multiplicity of the irreducible factor h in p (ORD_INF for p = 0)
inline long h_mult(const Poly& p, const Poly& h) {
    if (p.is_zero()) return ORD_INF;
    long k = 0;
    Poly q = p;
    while (true) {
        Poly quo, rem;
        Poly::divrem(q, h, quo, rem);
        if (!rem.is_zero()) return k;
        q = std::move(quo);
        ++k;
    }
}

inline void push_unique(std::vector<Poly>& out, const Poly& h) {
    for (const Poly& g : out)
        if (g == h) return;
    out.push_back(h);
}

}  // namespace detail

// Principal divisor of a nonzero function element, with rational support
// listed pointwise (splitting hyperelliptic fibers over rational x with
// square f-value into the two branches) and the rest per minimal polynomial.
inline PlaceDivisor divisor_of(const ComponentModel& m, const FunctionElement& e) {
    if (e.is_zero()) throw RamError("divisor of the zero function");
    PlaceDivisor out;
    if (m.is_rational()) {
        std::vector<Poly> hs;
        for (const auto& qf : factor_rationals(e.p)) detail::push_unique(hs, qf.poly);
        for (const auto& qf : factor_rationals(e.d)) detail::push_unique(hs, qf.poly);
        for (const Poly& h : hs) {
            long v = detail::h_mult(e.p, h) - detail::h_mult(e.d, h);
            if (v == 0) continue;
            if (h.degree() == 1)
                out.add_point({-h[0], Rat(0)}, v);
            else
                out.add_irr(h, false, v);
        }
        out.at_infinity = e.d.degree() - e.p.degree();
        out.prune();
        return out;
    }

    const Poly& f = m.f();
    long dF = f.degree();  // 2*genus + 1
    Poly A = e.p * e.p - e.q * e.q * f;  // norm numerator; nonzero by parity of degrees

    // handle the factors of the denominator and of f first, stripping them
    // from A so that only the new zero locus remains to be factored
    std::vector<Poly> known;
    for (const auto& qf : factor_rationals(e.d)) detail::push_unique(known, qf.poly);
    for (const auto& qf : factor_rationals(f)) detail::push_unique(known, qf.poly);

    auto place_orders = [&](const Poly& h, long kA, long kd) {
        // orders over one root of h (h coprime to f): the two branch orders
        // of the fiber sum to kA, each corrected by the denominator order kd
        if (h.degree() == 1) {
            Rat a = -h[0];
            auto b = exact_sqrt(f.eval(a));
            if (b) {
                int prec = static_cast<int>(kA) + 1;
                Series s = Series::from_poly(f.shift(a), prec).sqrt(*b);
                Series num = Series::from_poly(e.p.shift(a), prec);
                if (!e.q.is_zero()) num = num + Series::from_poly(e.q.shift(a), prec) * s;
                long op = num.known_zero() ? kA : num.valuation();
                long om = kA - op;
                if (op != kd) out.add_point({a, *b}, op - kd);
                if (om != kd) out.add_point({a, -*b}, om - kd);
                return;
            }
        }
        if (kA != 2 * kd) out.add_irr(h, false, kA - 2 * kd);
    };

    for (const Poly& h : known) {
        long kd = detail::h_mult(e.d, h);
        long kA = detail::h_mult(A, h);
        if (kA > 0) {
            for (long k = 0; k < kA; ++k) A = Poly::divexact(A, h);
        }
        if ((f % h).is_zero()) {
            // single ramified place over each root of h, uniformized by y
            long v = std::min(2 * detail::h_mult(e.p, h), 2 * detail::h_mult(e.q, h) + 1) -
                     2 * kd;
            if (v == 0) continue;
            if (h.degree() == 1)
                out.add_point({-h[0], Rat(0)}, v);
            else
                out.add_irr(h, true, v);
        } else {
            place_orders(h, kA, kd);
        }
    }
    for (const auto& qf : factor_rationals(A)) place_orders(qf.poly, qf.mult, 0);

    long tp = e.p.is_zero() ? detail::ORD_INF : -2 * e.p.degree();
    long tq = e.q.is_zero() ? detail::ORD_INF : -2 * e.q.degree() - dF;
    out.at_infinity = std::min(tp, tq) + 2 * e.d.degree();
    out.prune();
    return out;
}

// Divisor of the reference differential dx: simple zeros at the branch
// points and a triple pole at infinity on hyperelliptic models, a double
// pole at infinity on the line.
inline PlaceDivisor differential_divisor(const ComponentModel& m) {
    if (m.is_rational()) return PlaceDivisor::infinity(-2);
    PlaceDivisor d = PlaceDivisor::infinity(-3);
    for (const auto& qf : factor_rationals(m.f())) {
        if (qf.poly.degree() == 1)
            d.add_point({-qf.poly[0], Rat(0)}, 1);
        else
            d.add_irr(qf.poly, true, 1);
    }
    return d;
}

// A linear system inside H^0(omega(twist)): trivialized sections over the
// reference differential, not necessarily the full space.
struct LinearSystem {
    ComponentModel model;
    PlaceDivisor twist;
    std::vector<FunctionElement> basis;

    long dim() const { return static_cast<long>(basis.size()); }
};

inline LinearSystem full_system(const ComponentModel& m, const PlaceDivisor& E) {
    auto s = curvemodel::rr_space(m, E);
    return {m, E, std::move(s.basis)};
}

// The rows of `coords` as concrete sections of the ambient space.
inline LinearSystem subspace_system(const nodalglue::Subspace& sub) {
    LinearSystem out{sub.ambient.model, sub.ambient.twist, {}};
    for (int r = 0; r < sub.coords.rows(); ++r) {
        FunctionElement acc;
        for (int k = 0; k < sub.coords.cols(); ++k)
            if (sub.coords(r, k) != 0)
                acc = curvemodel::fe_add(
                    acc, curvemodel::fe_scale(sub.coords(r, k), sub.ambient.basis[k]));
        out.basis.push_back(std::move(acc));
    }
    return out;
}

namespace detail {

// elements a + b*y of the coordinate ring, used for fraction-free Wronskian
// determinants
struct RElem {
    Poly a;
    Poly b;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

inline RElem r_add(const RElem& x, const RElem& y) { return {x.a + y.a, x.b + y.b}; }
inline RElem r_neg(const RElem& x) { return {-Rat(1) * x.a, -Rat(1) * x.b}; }
inline RElem r_mul(const RElem& x, const RElem& y, const Poly& f) {
    Poly a = x.a * y.a;
    if (!x.b.is_zero() && !y.b.is_zero()) a += x.b * y.b * f;
    return {a, x.a * y.b + x.b * y.a};
}

}  // namespace detail

// Wronskian of the system with respect to x, as a function element: the
// determinant of the matrix of successive d/dx-derivatives of the basis.
// Denominators are cleared columnwise, so the determinant is evaluated over
// polynomial pairs; the result is returned unreduced.
inline FunctionElement wronskian_element(const LinearSystem& sys) {
    const ComponentModel& m = sys.model;
    long n = sys.dim();
    if (n == 0) throw RamError("empty linear system");
    if (n > 16) throw RamError("system dimension too large for the determinant");

    std::vector<std::vector<FunctionElement>> rows(n);
    rows[0] = sys.basis;
    for (long r = 1; r < n; ++r)
        for (long k = 0; k < n; ++k)
            rows[r].push_back(curvemodel::fe_derivative(m, rows[r - 1][k]));

    std::vector<detail::RElem> mat(n * n);
    Poly denprod(Rat(1));
    for (long k = 0; k < n; ++k) {
        Poly D(Rat(1));
        for (long r = 0; r < n; ++r) {
            const Poly& dk = rows[r][k].d;
            D = Poly::divexact(D * dk, gcd_big(D, dk)).monic();
        }
        denprod *= D;
        for (long r = 0; r < n; ++r) {
            Poly c = Poly::divexact(D, rows[r][k].d);
            mat[r * n + k] = {rows[r][k].p * c, rows[r][k].q * c};
        }
    }

    // determinant by expansion along the last consumed row, memoized over
    // column subsets
    std::vector<detail::RElem> dp(static_cast<size_t>(1) << n);
    dp[0] = {Poly(Rat(1)), Poly()};
    for (size_t mask = 1; mask < dp.size(); ++mask) {
        long r = __builtin_popcountll(mask) - 1;
        detail::RElem acc;
        int pos = 0;
        for (long j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            const detail::RElem& sub = dp[mask ^ (static_cast<size_t>(1) << j)];
            const detail::RElem& ent = mat[r * n + j];
            if (!sub.is_zero() && !ent.is_zero()) {
                detail::RElem t = detail::r_mul(sub, ent, m.f());
                if ((r - pos) % 2 != 0) t = detail::r_neg(t);
                acc = detail::r_add(acc, t);
            }
            ++pos;
        }
        dp[mask] = std::move(acc);
    }
    detail::RElem det = dp.back();
    if (det.is_zero()) throw RamError("linearly dependent basis");
    return {std::move(det.a), std::move(det.b), std::move(denprod)};
}

namespace detail {

template <class ExpandFn>
inline std::vector<long> orders_from(long n, const ExpandFn& expand) {
    if (n == 0) return {};
    for (int hi = static_cast<int>(4 * n + 8);; hi *= 2) {
        std::vector<Series> s;
        long lo = hi;
        for (long k = 0; k < n; ++k) {
            s.push_back(expand(k, hi));
            if (!s.back().known_zero()) lo = std::min(lo, static_cast<long>(s.back().valuation()));
        }
        if (lo < hi) {
            int width = hi - static_cast<int>(lo);
            QMat mat(static_cast<int>(n), width);
            for (long k = 0; k < n; ++k)
                for (long v = lo; v < hi; ++v)
                    mat(static_cast<int>(k), static_cast<int>(v - lo)) =
                        s[k].coeff(static_cast<int>(v));
            auto piv = mat.rref();
            if (static_cast<long>(piv.size()) == n) {
                std::vector<long> out;
                for (int c : piv) out.push_back(lo + c);
                return out;
            }
        }
        if (hi > 8192) throw RamError("vanishing orders failed to stabilize");
    }
}

}  // namespace detail

// Strictly increasing vanishing orders of the spanned sections at a rational
// point, in the local uniformizer (triangularized exactly; the expansion
// precision grows until the order set is certified by full rank).
inline std::vector<long> vanishing_orders(const ComponentModel& m,
                                          const std::vector<FunctionElement>& basis,
                                          const curvemodel::LocalPoint& pt) {
    return detail::orders_from(static_cast<long>(basis.size()), [&](long k, int hi) {
        return curvemodel::expand_local(m, basis[k], pt, hi);
    });
}

// The same orders at a rational branch point (f(a) = 0), in the uniformizer y.
inline std::vector<long> vanishing_orders_at_branch(const ComponentModel& m,
                                                    const std::vector<FunctionElement>& basis,
                                                    const Rat& a) {
    return detail::orders_from(static_cast<long>(basis.size()), [&](long k, int hi) {
        return curvemodel::expand_at_branch_point(m, basis[k], a, hi);
    });
}

struct RamDivisor {
    PlaceDivisor divisor;
    long total_degree = 0;
};

// Ramification divisor of the system: div(W) + n * div(trivializing section)
// + C(n,2) * div(dx), effective of the Plucker degree.
inline RamDivisor ram_divisor(const LinearSystem& sys) {
    long n = sys.dim();
    FunctionElement w = wronskian_element(sys);
    PlaceDivisor r = divisor_of(sys.model, w) +
                     n * (curvemodel::reference_canonical(sys.model) + sys.twist) +
                     (n * (n - 1) / 2) * differential_divisor(sys.model);
    r.prune();
    if (!r.effective()) throw RamError("ramification divisor not effective");
    return {r, r.degree()};
}

// A divisor on the nodal curve in canonical form: the node multiplicities
// are folded out of the component parts, so equality of the three pieces is
// equality of divisors.
struct LimitDivisor {
    PlaceDivisor comp1;
    PlaceDivisor comp2;
    std::vector<long> node_mult;

    long total_degree() const {
        long d = comp1.degree() + comp2.degree();
        for (long m : node_mult) d += m;
        return d;
    }

    friend bool operator==(const LimitDivisor& x, const LimitDivisor& y) {
        return x.comp1 == y.comp1 && x.comp2 == y.comp2 && x.node_mult == y.node_mult;
    }
};

inline LimitDivisor assemble_components(const NodalCurve& c, const PlaceDivisor& r1,
                                        const PlaceDivisor& r2, long delta_coeff) {
    LimitDivisor out{r1, r2, std::vector<long>(c.delta(), delta_coeff)};
    for (long r = 0; r < c.delta(); ++r) {
        out.node_mult[r] += nodalglue::detail::point_mult(r1, c.comp(1).marked()[r]) +
                            nodalglue::detail::point_mult(r2, c.comp(2).marked()[r]);
        PlaceDivisor* parts[2] = {&out.comp1, &out.comp2};
        for (int j = 1; j <= 2; ++j) {
            const auto& P = c.comp(j).marked()[r];
            std::erase_if(parts[j - 1]->points, [&](const auto& pm) { return pm.first == P; });
        }
    }
    out.comp1.prune();
    out.comp2.prune();
    return out;
}

namespace detail {

inline void require_limit_system(const NodalCurve& c, const LinearSystem& sys, int j,
                                 long twist_mult) {
    if (sys.dim() != c.genus()) throw RamError("component system must have dimension g");
    if (!(sys.twist == twist_mult * curvemodel::delta_divisor(c.comp(j))))
        throw RamError("component system carries the wrong twist");
}

}  // namespace detail

// Limit Weierstrass divisor from the two component aspects with twists
// (1+g_{3-j})Delta: sum of the component ramification divisors plus
// g(delta-2) at every node.
inline LimitDivisor assemble_limit(const NodalCurve& c, const invariants::ProfileData& pd,
                                   const LinearSystem& sys1, const LinearSystem& sys2) {
    const LinearSystem* sys[2] = {&sys1, &sys2};
    PlaceDivisor r[2];
    for (int j = 1; j <= 2; ++j) {
        detail::require_limit_system(c, *sys[j - 1], j, 1 + pd.profile.opposite_genus(j));
        r[j - 1] = ram_divisor(*sys[j - 1]).divisor;
    }
    return assemble_components(c, r[0], r[1], invariants::extended_delta_coefficient(pd));
}

// The same divisor from the restricted systems with the smaller twists
// (1+ell_j)Delta, plus g(g-1-ell_1-ell_2) at every node.
inline LimitDivisor assemble_limit_restricted(const NodalCurve& c,
                                              const invariants::ProfileData& pd,
                                              const LinearSystem& sys1,
                                              const LinearSystem& sys2) {
    const LinearSystem* sys[2] = {&sys1, &sys2};
    PlaceDivisor r[2];
    for (int j = 1; j <= 2; ++j) {
        detail::require_limit_system(c, *sys[j - 1], j, 1 + pd.twist.ell_of(j));
        r[j - 1] = ram_divisor(*sys[j - 1]).divisor;
    }
    return assemble_components(c, r[0], r[1], invariants::restricted_delta_coefficient(pd));
}

// The image of the restriction to component i of the glued reference
// sections, as a concrete linear system (twist (1+ell_i)Delta).  When
// ell_i = 0 the reference sheaf is the dualizing sheaf itself, whose glue
// is -1 at every node independently of the requested smoothing.
inline LinearSystem restricted_system(const NodalCurve& c, const invariants::ProfileData& pd,
                                      int i, const std::vector<Rat>& glue) {
    const std::vector<Rat>& g =
        pd.twist.ell_of(i) == 0 ? std::vector<Rat>(c.delta(), Rat(-1)) : glue;
    return subspace_system(nodalglue::vpi_subspace(c, pd, i, g));
}

// The same sections viewed inside the larger space with twist
// (1+g_{3-i})Delta; the section spaces are nested, so only the twist label
// changes.
inline LinearSystem extended_system(const NodalCurve& c, const invariants::ProfileData& pd,
                                    int i, const std::vector<Rat>& glue) {
    LinearSystem s = restricted_system(c, pd, i, glue);
    s.twist = (1 + pd.profile.opposite_genus(i)) * curvemodel::delta_divisor(c.comp(i));
    return s;
}

// When delta divides both component genera, the restricted systems are the
// complete systems |omega_i((1+g_{3-i}/delta)Delta)| independently of the
// glue, provided the components are generic enough for the vanishing
// h^0(omega_i(-(g_i/delta)Delta)) = 0.
inline LimitDivisor special_limit(const NodalCurve& c, const invariants::ProfileData& pd) {
    long delta = pd.profile.delta;
    if (pd.profile.g1 % delta != 0 || pd.profile.g2 % delta != 0)
        throw RamError("requires delta dividing both component genera");
    PlaceDivisor r[2];
    for (int j = 1; j <= 2; ++j) {
        long want = pd.profile.component_genus(j) / delta;
        if (curvemodel::h0(c.comp(j), (-want) * curvemodel::delta_divisor(c.comp(j))) != 0)
            throw RamError("node configuration is special for this profile");
        LinearSystem sys = full_system(
            c.comp(j), (1 + pd.twist.ell_of(j)) * curvemodel::delta_divisor(c.comp(j)));
        detail::require_limit_system(c, sys, j, 1 + pd.twist.ell_of(j));
        r[j - 1] = ram_divisor(sys).divisor;
    }
    return assemble_components(c, r[0], r[1], invariants::complete_delta_coefficient(pd));
}

}  // namespace limitwp::ramification
