#pragma once

// Explicit smooth component models over the rationals: the projective line and
// odd-degree hyperelliptic curves y^2 = f(x), with exact local expansions,
// Riemann-Roch spaces of twisted dualizing sheaves, and the genericity checks
// on node configurations that the rest of the library depends on.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "limitwp/invariants.hpp"
#include "limitwp/linalg.hpp"
#include "limitwp/poly.hpp"
#include "limitwp/rational.hpp"
#include "limitwp/series.hpp"

namespace limitwp::curvemodel {

struct ModelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedDivisor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A finite rational point. On rational models only `a` matters (b stays 0);
// on hyperelliptic models b^2 = f(a).
struct MarkedPoint {
    Rat a;
    Rat b;
    friend bool operator==(const MarkedPoint& x, const MarkedPoint& y) {
        return x.a == y.a && x.b == y.b;
    }
};

class ComponentModel {
public:
    enum class Kind { rational, hyperelliptic };

    // P^1 with marked points at the given distinct x-coordinates.
    static ComponentModel rational_line(const std::vector<Rat>& marked_x) {
        ComponentModel m;
        m.kind_ = Kind::rational;
        m.genus_ = 0;
        for (const Rat& a : marked_x) m.marked_.push_back({a, Rat(0)});
        for (size_t i = 0; i < m.marked_.size(); ++i)
            for (size_t j = i + 1; j < m.marked_.size(); ++j)
                if (m.marked_[i].a == m.marked_[j].a)
                    throw ModelError("marked x-coordinates must be distinct");
        return m;
    }

    // y^2 = f(x) with f monic squarefree of odd degree 2*genus+1; marked
    // points must be distinct, on the curve, and off the branch locus
    // (f(a) != 0), so that x - a uniformizes each branch.
    static ComponentModel hyperelliptic(Poly f, std::vector<MarkedPoint> marked) {
        if (f.degree() < 3 || f.degree() % 2 == 0)
            throw ModelError("need odd degree >= 3 for a hyperelliptic model");
        if (f.leading() != 1) throw ModelError("f must be monic");
        if (!is_squarefree(f)) throw ModelError("f must be squarefree");
        ComponentModel m;
        m.kind_ = Kind::hyperelliptic;
        m.f_ = std::move(f);
        m.genus_ = (m.f_.degree() - 1) / 2;
        m.marked_ = std::move(marked);
        for (const auto& P : m.marked_) {
            Rat fa = m.f_.eval(P.a);
            if (fa == 0) throw ModelError("marked point on the branch locus");
            if (P.b * P.b != fa) throw ModelError("marked point not on the curve");
        }
        for (size_t i = 0; i < m.marked_.size(); ++i)
            for (size_t j = i + 1; j < m.marked_.size(); ++j)
                if (m.marked_[i] == m.marked_[j])
                    throw ModelError("marked points must be distinct");
        return m;
    }

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::rational; }
    const Poly& f() const { return f_; }
    long genus() const { return genus_; }
    const std::vector<MarkedPoint>& marked() const { return marked_; }
    long delta() const { return static_cast<long>(marked_.size()); }

    bool on_curve(const Rat& a, const Rat& b) const {
        return is_rational() ? b == 0 : b * b == f_.eval(a);
    }

private:
    Kind kind_ = Kind::rational;
    Poly f_;
    long genus_ = 0;
    std::vector<MarkedPoint> marked_;
};

// A divisor over the closed points of a component model.  Rational points are
// listed individually; support with irrational coordinates is recorded per
// monic irreducible minpoly in x.  A `ramified` entry is the single place over
// each root of minpoly (minpoly divides f); otherwise `mult` aggregates the
// orders of both hyperelliptic branches of the fiber over one root, so the
// entry contributes mult * deg(minpoly) to the total degree either way.
struct PlaceDivisor {
    struct IrrEntry {
        Poly minpoly;
        bool ramified = false;
        long mult = 0;
    };

    std::vector<std::pair<MarkedPoint, long>> points;
    std::vector<IrrEntry> irr;
    long at_infinity = 0;

    static PlaceDivisor infinity(long m) {
        PlaceDivisor d;
        d.at_infinity = m;
        return d;
    }

    PlaceDivisor& add_point(const MarkedPoint& P, long m) {
        for (auto& [Q, mult] : points)
            if (Q == P) {
                mult += m;
                return *this;
            }
        points.push_back({P, m});
        return *this;
    }

    PlaceDivisor& add_irr(const Poly& minpoly, bool ramified, long m) {
        for (auto& e : irr)
            if (e.ramified == ramified && e.minpoly == minpoly) {
                e.mult += m;
                return *this;
            }
        irr.push_back({minpoly, ramified, m});
        return *this;
    }

    void prune() {
        std::erase_if(points, [](const auto& pm) { return pm.second == 0; });
        std::erase_if(irr, [](const IrrEntry& e) { return e.mult == 0; });
    }

    long degree() const {
        long d = at_infinity;
        for (const auto& [P, m] : points) d += m;
        for (const auto& e : irr) d += e.mult * e.minpoly.degree();
        return d;
    }

    friend PlaceDivisor operator+(const PlaceDivisor& x, const PlaceDivisor& y) {
        PlaceDivisor r = x;
        for (const auto& [P, m] : y.points) r.add_point(P, m);
        for (const auto& e : y.irr) r.add_irr(e.minpoly, e.ramified, e.mult);
        r.at_infinity += y.at_infinity;
        r.prune();
        return r;
    }
    friend PlaceDivisor operator-(const PlaceDivisor& x, const PlaceDivisor& y) {
        return x + (-1) * y;
    }
    friend PlaceDivisor operator*(long c, const PlaceDivisor& x) {
        PlaceDivisor r = x;
        for (auto& [P, m] : r.points) m *= c;
        for (auto& e : r.irr) e.mult *= c;
        r.at_infinity *= c;
        r.prune();
        return r;
    }

    bool effective() const {
        if (at_infinity < 0) return false;
        for (const auto& [P, m] : points)
            if (m < 0) return false;
        for (const auto& e : irr)
            if (e.mult < 0) return false;
        return true;
    }

    friend bool operator==(const PlaceDivisor& x, const PlaceDivisor& y) {
        PlaceDivisor d = x - y;
        return d.points.empty() && d.irr.empty() && d.at_infinity == 0;
    }
};

inline PlaceDivisor delta_divisor(const ComponentModel& m) {
    PlaceDivisor d;
    for (const auto& P : m.marked()) d.add_point(P, 1);
    return d;
}

// div(dx/y) on hyperelliptic models, div(dx) on rational ones: the divisor of
// the reference trivializing differential, supported at infinity.
inline PlaceDivisor reference_canonical(const ComponentModel& m) {
    return PlaceDivisor::infinity(m.is_rational() ? -2 : 2 * m.genus() - 2);
}

// Elements of the function field, (p + q*y)/d with q = 0 on rational models.
struct FunctionElement {
    Poly p;
    Poly q;
    Poly d{Rat(1)};

    bool is_zero() const { return p.is_zero() && q.is_zero(); }
};

inline FunctionElement fe_const(const Rat& c) { return {Poly(c), {}, Poly(Rat(1))}; }
inline FunctionElement fe_x() { return {Poly::x(), {}, Poly(Rat(1))}; }
inline FunctionElement fe_y() { return {{}, Poly(Rat(1)), Poly(Rat(1))}; }

inline FunctionElement fe_normalize(FunctionElement e) {
    if (e.d.is_zero()) throw std::domain_error("zero denominator");
    if (e.is_zero()) return {{}, {}, Poly(Rat(1))};
    Poly g = gcd(gcd(e.p, e.q), e.d);
    if (g.degree() > 0) {
        e.p = Poly::divexact(e.p, g);
        e.q = Poly::divexact(e.q, g);
        e.d = Poly::divexact(e.d, g);
    }
    Rat c = 1 / e.d.leading();
    e.p = c * e.p;
    e.q = c * e.q;
    e.d = e.d.monic();
    return e;
}

inline FunctionElement fe_add(const FunctionElement& a, const FunctionElement& b) {
    return fe_normalize({a.p * b.d + b.p * a.d, a.q * b.d + b.q * a.d, a.d * b.d});
}
inline FunctionElement fe_sub(const FunctionElement& a, const FunctionElement& b) {
    return fe_normalize({a.p * b.d - b.p * a.d, a.q * b.d - b.q * a.d, a.d * b.d});
}
inline FunctionElement fe_scale(const Rat& c, const FunctionElement& a) {
    return fe_normalize({c * a.p, c * a.q, a.d});
}
inline FunctionElement fe_mul(const ComponentModel& m, const FunctionElement& a,
                              const FunctionElement& b) {
    Poly p = a.p * b.p;
    if (!a.q.is_zero() && !b.q.is_zero()) p += a.q * b.q * m.f();
    return fe_normalize({p, a.p * b.q + a.q * b.p, a.d * b.d});
}

// d/dx, extending through y' = f'(x)/(2y).
inline FunctionElement fe_derivative(const ComponentModel& m, const FunctionElement& a) {
    Poly num_p = a.p.derivative() * a.d - a.p * a.d.derivative();
    if (m.is_rational()) return fe_normalize({num_p, {}, a.d * a.d});
    const Poly& f = m.f();
    Poly two_f = Rat(2) * f;
    Poly num_q = two_f * (a.q.derivative() * a.d - a.q * a.d.derivative()) +
                 a.q * f.derivative() * a.d;
    return fe_normalize({two_f * num_p, num_q, two_f * a.d * a.d});
}

inline bool fe_equal(const FunctionElement& a, const FunctionElement& b) {
    return a.p * b.d == b.p * a.d && a.q * b.d == b.q * a.d;
}

namespace detail {

inline long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long x_multiplicity(const Poly& p, const Rat& a) {
    if (p.is_zero()) throw std::domain_error("multiplicity of the zero polynomial");
    Poly q = p;
    Poly lin(std::vector<Rat>{-a, Rat(1)});
    long k = 0;
    while (q.eval(a) == 0) {
        q = Poly::divexact(q, lin);
        ++k;
    }
    return k;
}

inline Series eval_poly(const Poly& p, const Series& x) {
    Series acc(x.precision());
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + Series::constant(p[i], x.precision());
    return acc;
}

// Laurent series of p(t^-e) with the given precision.
inline Series poly_at_inverse(const Poly& p, int e, int prec) {
    if (p.is_zero()) return Series(prec);
    int dp = p.degree();
    std::vector<Rat> c(e * dp + 1, Rat(0));
    for (int j = 0; j <= dp; ++j) c[e * (dp - j)] = p[j];
    return Series(-e * dp, std::move(c), prec);
}

// Expansion of y in the uniformizer t at infinity (x = t^-2) for a monic
// odd-degree model: y = t^-(2g+1) * sqrt(sum f_j t^(2(deg-j))).
inline Series y_at_infinity(const Poly& f, int prec) {
    int D = f.degree();
    std::vector<Rat> c(2 * D + 1, Rat(0));
    for (int j = 0; j <= D; ++j) c[2 * (D - j)] = f[j];
    Series g(0, std::move(c), prec + D);
    return g.sqrt(Rat(1)).shifted(-D);
}

}  // namespace detail

struct LocalPoint {
    bool at_infinity = false;
    Rat a;
    Rat b;

    static LocalPoint infinity() { return {true, Rat(0), Rat(0)}; }
    static LocalPoint finite(const Rat& a, const Rat& b) { return {false, a, b}; }
};

// Expansion of elem in the local coordinate at the given point: x - a at
// finite points, t with x = t^-2 (hyperelliptic) or x = t^-1 (rational) at
// infinity.  The result carries coefficients for all exponents below `order`.
inline Series expand_local(const ComponentModel& m, const FunctionElement& elem,
                           const LocalPoint& pt, int order) {
    if (m.is_rational() && !elem.q.is_zero())
        throw ModelError("rational-model element with a y part");
    int slack = 2 * (elem.d.degree() + 2) + 2 * m.genus();
    for (;; slack *= 2) {
        int prec = order + slack;
        Series res(prec);
        if (pt.at_infinity) {
            int e = m.is_rational() ? 1 : 2;
            Series P = detail::poly_at_inverse(elem.p, e, prec);
            Series D = detail::poly_at_inverse(elem.d, e, prec);
            Series num = P;
            if (!m.is_rational() && !elem.q.is_zero())
                num = num + detail::poly_at_inverse(elem.q, e, prec) *
                                detail::y_at_infinity(m.f(), prec);
            res = num / D;
        } else {
            if (!m.on_curve(pt.a, pt.b)) throw ModelError("point not on the curve");
            if (!m.is_rational() && m.f().eval(pt.a) == 0)
                throw ModelError("x - a does not uniformize at a branch point");
            Series P = Series::from_poly(elem.p.shift(pt.a), prec);
            Series D = Series::from_poly(elem.d.shift(pt.a), prec);
            Series num = P;
            if (!elem.q.is_zero()) {
                Series S = Series::from_poly(m.f().shift(pt.a), prec).sqrt(pt.b);
                num = num + Series::from_poly(elem.q.shift(pt.a), prec) * S;
            }
            res = num / D;
        }
        if (res.precision() >= order) return res.truncated(order);
        if (slack > 4096) throw std::logic_error("expansion failed to stabilize");
    }
}

// Expansion at a rational branch point (a, 0) with f(a) = 0, in the
// uniformizer y: solves x = a + y^2/u(x) with u = f/(x - a) by iteration.
inline Series expand_at_branch_point(const ComponentModel& m, const FunctionElement& elem,
                                     const Rat& a, int order) {
    if (m.is_rational()) throw ModelError("no branch points on a rational model");
    if (m.f().eval(a) != 0) throw ModelError("not a branch point");
    Poly u = Poly::divexact(m.f(), Poly(std::vector<Rat>{-a, Rat(1)}));
    int slack = 2 * (elem.d.degree() + 2) + 2 * m.genus() + 2;
    for (;; slack *= 2) {
        int prec = order + slack;
        Series X = Series::constant(a, prec);
        Series t2 = Series::monomial(Rat(1), 2, prec);
        for (int it = 0; it <= prec / 2 + 1; ++it)
            X = Series::constant(a, prec) + t2 * detail::eval_poly(u, X).inverse();
        Series num = detail::eval_poly(elem.p, X);
        if (!elem.q.is_zero())
            num = num + detail::eval_poly(elem.q, X) * Series::monomial(Rat(1), 1, prec);
        Series res = num / detail::eval_poly(elem.d, X);
        if (res.precision() >= order) return res.truncated(order);
        if (slack > 4096) throw std::logic_error("expansion failed to stabilize");
    }
}

struct SectionSpace {
    ComponentModel model;
    PlaceDivisor twist;
    std::vector<FunctionElement> basis;

    long dim() const { return static_cast<long>(basis.size()); }
};

// Basis of H^0(omega(E)) = L(K0 + E) with K0 the divisor of the reference
// differential (dx/y resp. dx).  E must be supported on finite rational
// points of the model and infinity.  Sections are returned trivialized, i.e.
// as the function multiplying the reference differential.
inline SectionSpace rr_space(const ComponentModel& m, const PlaceDivisor& E) {
    if (!E.irr.empty())
        throw UnsupportedDivisor("twist supported at irrational places");
    for (const auto& [P, mult] : E.points) {
        if (!m.on_curve(P.a, P.b)) throw UnsupportedDivisor("twist point not on the curve");
        if (!m.is_rational() && m.f().eval(P.a) == 0)
            throw UnsupportedDivisor("twist supported at a branch point");
    }
    long n_inf = E.at_infinity + (m.is_rational() ? -2 : 2 * m.genus() - 2);

    // group the finite support by x-coordinate; e = pole allowance there
    struct XGroup {
        Rat b0;           // branch label (hyperelliptic; 0 on rational models)
        long m_plus = 0;  // multiplicity at (a, b0)
        long m_minus = 0; // multiplicity at (a, -b0)
        long e = 0;
    };
    std::map<Rat, XGroup> groups;
    for (const auto& [P, mult] : E.points) {
        XGroup& g = groups[P.a];
        if (m.is_rational()) {
            g.m_plus += mult;
        } else if (g.b0 == 0 || g.b0 == P.b) {
            g.b0 = P.b;
            g.m_plus += mult;
        } else if (g.b0 == -P.b) {
            g.m_minus += mult;
        } else {
            throw UnsupportedDivisor("inconsistent branch data over one x");
        }
    }
    Poly dden(Rat(1));
    for (auto& [a, g] : groups) {
        g.e = std::max({g.m_plus, g.m_minus, 0L});
        Poly lin(std::vector<Rat>{-a, Rat(1)});
        for (long k = 0; k < g.e; ++k) dden *= lin;
    }

    long degp = dden.degree() + (m.is_rational() ? n_inf : detail::floor_div(n_inf, 2));
    long degq = m.is_rational()
                    ? -1
                    : dden.degree() + detail::floor_div(n_inf - (2 * m.genus() + 1), 2);
    long np = std::max(degp + 1, 0L);
    long nq = std::max(degq + 1, 0L);
    SectionSpace out{m, E, {}};
    if (np + nq == 0) return out;

    std::vector<std::vector<Rat>> rows;
    for (const auto& [a, g] : groups) {
        long kp = g.e - g.m_plus;
        long km = m.is_rational() ? 0 : g.e - g.m_minus;
        int need = static_cast<int>(std::max({kp, km, 0L}));
        if (need == 0) continue;
        std::vector<Series> xpow;  // (a + t)^j
        for (long j = 0; j < std::max(np, nq); ++j)
            xpow.push_back(Series::from_poly(Poly::monomial(Rat(1), j).shift(a), need));
        std::vector<Series> xs;
        if (nq > 0) {
            Series S = Series::from_poly(m.f().shift(a), need).sqrt(g.b0);
            for (long j = 0; j < nq; ++j) xs.push_back(xpow[j] * S);
        }
        auto add_rows = [&](long k, int sign) {
            for (long r = 0; r < k; ++r) {
                std::vector<Rat> row(np + nq, Rat(0));
                for (long j = 0; j < np; ++j) row[j] = xpow[j].coeff(static_cast<int>(r));
                for (long j = 0; j < nq; ++j)
                    row[np + j] = Rat(sign) * xs[j].coeff(static_cast<int>(r));
                rows.push_back(std::move(row));
            }
        };
        add_rows(kp, 1);
        if (!m.is_rational()) add_rows(km, -1);
    }

    std::vector<std::vector<Rat>> sols;
    if (rows.empty()) {
        for (long j = 0; j < np + nq; ++j) {
            std::vector<Rat> v(np + nq, Rat(0));
            v[j] = 1;
            sols.push_back(std::move(v));
        }
    } else {
        QMat mat = QMat::from_rows(rows);
        QMat ker = mat.kernel();
        for (int i = 0; i < ker.rows(); ++i) sols.push_back(ker.row(i));
    }
    for (const auto& v : sols) {
        std::vector<Rat> pc(v.begin(), v.begin() + np);
        std::vector<Rat> qc(v.begin() + np, v.end());
        out.basis.push_back(fe_normalize({Poly(std::move(pc)), Poly(std::move(qc)), dden}));
    }
    return out;
}

inline long h0(const ComponentModel& m, const PlaceDivisor& E) {
    return rr_space(m, E).dim();
}

// Outcome of a genericity check on the node configuration of a model playing
// the role of the component opposite to index i.
struct ConditionReport {
    bool ok = true;
    std::optional<long> failing_n;               // first failing twist order
    std::optional<std::vector<int>> witness;     // failing subset / composition
    long expected = 0;
    long found = 0;
};

namespace detail {

inline void require_role(const ComponentModel& m, int i, const invariants::ProfileData& pd) {
    if (i != 1 && i != 2) throw std::invalid_argument("component index must be 1 or 2");
    if (m.genus() != pd.profile.opposite_genus(i))
        throw ModelError("model genus does not match the profile");
    if (m.delta() != pd.profile.delta)
        throw ModelError("marked-point count does not match delta");
}

}  // namespace detail

// h^0(omega(-n*Delta)) must equal its expected generic value for every n >= 0;
// the expected value is 0 from n = ell_i on and h^0 is nonincreasing in n, so
// checking n = 0..ell_i suffices.
inline ConditionReport check_condition_1(const ComponentModel& m, int i,
                                         const invariants::ProfileData& pd) {
    detail::require_role(m, i, pd);
    PlaceDivisor delta = delta_divisor(m);
    for (long n = 0; n <= pd.twist.ell_of(i); ++n) {
        long want = invariants::expected_h0_twisted_dualizing(pd.profile, i, n);
        long got = h0(m, (-n) * delta);
        if (got != want) return {false, n, std::nullopt, want, got};
    }
    return {};
}

// h^0(omega(-ell_i*Delta + I)) = 0 for every effective I < Delta of degree
// m_i; such I are exactly the m_i-element subsets of the nodes.
inline ConditionReport check_condition_3(const ComponentModel& m, int i,
                                         const invariants::ProfileData& pd) {
    detail::require_role(m, i, pd);
    long mi = pd.twist.m_of(i);
    long ell = pd.twist.ell_of(i);
    PlaceDivisor base = (-ell) * delta_divisor(m);
    long n = m.delta();
    std::vector<int> idx(mi);
    for (long j = 0; j < mi; ++j) idx[j] = static_cast<int>(j);
    while (true) {
        PlaceDivisor E = base;
        for (int k : idx) E.add_point(m.marked()[k], 1);
        long got = h0(m, E);
        if (got != 0) return {false, std::nullopt, idx, 0, got};
        // next mi-subset of {0..n-1} in lexicographic order
        long j = mi - 1;
        while (j >= 0 && idx[j] == n - mi + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (long k = j + 1; k < mi; ++k) idx[k] = idx[k - 1] + 1;
        if (mi == 0) break;
    }
    return {};
}

// h^0(omega(-D)) = 0 for every effective D supported on the nodes of degree
// equal to the model genus; enumerates all compositions.
inline ConditionReport check_condition_5(const ComponentModel& m, int i,
                                         const invariants::ProfileData& pd,
                                         long budget = 200000) {
    detail::require_role(m, i, pd);
    long total = m.genus();
    long n = m.delta();
    // C(total + n - 1, n - 1) cases
    long count = 1;
    for (long k = 1; k < n; ++k) count = count * (total + k) / k;
    if (count > budget) throw std::runtime_error("condition-5 enumeration exceeds budget");
    std::vector<int> comp(n, 0);
    comp[0] = static_cast<int>(total);
    while (true) {
        PlaceDivisor E;
        for (long k = 0; k < n; ++k)
            if (comp[k] != 0) E.add_point(m.marked()[k], -comp[k]);
        long got = h0(m, E);
        if (got != 0) return {false, std::nullopt, comp, 0, got};
        // next composition of `total` into n parts
        long j = n - 2;
        while (j >= 0 && comp[j] == 0) --j;
        if (j < 0) break;
        int tail = comp[n - 1];
        --comp[j];
        comp[j + 1] = tail + 1;
        if (j + 1 != n - 1) comp[n - 1] = 0;
        if (n == 1) break;
    }
    return {};
}

}  // namespace limitwp::curvemodel
