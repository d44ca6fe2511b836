#pragma once

// Dense univariate polynomials with exact rational coefficients.

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "limitwp/rational.hpp"

namespace limitwp {

class Poly {
public:
    Poly() = default;
    Poly(const Rat& c) {
        if (c != 0) coef_ = {c};
    }
    Poly(long c) : Poly(Rat(c)) {}
    explicit Poly(std::vector<Rat> coef) : coef_(std::move(coef)) { trim(); }

    static Poly x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

    // c * x^k
    static Poly monomial(const Rat& c, int k) {
        if (c == 0) return {};
        std::vector<Rat> v(k + 1);
        v[k] = c;
        return Poly(std::move(v));
    }

    bool is_zero() const { return coef_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coef_.size()) - 1; }

    const Rat& operator[](int i) const {
        static const Rat zero(0);
        if (i < 0 || i >= static_cast<int>(coef_.size())) return zero;
        return coef_[i];
    }
    const std::vector<Rat>& coefficients() const { return coef_; }

    const Rat& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of 0");
        return coef_.back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> v(std::max(a.coef_.size(), b.coef_.size()));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> v(std::max(a.coef_.size(), b.coef_.size()));
        for (size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
        return Poly(std::move(v));
    }
    Poly operator-() const {
        std::vector<Rat> v(coef_.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = -coef_[i];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> v(a.coef_.size() + b.coef_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coef_.size(); ++i)
            for (size_t j = 0; j < b.coef_.size(); ++j) v[i + j] += a.coef_[i] * b.coef_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const Rat& c, const Poly& a) {
        if (c == 0) return {};
        std::vector<Rat> v(a.coef_);
        for (auto& x : v) x *= c;
        return Poly(std::move(v));
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coef_ == b.coef_; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (coef_.size() <= 1) return {};
        std::vector<Rat> v(coef_.size() - 1);
        for (size_t i = 1; i < coef_.size(); ++i) v[i - 1] = Rat(static_cast<long>(i)) * coef_[i];
        return Poly(std::move(v));
    }

    // p(x + a), exact Taylor shift (Horner in x + a)
    Poly shift(const Rat& a) const {
        Poly base(std::vector<Rat>{a, Rat(1)});
        Poly r;
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) r = r * base + Poly(*it);
        return r;
    }

    // substitute c*x for x
    Poly scale_arg(const Rat& c) const {
        std::vector<Rat> v(coef_);
        Rat p(1);
        for (size_t i = 0; i < v.size(); ++i) {
            v[i] *= p;
            p *= c;
        }
        return Poly(std::move(v));
    }

    // reverse coefficients: x^deg * p(1/x)
    Poly reversed() const {
        std::vector<Rat> v(coef_.rbegin(), coef_.rend());
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return {};
        return (Rat(1) / leading()) * *this;
    }

    static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rat> rem(a.coef_);
        int db = b.degree();
        std::vector<Rat> quo(std::max<int>(a.degree() - db + 1, 0), Rat(0));
        for (int i = a.degree(); i >= db; --i) {
            if (rem[i] == 0) continue;
            Rat c = rem[i] / b.leading();
            quo[i - db] = c;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
        }
        q = Poly(std::move(quo));
        r = Poly(std::move(rem));
    }

    friend Poly operator/(const Poly& a, const Poly& b) {
        Poly q, r;
        divrem(a, b, q, r);
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) {
        Poly q, r;
        divrem(a, b, q, r);
        return r;
    }

    // exact division; throws if not divisible
    static Poly divexact(const Poly& a, const Poly& b) {
        Poly q, r;
        divrem(a, b, q, r);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (int i = p.degree(); i >= 0; --i) {
            if (p[i] == 0) continue;
            if (!first) os << " + ";
            os << "(" << p[i].get_str() << ")";
            if (i > 0) os << "*x^" << i;
            first = false;
        }
        return os;
    }

private:
    void trim() {
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
    }
    std::vector<Rat> coef_;  // coef_[i] multiplies x^i; invariant: no trailing zero
};

inline Poly gcd(const Poly& a, const Poly& b) {
    Poly f = a, g = b;
    while (!g.is_zero()) {
        f = f.monic();
        g = g.monic();
        Poly r = f % g;
        f = g;
        g = r;
    }
    return f.is_zero() ? f : f.monic();
}

inline bool is_squarefree(const Poly& p) {
    if (p.degree() <= 0) return true;
    return gcd(p, p.derivative()).degree() == 0;
}

// Yun's squarefree decomposition: p = c * prod factors[k].poly ^ factors[k].mult,
// with the listed polynomials squarefree, pairwise coprime, monic.
struct SquarefreePart {
    Poly poly;
    int mult;
};

inline std::vector<SquarefreePart> squarefree_decomposition(const Poly& p) {
    std::vector<SquarefreePart> out;
    if (p.degree() <= 0) return out;
    Poly f = p.monic();
    Poly d = f.derivative();
    Poly a = gcd(f, d);
    Poly b = Poly::divexact(f, a);
    Poly c = Poly::divexact(d, a) - b.derivative();
    int k = 1;
    while (b.degree() > 0) {
        Poly g = gcd(b, c);
        if (g.degree() > 0) out.push_back({g.monic(), k});
        b = Poly::divexact(b, g);
        c = Poly::divexact(c, g) - b.derivative();
        ++k;
    }
    return out;
}

inline Rat resultant(const Poly& a, const Poly& b) {
    // Euclidean resultant over Q
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Poly f = a, g = b;
    Rat res(1);
    bool swapped = false;
    while (true) {
        if (g.degree() == 0) {
            res *= rat_pow(g.leading(), f.degree());
            break;
        }
        Poly r = f % g;
        if (r.is_zero()) return Rat(0);
        long sgnflip = static_cast<long>(f.degree()) * g.degree();
        res *= rat_pow(g.leading(), f.degree() - r.degree());
        if (sgnflip % 2 == 1) res = -res;
        f = g;
        g = r;
    }
    return res;
}

}  // namespace limitwp
