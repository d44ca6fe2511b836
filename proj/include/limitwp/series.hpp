#pragma once

// Truncated Laurent series with exact rational coefficients.  A series knows
// the absolute order `prec` below which its coefficients are stored; terms of
// order >= prec are unknown.  All arithmetic propagates truncation so that no
// unknown term is ever silently treated as zero.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "limitwp/poly.hpp"
#include "limitwp/rational.hpp"

namespace limitwp {

class Series {
public:
    // zero series known up to (not including) order prec
    explicit Series(int prec = 0) : lo_(prec), prec_(prec) {}

    // coefficients c[k] of t^(lo+k), known modulo t^prec
    Series(int lo, std::vector<Rat> c, int prec) : lo_(lo), coef_(std::move(c)), prec_(prec) {
        if (lo_ + static_cast<int>(coef_.size()) > prec_) coef_.resize(prec_ - lo_ < 0 ? 0 : prec_ - lo_);
        normalize();
    }

    static Series from_poly(const Poly& p, int prec) {
        std::vector<Rat> c(p.coefficients());
        return Series(0, std::move(c), prec);
    }
    static Series constant(const Rat& r, int prec) { return Series(0, {r}, prec); }
    // c * t^k
    static Series monomial(const Rat& c, int k, int prec) { return Series(k, {c}, prec); }

    int precision() const { return prec_; }
    bool known_zero() const { return coef_.empty(); }

    // valuation; only meaningful when not known_zero
    int valuation() const {
        if (coef_.empty()) throw std::domain_error("valuation of (truncation-)zero series");
        return lo_;
    }

    Rat coeff(int k) const {
        if (k >= prec_) throw std::out_of_range("coefficient beyond series precision");
        if (k < lo_ || k >= lo_ + static_cast<int>(coef_.size())) return Rat(0);
        return coef_[k - lo_];
    }

    Series truncated(int prec) const {
        Series s = *this;
        if (prec < s.prec_) {
            s.prec_ = prec;
            int keep = prec - s.lo_;
            s.coef_.resize(std::max(keep, 0));
            s.normalize();
        }
        return s;
    }

    friend Series operator+(const Series& a, const Series& b) {
        int prec = std::min(a.prec_, b.prec_);
        int lo = std::min(a.lo_, b.lo_);
        std::vector<Rat> c(std::max(prec - lo, 0), Rat(0));
        auto acc = [&](const Series& s, int sign) {
            for (int k = 0; k < static_cast<int>(s.coef_.size()); ++k) {
                int e = s.lo_ + k;
                if (e < prec) c[e - lo] += sign > 0 ? s.coef_[k] : -s.coef_[k];
            }
        };
        acc(a, 1);
        acc(b, 1);
        return Series(lo, std::move(c), prec);
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
    Series operator-() const {
        Series s = *this;
        for (auto& c : s.coef_) c = -c;
        return s;
    }

    friend Series operator*(const Series& a, const Series& b) {
        // If a factor is zero to its precision, the product is zero to a
        // precision shifted by the other factor's valuation floor.
        int alo = a.coef_.empty() ? a.prec_ : a.lo_;
        int blo = b.coef_.empty() ? b.prec_ : b.lo_;
        int prec = std::min(a.prec_ + blo, b.prec_ + alo);
        if (a.coef_.empty() || b.coef_.empty()) return Series(prec);
        int lo = alo + blo;
        std::vector<Rat> c(std::max(prec - lo, 0), Rat(0));
        for (int i = 0; i < static_cast<int>(a.coef_.size()); ++i) {
            if (a.coef_[i] == 0) continue;
            for (int j = 0; j < static_cast<int>(b.coef_.size()); ++j) {
                int e = a.lo_ + i + b.lo_ + j;
                if (e < prec) c[e - lo] += a.coef_[i] * b.coef_[j];
            }
        }
        return Series(lo, std::move(c), prec);
    }

    friend Series operator*(const Rat& r, const Series& a) {
        if (r == 0) return Series(a.prec_);
        Series s = a;
        for (auto& c : s.coef_) c *= r;
        s.normalize();
        return s;
    }

    // multiplicative inverse; requires a known nonzero leading term
    Series inverse() const {
        if (coef_.empty()) throw std::domain_error("inverse of (truncation-)zero series");
        if (coef_[0] == 0) throw std::logic_error("series not normalized");
        int n = prec_ - lo_;  // number of known coefficients
        std::vector<Rat> inv(n, Rat(0));
        Rat lead = 1 / coef_[0];
        inv[0] = lead;
        for (int k = 1; k < n; ++k) {
            Rat s(0);
            for (int j = 1; j <= k; ++j) {
                Rat aj = j < static_cast<int>(coef_.size()) ? coef_[j] : Rat(0);
                if (aj != 0) s += aj * inv[k - j];
            }
            inv[k] = -lead * s;
        }
        return Series(-lo_, std::move(inv), -lo_ + n);
    }

    friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

    // term-by-term derivative d/dt
    Series derivative() const {
        std::vector<Rat> out(coef_.size(), Rat(0));
        for (int k = 0; k < static_cast<int>(coef_.size()); ++k) {
            int e = lo_ + k;
            out[k] = Rat(e) * coef_[k];
        }
        return Series(lo_ - 1, std::move(out), prec_ - 1);
    }

    // square root with prescribed constant-term root `seed`, seed^2 == coeff(0);
    // valuation must be even (caller shifts)
    Series sqrt(const Rat& seed) const {
        if (coef_.empty()) throw std::domain_error("sqrt of (truncation-)zero series");
        if (lo_ % 2 != 0) throw std::domain_error("sqrt of odd valuation");
        if (seed * seed != coef_[0]) throw std::invalid_argument("bad sqrt seed");
        int n = prec_ - lo_;
        std::vector<Rat> s(n, Rat(0));
        s[0] = seed;
        Rat inv2lead = 1 / (2 * seed);
        // s_k from (sum_{j} s_j s_{k-j}) = a_k
        for (int k = 1; k < n; ++k) {
            Rat acc(0);
            for (int j = 1; j < k; ++j) acc += s[j] * s[k - j];
            Rat ak = k < static_cast<int>(coef_.size()) ? coef_[k] : Rat(0);
            s[k] = (ak - acc) * inv2lead;
        }
        return Series(lo_ / 2, std::move(s), lo_ / 2 + n);
    }

    // shift: multiply by t^k
    Series shifted(int k) const {
        Series s = *this;
        s.lo_ += k;
        s.prec_ += k;
        return s;
    }

private:
    void normalize() {
        while (!coef_.empty() && coef_.front() == 0) {
            coef_.erase(coef_.begin());
            ++lo_;
        }
        while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
        if (coef_.empty()) lo_ = prec_;
    }

    int lo_ = 0;
    std::vector<Rat> coef_;
    int prec_ = 0;
};

}  // namespace limitwp
