#pragma once

// Irreducible factorization of univariate polynomials over Q: squarefree
// decomposition, Cantor-Zassenhaus factorization modulo a prime, multifactor
// Hensel lifting, and subset recombination.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "limitwp/poly.hpp"
#include "limitwp/rational.hpp"

namespace limitwp {
namespace detail {

// ---------------------------------------------------------------------------
// Arithmetic mod a word-sized prime p < 2^31.

using PolyP = std::vector<uint64_t>;  // coefficient i multiplies x^i, reduced mod p

inline void trim_p(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}
inline uint64_t inv_mod(uint64_t a, uint64_t p) { return pow_mod(a, p - 2, p); }

inline PolyP mul_p(const PolyP& a, const PolyP& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    trim_p(c);
    return c;
}

inline PolyP sub_p(const PolyP& a, const PolyP& b, uint64_t p) {
    PolyP c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        c[i] = (x + p - y) % p;
    }
    trim_p(c);
    return c;
}

inline PolyP scal_p(const PolyP& a, uint64_t c, uint64_t p) {
    PolyP r(a);
    for (auto& x : r) x = x * c % p;
    trim_p(r);
    return r;
}

inline PolyP monic_p(const PolyP& a, uint64_t p) {
    if (a.empty()) return a;
    return scal_p(a, inv_mod(a.back(), p), p);
}

inline PolyP rem_p(PolyP a, const PolyP& b, uint64_t p) {
    if (b.empty()) throw std::domain_error("mod-p division by zero");
    uint64_t binv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        uint64_t c = a.back() * binv % p;
        size_t off = a.size() - b.size();
        if (c)
            for (size_t j = 0; j < b.size(); ++j) a[off + j] = (a[off + j] + p - c * b[j] % p) % p;
        a.pop_back();
        trim_p(a);
    }
    return a;
}

inline PolyP gcd_p(PolyP a, PolyP b, uint64_t p) {
    while (!b.empty()) {
        PolyP r = rem_p(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic_p(a, p);
}

inline PolyP deriv_p(const PolyP& a, uint64_t p) {
    if (a.size() <= 1) return {};
    PolyP d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] % p * (i % p) % p;
    trim_p(d);
    return d;
}

inline PolyP powmod_p(PolyP base, Int e, const PolyP& mod, uint64_t p) {
    PolyP r{1};
    base = rem_p(std::move(base), mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem_p(mul_p(r, base, p), mod, p);
        base = rem_p(mul_p(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

// quotient of a by b mod p (exact when b | a)
inline PolyP div_p(const PolyP& a, const PolyP& b, uint64_t p) {
    PolyP rem = a;
    if (a.size() < b.size()) return {};
    PolyP quo(a.size() - b.size() + 1, 0);
    uint64_t binv = inv_mod(b.back(), p);
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        uint64_t c = rem[i] * binv % p;
        size_t off = i - (b.size() - 1);
        quo[off] = c;
        if (c)
            for (size_t j = 0; j < b.size(); ++j)
                rem[off + j] = (rem[off + j] + p - c * b[j] % p) % p;
    }
    trim_p(quo);
    return quo;
}

// deterministic PRNG, no external state
struct SplitMix {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Cantor-Zassenhaus equal-degree splitting: f squarefree, monic, product of
// irreducibles all of degree d.
inline void equal_degree_split(const PolyP& f, int d, uint64_t p, SplitMix& rng,
                               std::vector<PolyP>& out) {
    int n = static_cast<int>(f.size()) - 1;
    if (n == d) {
        out.push_back(monic_p(f, p));
        return;
    }
    Int exp(1);
    for (int i = 0; i < d; ++i) exp *= static_cast<unsigned long>(p);
    exp = (exp - 1) / 2;
    while (true) {
        PolyP a(n);
        for (auto& c : a) c = rng.next() % p;
        trim_p(a);
        if (a.size() <= 1) continue;
        PolyP g = gcd_p(f, a, p);
        if (g.size() <= 1 || g.size() >= f.size()) {
            PolyP b = powmod_p(a, exp, f, p);
            g = gcd_p(f, sub_p(b, PolyP{1}, p), p);
        }
        if (g.size() > 1 && g.size() < f.size()) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(div_p(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// Factor a squarefree monic polynomial mod p into monic irreducibles.
inline std::vector<PolyP> factor_mod_p(const PolyP& f0, uint64_t p) {
    std::vector<PolyP> out;
    PolyP f = monic_p(f0, p);
    SplitMix rng{0x1234567fULL ^ p};
    // distinct-degree
    PolyP h{0, 1};  // x
    int d = 0;
    while (static_cast<int>(f.size()) - 1 > 0) {
        ++d;
        if (2 * d > static_cast<int>(f.size()) - 1) {
            out.push_back(monic_p(f, p));
            break;
        }
        h = powmod_p(h, Int(p), f, p);
        PolyP hx = sub_p(h, PolyP{0, 1}, p);
        PolyP g = gcd_p(f, hx, p);
        if (g.size() > 1) {
            equal_degree_split(g, d, p, rng, out);
            f = div_p(f, g, p);
            if (f.size() <= 1) break;
            h = rem_p(h, f, p);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials and arithmetic mod p^k.

using PolyZ = std::vector<Int>;  // coefficient i multiplies x^i

inline void trim_z(PolyZ& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyZ mul_zm(const PolyZ& a, const PolyZ& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    PolyZ c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    trim_z(c);
    return c;
}

inline PolyZ add_zm(const PolyZ& a, const PolyZ& b, const Int& m) {
    PolyZ c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] += b[i];
        mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(), m.get_mpz_t());
    }
    trim_z(c);
    return c;
}

inline PolyZ sub_zm(const PolyZ& a, const PolyZ& b, const Int& m) {
    PolyZ c(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.size()) c[i] += a[i];
        if (i < b.size()) c[i] -= b[i];
        mpz_mod(c[i].get_mpz_t(), c[i].get_mpz_t(), m.get_mpz_t());
    }
    trim_z(c);
    return c;
}

// divide by a monic divisor mod m
inline void divrem_zm(const PolyZ& a, const PolyZ& b, const Int& m, PolyZ& q, PolyZ& r) {
    if (b.empty() || b.back() != 1) throw std::domain_error("divrem_zm needs monic divisor");
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    for (int i = static_cast<int>(r.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
        Int c = r[i];
        if (c == 0) continue;
        size_t off = i - (b.size() - 1);
        q[off] = c;
        for (size_t j = 0; j < b.size(); ++j) {
            r[off + j] -= c * b[j];
            mpz_mod(r[off + j].get_mpz_t(), r[off + j].get_mpz_t(), m.get_mpz_t());
        }
    }
    r.resize(std::min(r.size(), b.size() - 1));
    trim_z(r);
    trim_z(q);
}

struct HenselPair {
    PolyZ g, h;  // f = g*h mod m, g monic
    PolyZ s, t;  // s*g + t*h = 1 mod m
};

// One quadratic lift step: from modulus m to m2 (m2 | m^2).
inline void hensel_step(const PolyZ& f, HenselPair& P, const Int& m2) {
    // from e = (s*e)*g + (t*e)*h with t*e = q*g + r: the correction r keeps g
    // monic, and s*e + q*h lands on h with its degree capped by deg f - deg g
    PolyZ e = sub_zm(f, mul_zm(P.g, P.h, m2), m2);
    PolyZ q, r;
    divrem_zm(mul_zm(P.t, e, m2), P.g, m2, q, r);
    PolyZ g1 = add_zm(P.g, r, m2);
    PolyZ h1 = add_zm(P.h, add_zm(mul_zm(P.s, e, m2), mul_zm(q, P.h, m2), m2), m2);
    // lift the Bezout pair: with b = s*g1 + t*h1 - 1 and t*b = c*g1 + d,
    // (s - s*b - c*h1)*g1 + (t - d)*h1 = 1 - b^2 = 1 mod m2
    PolyZ b = sub_zm(add_zm(mul_zm(P.s, g1, m2), mul_zm(P.t, h1, m2), m2), PolyZ{Int(1)}, m2);
    PolyZ c, d;
    divrem_zm(mul_zm(P.t, b, m2), g1, m2, c, d);
    PolyZ t1 = sub_zm(P.t, d, m2);
    PolyZ s1 = sub_zm(P.s, add_zm(mul_zm(P.s, b, m2), mul_zm(c, h1, m2), m2), m2);
    P.g = std::move(g1);
    P.h = std::move(h1);
    P.s = std::move(s1);
    P.t = std::move(t1);
}

// Extended gcd of coprime polynomials mod p: s*g + t*h = 1.
inline void bezout_p(const PolyP& g, const PolyP& h, uint64_t p, PolyP& s, PolyP& t) {
    // extended Euclid over F_p
    PolyP r0 = g, r1 = h;
    PolyP s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        PolyP rem = r0, quo;
        uint64_t inv = inv_mod(r1.back(), p);
        if (rem.size() >= r1.size()) quo.assign(rem.size() - r1.size() + 1, 0);
        for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(r1.size()) - 1; --i) {
            uint64_t c = rem[i] * inv % p;
            size_t off = i - (r1.size() - 1);
            if (off < quo.size()) quo[off] = c;
            if (c)
                for (size_t j = 0; j < r1.size(); ++j)
                    rem[off + j] = (rem[off + j] + p - c * r1[j] % p) % p;
        }
        trim_p(rem);
        trim_p(quo);
        PolyP s2 = sub_p(s0, mul_p(quo, s1, p), p);
        PolyP t2 = sub_p(t0, mul_p(quo, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::logic_error("bezout_p: inputs not coprime");
    uint64_t inv = inv_mod(r0[0], p);
    s = scal_p(s0, inv, p);
    t = scal_p(t0, inv, p);
}

inline PolyZ to_z(const PolyP& a) {
    PolyZ z(a.size());
    for (size_t i = 0; i < a.size(); ++i) z[i] = Int(static_cast<unsigned long>(a[i]));
    return z;
}
inline PolyP to_p(const PolyZ& a, uint64_t p) {
    PolyP r(a.size());
    Int pm(static_cast<unsigned long>(p));
    for (size_t i = 0; i < a.size(); ++i) {
        Int t;
        mpz_mod(t.get_mpz_t(), a[i].get_mpz_t(), pm.get_mpz_t());
        r[i] = t.get_ui();
    }
    trim_p(r);
    return r;
}

// Lift the factorization f = lc(f)*prod(monic factors_i) from mod p to mod
// target (a power of p).  Returns the monic lifted factors mod target.
inline std::vector<PolyZ> hensel_lift_tree(const PolyZ& f, const std::vector<PolyP>& factors,
                                           uint64_t p, const Int& target) {
    if (factors.size() == 1) {
        // monic factor equal to f/lc mod target
        Int lcinv;
        Int lc = f.back();
        if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t()) == 0)
            throw std::logic_error("leading coefficient not invertible mod p^k");
        PolyZ g(f);
        for (auto& c : g) {
            c *= lcinv;
            mpz_mod(c.get_mpz_t(), c.get_mpz_t(), target.get_mpz_t());
        }
        return {g};
    }
    size_t half = factors.size() / 2;
    PolyP gp{1}, hp{1};
    for (size_t i = 0; i < half; ++i) gp = mul_p(gp, factors[i], p);
    for (size_t i = half; i < factors.size(); ++i) hp = mul_p(hp, factors[i], p);
    // f = g * (lc*h) mod p with g monic
    PolyP fp = to_p(f, p);
    uint64_t lcp = fp.back();
    PolyP lch = scal_p(hp, lcp, p);
    HenselPair pair;
    pair.g = to_z(gp);
    pair.h = to_z(lch);
    PolyP s, t;
    bezout_p(gp, lch, p, s, t);
    pair.s = to_z(s);
    pair.t = to_z(t);

    // square the modulus until it reaches `target` (target is p^(2^j))
    Int m(static_cast<unsigned long>(p));
    while (m < target) {
        Int m2 = m * m;
        hensel_step(f, pair, m2);
        m = m2;
    }
    std::vector<PolyP> left(factors.begin(), factors.begin() + half);
    std::vector<PolyP> right(factors.begin() + half, factors.end());
    // left subtree: monic product; right subtree carries the leading coefficient
    std::vector<PolyZ> out = hensel_lift_tree(pair.g, left, p, m);
    std::vector<PolyZ> out2 = hensel_lift_tree(pair.h, right, p, m);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public interface.

struct QFactor {
    Poly poly;  // monic irreducible over Q
    int mult;
};

namespace detail {

// Factor a primitive squarefree integer polynomial (degree >= 1) into
// irreducible monic polynomials over Q.
inline std::vector<Poly> factor_squarefree_z(const PolyZ& f) {
    int n = static_cast<int>(f.size()) - 1;
    auto monic_q = [&](const PolyZ& g) {
        std::vector<Rat> c(g.size());
        for (size_t i = 0; i < g.size(); ++i) c[i] = Rat(g[i]);
        return Poly(std::move(c)).monic();
    };
    if (n == 1) return {monic_q(f)};

    static const uint64_t primes[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                                      1000099, 1000117, 1000121, 1000133, 1000151,
                                      1000159, 1000171, 1000183, 1000187, 1000193};
    uint64_t best_p = 0;
    std::vector<PolyP> best_factors;
    int tried = 0;
    for (uint64_t p : primes) {
        PolyP fp = to_p(f, p);
        if (static_cast<int>(fp.size()) - 1 != n) continue;  // p | lc
        if (gcd_p(fp, deriv_p(fp, p), p).size() > 1) continue;  // not squarefree mod p
        auto factors = factor_mod_p(fp, p);
        if (best_p == 0 || factors.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(factors);
        }
        if (++tried >= 3 || best_factors.size() == 1) break;
    }
    if (best_p == 0) throw std::logic_error("no usable prime for factorization");
    if (best_factors.size() == 1) return {monic_q(f)};

    // Landau-Mignotte style bound on factor coefficients (factors of f over Z
    // with leading coefficient dividing lc(f))
    Int norm1(0);
    for (const auto& c : f) norm1 += abs(c);
    Int bound = abs(f.back()) * norm1;
    bound <<= n + 1;  // 2^(n+1) slack
    Int target(static_cast<unsigned long>(best_p));
    while (target <= 2 * bound) target *= target;

    std::vector<PolyZ> lifted = hensel_lift_tree(f, best_factors, best_p, target);
    // modulus actually reached inside the tree: recompute as the power used
    Int modulus(static_cast<unsigned long>(best_p));
    while (modulus < target) modulus *= modulus;

    auto symm = [&](PolyZ g) {
        Int half = modulus / 2;
        for (auto& c : g) {
            mpz_mod(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
            if (c > half) c -= modulus;
        }
        trim_z(g);
        return g;
    };
    auto primitive = [](PolyZ g) {
        Int content(0);
        for (const auto& c : g) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content > 1)
            for (auto& c : g) c /= content;
        if (!g.empty() && g.back() < 0)
            for (auto& c : g) c = -c;
        return g;
    };
    auto try_divide = [](const PolyZ& a, const PolyZ& b, PolyZ& q) -> bool {
        // exact division in Z[x] after scaling: a*lc(b)^k = q*b requires care;
        // do rational division and check integrality is unnecessary -- factors
        // of a primitive polynomial are primitive, so plain pseudo-division
        // with divisibility checks works.
        if (b.empty()) return false;
        PolyZ r = a;
        q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
        for (int i = static_cast<int>(r.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
            if (static_cast<size_t>(i) >= r.size() || r[i] == 0) continue;
            if (r[i] % b.back() != 0) return false;
            Int c = r[i] / b.back();
            size_t off = i - (b.size() - 1);
            q[off] = c;
            for (size_t j = 0; j < b.size(); ++j) r[off + j] -= c * b[j];
        }
        for (const auto& c : r)
            if (c != 0) return false;
        trim_z(q);
        return true;
    };

    std::vector<Poly> result;
    std::vector<PolyZ> mods = lifted;  // unused monic factors mod `modulus`
    PolyZ rest = f;

    // Cheap pre-filter: a true factor g (normalized to lc(rest)) satisfies
    // g(0) | lc(rest)*rest(0), and |g(0)| < modulus/2, so the symmetric lift
    // of the modular product of constant terms must divide that target.
    Int half = modulus / 2;
    auto passes_value_filter = [&](const std::vector<size_t>& idx) -> bool {
        if (rest.empty() || rest[0] == 0) return true;
        Int v = rest.back();
        for (size_t i : idx) {
            v *= mods[i].empty() ? Int(0) : mods[i][0];
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
        }
        if (v > half) v -= modulus;
        if (v == 0) return false;
        Int target = rest.back() * rest[0];
        return mpz_divisible_p(target.get_mpz_t(), v.get_mpz_t()) != 0;
    };

    size_t card = 1;
    while (2 * card <= mods.size()) {
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        bool found = false;
        while (true) {
            if (!passes_value_filter(idx)) {
                int pos0 = static_cast<int>(card) - 1;
                while (pos0 >= 0 && idx[pos0] == mods.size() - card + pos0) --pos0;
                if (pos0 < 0) break;
                ++idx[pos0];
                for (size_t i = pos0 + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
                continue;
            }
            PolyZ cand{rest.back()};
            for (size_t i = 0; i < card; ++i) cand = mul_zm(cand, mods[idx[i]], modulus);
            cand = primitive(symm(std::move(cand)));
            PolyZ q;
            if (!cand.empty() && try_divide(rest, cand, q)) {
                result.push_back(monic_q(cand));
                rest = primitive(q);
                for (size_t i = card; i-- > 0;) mods.erase(mods.begin() + idx[i]);
                found = true;
                break;
            }
            int pos = static_cast<int>(card) - 1;
            while (pos >= 0 && idx[pos] == mods.size() - card + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (size_t i = pos + 1; i < card; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++card;
    }
    if (rest.size() >= 2) result.push_back(monic_q(rest));
    return result;
}

inline bool is_word_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline uint64_t next_word_prime(uint64_t n) {
    do {
        ++n;
    } while (!is_word_prime(n));
    return n;
}

// Clear denominators and divide by the content; leading coefficient positive.
inline PolyZ rat_to_primitive_z(const Poly& p) {
    Int den(1);
    for (const auto& c : p.coefficients())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    PolyZ z(p.coefficients().size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = Rat(p.coefficients()[i] * Rat(den)).get_num();
    Int content(0);
    for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    if (content > 1)
        for (auto& c : z) c /= content;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

}  // namespace detail

// Monic gcd over Q via modular images: gcd degrees modulo good primes bound
// the true degree, the coefficients are recovered by Chinese remaindering,
// and the stabilized candidate is verified by exact trial division.  Large
// inputs with large coefficients stay cheap because all Euclidean remainder
// sequences run over word-sized prime fields; small inputs fall back to the
// plain rational Euclidean algorithm.
inline Poly gcd_big(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero() || std::min(a.degree(), b.degree()) <= 24) return gcd(a, b);
    detail::PolyZ az = detail::rat_to_primitive_z(a);
    detail::PolyZ bz = detail::rat_to_primitive_z(b);
    Int lcg;
    mpz_gcd(lcg.get_mpz_t(), az.back().get_mpz_t(), bz.back().get_mpz_t());
    uint64_t p = 999983;
    int best_deg = -1;
    Int modulus(0);
    detail::PolyZ acc, prev;
    for (int guard = 0; guard < 1000000; ++guard) {
        p = detail::next_word_prime(p);
        if (mpz_divisible_ui_p(az.back().get_mpz_t(), p) ||
            mpz_divisible_ui_p(bz.back().get_mpz_t(), p))
            continue;
        detail::PolyP gp = detail::gcd_p(detail::to_p(az, p), detail::to_p(bz, p), p);
        int dg = static_cast<int>(gp.size()) - 1;
        if (dg == 0) return Poly(Rat(1));
        if (best_deg >= 0 && dg > best_deg) continue;  // unlucky prime
        if (best_deg < 0 || dg < best_deg) {
            best_deg = dg;
            modulus = 0;
            prev.clear();
        }
        // normalize the image to leading coefficient gcd(lc(a), lc(b))
        Int lp;
        mpz_mod(lp.get_mpz_t(), lcg.get_mpz_t(), Int(static_cast<unsigned long>(p)).get_mpz_t());
        gp = detail::scal_p(gp, lp.get_ui(), p);
        Int pI(static_cast<unsigned long>(p));
        if (modulus == 0) {
            acc.assign(gp.size(), Int(0));
            for (size_t i = 0; i < gp.size(); ++i) {
                acc[i] = Int(static_cast<unsigned long>(gp[i]));
                if (2 * acc[i] > pI) acc[i] -= pI;
            }
            modulus = pI;
        } else {
            Int inv;
            mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pI.get_mpz_t());
            for (size_t i = 0; i < acc.size(); ++i) {
                Int r(static_cast<unsigned long>(i < gp.size() ? gp[i] : 0));
                Int t = (r - acc[i]) * inv;
                mpz_mod(t.get_mpz_t(), t.get_mpz_t(), pI.get_mpz_t());
                if (2 * t > pI) t -= pI;
                acc[i] += modulus * t;
            }
            modulus *= pI;
        }
        if (!prev.empty() && acc == prev) {
            detail::PolyZ cand = acc;
            Int content(0);
            for (const auto& c : cand)
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
            if (content > 1)
                for (auto& c : cand) c /= content;
            std::vector<Rat> qc(cand.size());
            for (size_t i = 0; i < cand.size(); ++i) qc[i] = Rat(cand[i]);
            Poly g = Poly(std::move(qc)).monic();
            if ((a % g).is_zero() && (b % g).is_zero()) return g;
        }
        prev = acc;
    }
    throw std::logic_error("modular gcd failed to stabilize");
}

// Yun's squarefree decomposition driven by the modular gcd; same contract as
// squarefree_decomposition.
inline std::vector<SquarefreePart> squarefree_decomposition_big(const Poly& p) {
    std::vector<SquarefreePart> out;
    if (p.degree() <= 0) return out;
    Poly f = p.monic();
    Poly d = f.derivative();
    Poly a = gcd_big(f, d);
    Poly b = Poly::divexact(f, a);
    Poly c = Poly::divexact(d, a) - b.derivative();
    int k = 1;
    while (b.degree() > 0) {
        Poly g = gcd_big(b, c);
        if (g.degree() > 0) out.push_back({g.monic(), k});
        b = Poly::divexact(b, g);
        c = Poly::divexact(c, g) - b.derivative();
        ++k;
    }
    return out;
}

// Full irreducible factorization over Q; the constant is dropped (all returned
// factors are monic).
inline std::vector<QFactor> factor_rationals(const Poly& p) {
    std::vector<QFactor> out;
    for (const auto& part : squarefree_decomposition_big(p)) {
        // clear denominators, take the primitive integer model
        Int den(1);
        for (const auto& c : part.poly.coefficients())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        detail::PolyZ z(part.poly.coefficients().size());
        for (size_t i = 0; i < z.size(); ++i) {
            Rat c = part.poly.coefficients()[i] * Rat(den);
            z[i] = c.get_num();
        }
        Int content(0);
        for (const auto& c : z) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content > 1)
            for (auto& c : z) c /= content;
        for (auto& f : detail::factor_squarefree_z(z)) out.push_back({std::move(f), part.mult});
    }
    return out;
}

}  // namespace limitwp
