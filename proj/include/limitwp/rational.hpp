#pragma once

// Exact rational scalars. Everything in this library is exact; there is no
// floating point anywhere.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace limitwp {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (s.find('/') != std::string::npos && r.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + s);
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Exact integer square root test.
inline std::optional<Int> exact_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Square root of a rational, when it exists in Q.
inline std::optional<Rat> exact_sqrt(const Rat& r) {
    auto num = exact_sqrt(Int(r.get_num()));
    auto den = exact_sqrt(Int(r.get_den()));
    if (!num || !den) return std::nullopt;
    return Rat(*num, *den);
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) q += 1;
    return q;
}

inline long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("integer too large");
    return n.get_si();
}

// r^e for integer e (e may be negative when r != 0).
inline Rat rat_pow(const Rat& r, long e) {
    if (e == 0) return Rat(1);
    Rat base = r;
    if (e < 0) {
        if (r == 0) throw std::domain_error("0^negative");
        base = 1 / r;
        e = -e;
    }
    Rat acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

}  // namespace limitwp
