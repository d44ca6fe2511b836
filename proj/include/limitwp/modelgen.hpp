#pragma once

// Deterministic generation of random component models: small-height rational
// coordinates, rejection sampling until the requested genericity conditions
// hold.  Used by the test suites and the CLI selftest.

#include <stdexcept>

#include "limitwp/curvemodel.hpp"
#include "limitwp/invariants.hpp"

namespace limitwp::modelgen {

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    long uniform(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    long nonzero(long height) {
        long v = uniform(1, height);
        return next() & 1 ? v : -v;
    }
};

namespace detail {

inline std::vector<Rat> distinct_ints(Rng& rng, long count, long height) {
    std::vector<Rat> xs;
    while (static_cast<long>(xs.size()) < count) {
        Rat c(rng.uniform(-height, height));
        bool seen = false;
        for (const Rat& x : xs) seen = seen || x == c;
        if (!seen) xs.push_back(c);
    }
    return xs;
}

// Lagrange interpolation through (xs[k], vs[k]).
inline Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& vs) {
    Poly acc;
    for (size_t k = 0; k < xs.size(); ++k) {
        Poly term(vs[k]);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == k) continue;
            term *= (1 / (xs[k] - xs[j])) * Poly(std::vector<Rat>{-xs[j], Rat(1)});
        }
        acc += term;
    }
    return acc;
}

}  // namespace detail

// A random component of the given genus with `delta` marked rational points.
// Hyperelliptic models are produced monic of degree 2*genus+1 by
// interpolating through squared marked values and rescaling x; when
// `conjugate_pair` is set, the first two marked points form a hyperelliptic
// conjugate pair (a, b), (a, -b) — the standard engineered genericity
// failure.
inline curvemodel::ComponentModel random_component(Rng& rng, long genus, long delta,
                                                   bool conjugate_pair = false,
                                                   long height = 10) {
    if (genus == 0) {
        if (conjugate_pair) throw std::invalid_argument("no involution pairs on a rational model");
        std::vector<Rat> xs = detail::distinct_ints(rng, delta, height);
        return curvemodel::ComponentModel::rational_line(xs);
    }
    long deg = 2 * genus + 1;
    long n_x = deg + 1;                               // interpolation nodes
    long marked_x = conjugate_pair ? delta - 1 : delta;  // distinct marked x-values
    if (conjugate_pair && delta < 2) throw std::invalid_argument("pair needs delta >= 2");
    if (marked_x > n_x) throw std::invalid_argument("delta too large for this genus");
    for (int attempt = 0; attempt < 400; ++attempt) {
        std::vector<Rat> xs = detail::distinct_ints(rng, n_x, height);
        std::vector<Rat> bs;
        std::vector<Rat> vs(n_x);
        for (long k = 0; k < n_x; ++k) {
            if (k < marked_x) {
                Rat b(rng.nonzero(5));
                bs.push_back(b);
                vs[k] = b * b;
            } else {
                vs[k] = Rat(rng.nonzero(height));
            }
        }
        Poly f = detail::interpolate(xs, vs);
        if (f.degree() != deg || !is_squarefree(f)) continue;
        Rat c = f.leading();
        std::vector<curvemodel::MarkedPoint> marked;
        if (c != 1) {
            // x -> x/c makes f monic; points move to (c*a, b*c^genus)
            f = rat_pow(c, deg - 1) * f.scale_arg(1 / c);
            Rat cg = rat_pow(c, genus);
            for (long k = 0; k < marked_x; ++k) marked.push_back({c * xs[k], bs[k] * cg});
        } else {
            for (long k = 0; k < marked_x; ++k) marked.push_back({xs[k], bs[k]});
        }
        if (conjugate_pair) marked.insert(marked.begin() + 1, {marked[0].a, -marked[0].b});
        return curvemodel::ComponentModel::hyperelliptic(f, marked);
    }
    throw std::runtime_error("model generation failed to converge");
}

// A component for the role opposite to index i that passes the genericity
// conditions on its node configuration (retrying deterministically).
inline curvemodel::ComponentModel generic_component(Rng& rng, const invariants::ProfileData& pd,
                                                    int i, long height = 10) {
    long genus = pd.profile.opposite_genus(i);
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto m = random_component(rng, genus, pd.profile.delta, false, height);
        if (!curvemodel::check_condition_1(m, i, pd).ok) continue;
        if (!curvemodel::check_condition_3(m, i, pd).ok) continue;
        if (!curvemodel::check_condition_5(m, i, pd).ok) continue;
        return m;
    }
    throw std::runtime_error("no generic configuration found");
}

// A vector of delta nonzero scalars (gluing data).
inline std::vector<Rat> random_glue(Rng& rng, long delta, long height = 7) {
    std::vector<Rat> g;
    for (long k = 0; k < delta; ++k) g.push_back(Rat(rng.nonzero(height)));
    return g;
}

}  // namespace limitwp::modelgen
