#pragma once

// Semi-stable chain models: each node of the two-component curve is replaced
// by a chain of rational curves, with exact dual-graph bookkeeping — genus,
// twist-degree calculus for integer component weights, the printed
// constraints on admissible weight tuples, and normalization of the rational
// chain-length classes.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "limitwp/invariants.hpp"
#include "limitwp/rational.hpp"

namespace limitwp::chains {

struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainComponent {
    long genus;     // 0 for inserted rational curves
    long node;      // original node index for chain curves, -1 for the two ends
    long pos;       // position along its chain, 1-based; 0 for the ends
    std::string label;
};

// integer weight per component, indexed like ChainModel::comps
using TwistTuple = std::vector<long>;

struct ChainModel {
    invariants::GenusProfile profile;
    std::vector<long> mu;                       // positive chain multiplicities per node
    std::vector<ChainComponent> comps;          // [0], [1]: the two original components
    std::vector<std::array<long, 2>> edges;     // dual-graph adjacencies, all transversal

    long size() const { return static_cast<long>(comps.size()); }

    long degree_at(long k) const {  // number of edges at component k
        long d = 0;
        for (const auto& e : edges) d += (e[0] == k) + (e[1] == k);
        return d;
    }

    // sum of component genera plus the first Betti number of the dual graph
    long arithmetic_genus() const {
        long s = 0;
        for (const auto& c : comps) s += c.genus;
        return s + static_cast<long>(edges.size()) - size() + 1;
    }
};

// Replace node p by a path of mu[p]-1 rational curves between the two
// original components (mu[p] = 1 keeps the node itself).
inline ChainModel build_chain(const invariants::GenusProfile& p, const std::vector<long>& mu) {
    if (static_cast<long>(mu.size()) != p.delta)
        throw ChainError("multiplicity tuple length must equal the node count");
    for (long m : mu)
        if (m <= 0) throw ChainError("chain multiplicities must be positive");
    ChainModel c{p, mu, {}, {}};
    c.comps.push_back({p.g1, -1, 0, "C1"});
    c.comps.push_back({p.g2, -1, 0, "C2"});
    for (long node = 0; node < p.delta; ++node) {
        long prev = 0;  // C1
        for (long q = 1; q < mu[node]; ++q) {
            long id = c.size();
            c.comps.push_back({0, node, q,
                               "E" + std::to_string(node + 1) + "." + std::to_string(q)});
            c.edges.push_back({prev, id});
            prev = id;
        }
        c.edges.push_back({prev, 1});  // attach to C2
    }
    return c;
}

// Degree on each component of the dualizing sheaf twisted by the weighted
// sum of components: 2*genus - 2 + #edges plus, per edge, the weight
// difference across it.  The total is always 2g - 2 and a constant shift of
// the weights changes nothing (the sum of all components is principal).
inline std::vector<long> twist_degrees(const ChainModel& c, const TwistTuple& lambda) {
    if (static_cast<long>(lambda.size()) != c.size())
        throw ChainError("weight tuple must cover every component");
    std::vector<long> deg(c.comps.size());
    for (long k = 0; k < c.size(); ++k) deg[k] = 2 * c.comps[k].genus - 2 + c.degree_at(k);
    for (const auto& e : c.edges) {
        deg[e[0]] += lambda[e[1]] - lambda[e[0]];
        deg[e[1]] += lambda[e[0]] - lambda[e[1]];
    }
    return deg;
}

struct ConstraintReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// The printed constraints on the weight tuple attached to side i: zero on
// C_i, nonnegative everywhere, and at most the opposite genus on every
// component meeting C_i.
inline ConstraintReport validate_lambda_constraints(const ChainModel& c, int i,
                                                    const TwistTuple& lambda) {
    if (i != 1 && i != 2) throw ChainError("side index must be 1 or 2");
    if (static_cast<long>(lambda.size()) != c.size())
        throw ChainError("weight tuple must cover every component");
    ConstraintReport rep;
    auto flag = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    long ci = i - 1;
    if (lambda[ci] != 0) flag("weight on " + c.comps[ci].label + " must be zero");
    long bound = c.profile.opposite_genus(i);
    for (long k = 0; k < c.size(); ++k)
        if (lambda[k] < 0) flag("negative weight on " + c.comps[k].label);
    for (const auto& e : c.edges) {
        long other = e[0] == ci ? e[1] : (e[1] == ci ? e[0] : -1);
        if (other >= 0 && lambda[other] > bound)
            flag("weight on " + c.comps[other].label + " exceeds the opposite genus");
    }
    return rep;
}

// Primitive integer representative of a class of positive rational tuples:
// clear denominators, divide by the gcd.  Idempotent and scale-invariant.
inline std::vector<long> normalize_mu(const std::vector<Rat>& mu) {
    if (mu.empty()) throw ChainError("empty multiplicity tuple");
    for (const Rat& x : mu)
        if (x <= 0) throw ChainError("chain multiplicities must be positive");
    Int l(1);
    for (const Rat& x : mu) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    Int g(0);
    std::vector<Int> cleared;
    for (const Rat& x : mu) {
        Rat v = x * Rat(l);
        cleared.push_back(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cleared.back().get_mpz_t());
    }
    std::vector<long> out;
    for (const Int& v : cleared) out.push_back(to_long(v / g));
    return out;
}

// The exact weight tuple attached to a chain model has a numerical recipe
// that is not reproduced here; this enumerator applies only NECESSARY
// conditions (the printed constraints plus degree sanity) and so returns an
// overapproximation containing the true tuple.
struct LambdaSearchResult {
    std::vector<TwistTuple> tuples;
    bool complete = false;  // false when the enumeration budget ran out
    long examined = 0;
};

inline LambdaSearchResult feasible_lambda_search(const ChainModel& c, int i, long budget) {
    if (i != 1 && i != 2) throw ChainError("side index must be 1 or 2");
    long n = c.size();
    long ci = i - 1, copp = 2 - i;
    long bound = c.profile.opposite_genus(i);
    long g = c.profile.genus();
    long gi = i == 1 ? c.profile.g1 : c.profile.g2;
    LambdaSearchResult res;
    TwistTuple lambda(n, 0);

    // odometer over all weights in [0, bound], zero fixed on C_i
    std::vector<long> free;
    for (long k = 0; k < n; ++k)
        if (k != ci) free.push_back(k);
    while (true) {
        if (res.examined++ >= budget) return res;  // complete stays false
        bool keep = validate_lambda_constraints(c, i, lambda).ok;
        if (keep) {
            auto deg = twist_degrees(c, lambda);
            if (deg[ci] < 2 * gi - 2 + c.profile.delta) keep = false;
            long total = 0;
            for (long k = 0; k < n && keep; ++k) {
                total += deg[k];
                if (k != copp && deg[k] < 0) keep = false;
            }
            if (keep && total != 2 * g - 2) keep = false;
        }
        if (keep) res.tuples.push_back(lambda);
        size_t j = 0;
        while (j < free.size() && lambda[free[j]] == bound) lambda[free[j++]] = 0;
        if (j == free.size()) break;
        ++lambda[free[j]];
    }
    res.complete = true;
    return res;
}

// Number of irreducible components of the family of limit linear-system
// pairs when there are exactly two nodes and both sides have positive genus.
inline long component_count_two_nodes(const invariants::GenusProfile& p) {
    if (p.delta != 2) throw ChainError("closed-form count requires exactly two nodes");
    if (p.g1 < 1 || p.g2 < 1) throw ChainError("closed-form count requires positive genera");
    return p.genus() - std::gcd(p.g1 + 1, p.g2 + 1);
}

// The family of limit pairs is irreducible exactly for two genus-1 sides.
inline bool irreducible_family(const invariants::GenusProfile& p) {
    return p.g1 == 1 && p.g2 == 1;
}

}  // namespace limitwp::chains
