#pragma once

// Grassmannian coordinates of node-evaluation data: Plucker vectors of the
// leading node coefficients of twisted dualizing sections, torus orbits of
// those points under node rescaling (the action of changing the glue), and
// exact orbit-membership tests via multiplicative lattices.

#include <optional>
#include <stdexcept>
#include <vector>

#include "limitwp/curvemodel.hpp"
#include "limitwp/invariants.hpp"
#include "limitwp/linalg.hpp"
#include "limitwp/nodalglue.hpp"

namespace limitwp::grassmann {

using curvemodel::ComponentModel;
using nodalglue::NodalCurve;

struct GrassmannError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k-element subsets of {0..n-1} in lexicographic order
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int j = k - 1;
        while (j >= 0 && idx[j] == n - k + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int i = j + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        if (k == 0) break;
    }
    return out;
}

// Plucker vector of a k x n matrix of full row rank: the maximal minors in
// lexicographic column order, scaled so the first nonzero entry is 1.
inline std::vector<Rat> plucker(const QMat& w) {
    int k = w.rows(), n = w.cols();
    if (k > n) throw GrassmannError("matrix has more rows than columns");
    std::vector<Rat> out;
    for (const auto& cols : subsets(n, k)) {
        QMat sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) sub(r, c) = w(r, cols[c]);
        out.push_back(sub.det());
    }
    Rat lead(0);
    for (const Rat& x : out)
        if (x != 0) {
            lead = x;
            break;
        }
    if (lead == 0) throw GrassmannError("matrix is not of full row rank");
    for (Rat& x : out) x /= lead;
    return out;
}

// Leading node coefficients of the sections of omega(-n*Delta): entry (k, r)
// is the order-n coefficient of basis section k at node r.
inline QMat evaluation_matrix(const ComponentModel& m, long n) {
    auto s = curvemodel::rr_space(m, (-n) * curvemodel::delta_divisor(m));
    QMat w(static_cast<int>(s.dim()), static_cast<int>(m.delta()));
    for (long k = 0; k < s.dim(); ++k)
        for (long r = 0; r < m.delta(); ++r)
            w(static_cast<int>(k), static_cast<int>(r)) =
                nodalglue::node_value(m, s.basis[k], m.marked()[r], -n);
    return w;
}

// The vanishing statement on node subsets is equivalent to all Plucker
// coordinates of the evaluation matrix at order ell_i - 1 being nonzero:
// a section counted by h^0(omega(-ell*Delta + I)) is exactly a kernel vector
// of the complementary column set.
inline bool condition3_via_plucker(const ComponentModel& m, int i,
                                   const invariants::ProfileData& pd) {
    long ell = pd.twist.ell_of(i);
    long mi = pd.twist.m_of(i);
    long delta = pd.profile.delta;
    if (ell == 0) return curvemodel::h0(m, curvemodel::PlaceDivisor{}) == 0;  // genus-0 opposite side
    QMat w = evaluation_matrix(m, ell - 1);
    if (w.rows() != static_cast<int>(delta - mi)) return false;  // degenerate configuration
    try {
        for (const Rat& p : plucker(w))
            if (p == 0) return false;
    } catch (const GrassmannError&) {
        return false;
    }
    return true;
}

// Dimension of the orbit of the row space of w under the torus scaling the
// columns: the rank of the lattice of weight differences over the nonzero
// Plucker coordinates.
inline long orbit_dimension(const QMat& w) {
    auto pl = plucker(w);
    auto ss = subsets(w.cols(), w.rows());
    int ref = -1;
    std::vector<int> nz;
    for (size_t s = 0; s < pl.size(); ++s)
        if (pl[s] != 0) {
            if (ref < 0) ref = static_cast<int>(s);
            nz.push_back(static_cast<int>(s));
        }
    if (nz.size() <= 1) return 0;
    ZMat a(static_cast<int>(nz.size()) - 1, w.cols());
    int row = 0;
    for (int s : nz) {
        if (s == ref) continue;
        for (int c : ss[s]) a(row, c) += 1;
        for (int c : ss[ref]) a(row, c) -= 1;
        ++row;
    }
    return smith_normal_form(a).rank;
}

struct OrbitReport {
    long orbit_dim = 0;
    bool fixed_point = false;  // a single nonzero Plucker coordinate
};

// Orbit of the index-i limit point under glue changes: computed on the
// evaluation data of the component opposite to i.
inline OrbitReport orbit_single(const NodalCurve& c, const invariants::ProfileData& pd, int i) {
    long ell = pd.twist.ell_of(i);
    if (ell == 0) return {0, true};  // genus-0 opposite side: the point is glue-independent
    QMat w = evaluation_matrix(c.comp(3 - i), ell - 1);
    auto pl = plucker(w);
    long nz = 0;
    for (const Rat& p : pl) nz += p != 0;
    return {orbit_dimension(w), nz == 1};
}

struct PairOrbitReport {
    long orbit_dim = 0;   // orbit of the pair point under the admissible torus
    long family_dim = 0;  // torus of scaling pairs respecting the weight relation
    long scalar_dim = 0;  // its subtorus of global scalar pairs
};

// Orbit data of the pair of limit points under the torus of node-scaling
// pairs (t1, t2) with t1_r^(lambda_2) = t2_r^(lambda_1).
inline PairOrbitReport orbit_pair(const NodalCurve& c, const invariants::ProfileData& pd) {
    if (!pd.twist.lambda) throw GrassmannError("requires both twist multipliers nonzero");
    auto [l1, l2] = *pd.twist.lambda;
    long delta = c.delta();

    PairOrbitReport out;
    {
        ZMat rel(static_cast<int>(delta), static_cast<int>(2 * delta));
        for (long r = 0; r < delta; ++r) {
            rel(static_cast<int>(r), static_cast<int>(r)) = l2;
            rel(static_cast<int>(r), static_cast<int>(delta + r)) = -l1;
        }
        out.family_dim = nodalglue::solution_rank(rel);
        ZMat sc(1, 2);
        sc(0, 0) = l2;
        sc(0, 1) = -l1;
        out.scalar_dim = nodalglue::solution_rank(sc);
    }

    // weight functionals of both sides applied to the Lie algebra of the
    // admissible torus, parameterized as (t1, t2) = (e^(lambda_1), e^(lambda_2))
    std::vector<std::vector<long>> rows;
    for (int i = 1; i <= 2; ++i) {
        long mult = (i == 1) ? l1 : l2;
        long ell = pd.twist.ell_of(i);
        if (ell == 0) continue;
        QMat w = evaluation_matrix(c.comp(3 - i), ell - 1);
        auto pl = plucker(w);
        auto ss = subsets(w.cols(), w.rows());
        int ref = -1;
        for (size_t s = 0; s < pl.size(); ++s) {
            if (pl[s] == 0) continue;
            if (ref < 0) {
                ref = static_cast<int>(s);
                continue;
            }
            std::vector<long> row(delta, 0);
            for (int col : ss[s]) row[col] += mult;
            for (int col : ss[ref]) row[col] -= mult;
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return out;
    ZMat a(static_cast<int>(rows.size()), static_cast<int>(delta));
    for (size_t r = 0; r < rows.size(); ++r)
        for (long c2 = 0; c2 < delta; ++c2)
            a(static_cast<int>(r), static_cast<int>(c2)) = rows[r][c2];
    out.orbit_dim = smith_normal_form(a).rank;
    return out;
}

namespace detail {

inline std::optional<Rat> rat_nth_root(const Rat& x, long n) {
    if (n <= 0) return std::nullopt;
    if (n == 1) return x;
    if (x < 0) return std::nullopt;
    Int num = x.get_num(), den = x.get_den();
    Int rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n))) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n))) return std::nullopt;
    return Rat(rn) / Rat(rd);
}

}  // namespace detail

struct Membership {
    bool member = false;
    std::optional<std::vector<Rat>> scalings;  // rational column scalings, when extractable
};

// Is the row space of w2 a column rescaling of the row space of w1?  Exact
// solvability of the multiplicative system on the Plucker ratios; a rational
// witness is verified against the matrices when the radicals resolve.
inline Membership orbit_membership(const QMat& w1, const QMat& w2) {
    if (w1.rows() != w2.rows() || w1.cols() != w2.cols()) return {};
    auto p1 = plucker(w1);
    auto p2 = plucker(w2);
    auto ss = subsets(w1.cols(), w1.rows());
    int ref = -1;
    std::vector<int> nz;
    for (size_t s = 0; s < p1.size(); ++s) {
        if ((p1[s] != 0) != (p2[s] != 0)) return {};
        if (p1[s] != 0) {
            if (ref < 0) ref = static_cast<int>(s);
            else nz.push_back(static_cast<int>(s));
        }
    }
    int n = w1.cols();
    ZMat a(static_cast<int>(nz.size()), n);
    std::vector<Rat> targets;
    for (size_t row = 0; row < nz.size(); ++row) {
        int s = nz[row];
        for (int c : ss[s]) a(static_cast<int>(row), c) += 1;
        for (int c : ss[ref]) a(static_cast<int>(row), c) -= 1;
        targets.push_back((p2[s] / p1[s]) / (p2[ref] / p1[ref]));
    }
    auto sol = nodalglue::lattice_solve({a, targets});
    if (!sol.solvable) return {};
    Membership out{true, std::nullopt};
    if (sol.witness) {
        std::vector<Rat> t;
        bool rational = true;
        for (const auto& w : *sol.witness) {
            auto root = detail::rat_nth_root(w.base, w.root);
            if (!root) {
                rational = false;
                break;
            }
            t.push_back(w.negate ? -*root : *root);
        }
        if (rational) {
            QMat scaled = w1;
            for (int r = 0; r < scaled.rows(); ++r)
                for (int c = 0; c < scaled.cols(); ++c) scaled(r, c) *= t[c];
            if (scaled.same_row_space(w2)) out.scalings = std::move(t);
        }
    }
    return out;
}

// Membership of the pair (b1, b2) in the admissible-torus orbit of (a1, a2):
// both sides must match through column scalings t1, t2 with
// (t1_r/t1_0)^(lambda_2) = (t2_r/t2_0)^(lambda_1) (the relation modulo the
// per-side global scalars, which act trivially on the points).
inline bool pair_membership(const QMat& a1, const QMat& b1, const QMat& a2, const QMat& b2,
                            long l1, long l2) {
    if (a1.cols() != a2.cols()) throw GrassmannError("node counts must agree");
    long delta = a1.cols();
    std::vector<std::vector<long>> rows;
    std::vector<Rat> targets;

    auto add_side = [&](const QMat& from, const QMat& to, long off) -> bool {
        if (from.rows() != to.rows() || from.cols() != to.cols()) return false;
        auto p1 = plucker(from);
        auto p2 = plucker(to);
        auto ss = subsets(from.cols(), from.rows());
        int ref = -1;
        for (size_t s = 0; s < p1.size(); ++s) {
            if ((p1[s] != 0) != (p2[s] != 0)) return false;
            if (p1[s] == 0) continue;
            if (ref < 0) {
                ref = static_cast<int>(s);
                continue;
            }
            std::vector<long> row(2 * delta, 0);
            for (int c : ss[s]) row[off + c] += 1;
            for (int c : ss[ref]) row[off + c] -= 1;
            rows.push_back(std::move(row));
            targets.push_back((p2[s] / p1[s]) / (p2[ref] / p1[ref]));
        }
        return true;
    };
    if (!add_side(a1, b1, 0) || !add_side(a2, b2, delta)) return false;
    for (long r = 1; r < delta; ++r) {
        std::vector<long> row(2 * delta, 0);
        row[r] += l2;
        row[0] -= l2;
        row[delta + r] -= l1;
        row[delta] += l1;
        rows.push_back(std::move(row));
        targets.push_back(Rat(1));
    }
    ZMat a(static_cast<int>(rows.size()), static_cast<int>(2 * delta));
    for (size_t r = 0; r < rows.size(); ++r)
        for (long c = 0; c < 2 * delta; ++c)
            a(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    return nodalglue::lattice_solve({a, targets}).solvable;
}

}  // namespace limitwp::grassmann
