#pragma once

// Exact dense linear algebra: rational matrices (rank, kernel, image, solve,
// determinant) and integer Smith normal form with transform tracking.

#include <cassert>
#include <stdexcept>
#include <vector>

#include "limitwp/rational.hpp"

namespace limitwp {

class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rat(0)) {}

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static QMat from_rows(const std::vector<std::vector<Rat>>& rows) {
        if (rows.empty()) return {};
        QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            assert(static_cast<int>(rows[i].size()) == m.cols());
            for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<Rat> row(int i) const {
        std::vector<Rat> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    QMat transposed() const {
        QMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend QMat operator*(const QMat& a, const QMat& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
        QMat c(a.rows(), b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int k = 0; k < a.cols(); ++k) {
                if (a(i, k) == 0) continue;
                for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        std::vector<Rat> out(rows_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const QMat& a, const QMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if ((*this)(i, c) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) continue;
            if (p != r)
                for (int j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
            Rat inv = 1 / (*this)(r, c);
            for (int j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0) continue;
                Rat f = (*this)(i, c);
                for (int j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        QMat m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of the right kernel, as rows of the returned matrix.
    QMat kernel() const {
        QMat m = *this;
        std::vector<int> piv = m.rref();
        std::vector<bool> is_piv(cols_, false);
        for (int c : piv) is_piv[c] = true;
        QMat k(cols_ - static_cast<int>(piv.size()), cols_);
        int kr = 0;
        for (int c = 0; c < cols_; ++c) {
            if (is_piv[c]) continue;
            k(kr, c) = 1;
            for (size_t i = 0; i < piv.size(); ++i) k(kr, piv[i]) = -m(static_cast<int>(i), c);
            ++kr;
        }
        return k;
    }

    Rat det() const {
        if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
        QMat m = *this;
        Rat d(1);
        for (int c = 0; c < cols_; ++c) {
            int p = -1;
            for (int i = c; i < rows_; ++i)
                if (m(i, c) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return Rat(0);
            if (p != c) {
                for (int j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
                d = -d;
            }
            d *= m(c, c);
            Rat inv = 1 / m(c, c);
            for (int i = c + 1; i < rows_; ++i) {
                if (m(i, c) == 0) continue;
                Rat f = m(i, c) * inv;
                for (int j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return d;
    }

    // Do the rows of `other` span a subspace of the row span of *this?
    bool row_space_contains(const QMat& other) const {
        if (other.rows() == 0) return true;
        if (cols_ != other.cols()) return false;
        QMat stacked(rows_ + other.rows(), cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) stacked(i, j) = (*this)(i, j);
        for (int i = 0; i < other.rows(); ++i)
            for (int j = 0; j < cols_; ++j) stacked(rows_ + i, j) = other(i, j);
        return stacked.rank() == rank();
    }

    bool same_row_space(const QMat& other) const {
        return rank() == other.rank() && row_space_contains(other);
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form.

class ZMat {
public:
    ZMat() = default;
    ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {}

    static ZMat identity(int n) {
        ZMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend ZMat operator*(const ZMat& a, const ZMat& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
        ZMat c(a.rows(), b.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int k = 0; k < a.cols(); ++k) {
                if (a(i, k) == 0) continue;
                for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    QMat to_q() const {
        QMat q(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) q(i, j) = Rat((*this)(i, j));
        return q;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// U * A * V = S with U, V unimodular and S diagonal, s_1 | s_2 | ... .
struct SmithForm {
    ZMat s;
    ZMat u;  // rows_ x rows_
    ZMat v;  // cols_ x cols_
    int rank = 0;

    // Rows of U with index >= rank span the left kernel of A over Z.
    std::vector<std::vector<Int>> left_kernel_basis() const {
        std::vector<std::vector<Int>> out;
        for (int i = rank; i < u.rows(); ++i) {
            std::vector<Int> row(u.cols());
            for (int j = 0; j < u.cols(); ++j) row[j] = u(i, j);
            out.push_back(std::move(row));
        }
        return out;
    }
    // Columns of V with index >= rank span the right kernel of A over Z.
    std::vector<std::vector<Int>> right_kernel_basis() const {
        std::vector<std::vector<Int>> out;
        for (int j = rank; j < v.cols(); ++j) {
            std::vector<Int> col(v.rows());
            for (int i = 0; i < v.rows(); ++i) col[i] = v(i, j);
            out.push_back(std::move(col));
        }
        return out;
    }
};

inline SmithForm smith_normal_form(const ZMat& a) {
    SmithForm f{a, ZMat::identity(a.rows()), ZMat::identity(a.cols()), 0};
    ZMat& s = f.s;
    ZMat& u = f.u;
    ZMat& v = f.v;
    int n = a.rows(), m = a.cols();

    auto row_op = [&](int i, int k, const Int& c) {  // row i -= c*row k
        for (int j = 0; j < m; ++j) s(i, j) -= c * s(k, j);
        for (int j = 0; j < n; ++j) u(i, j) -= c * u(k, j);
    };
    auto col_op = [&](int j, int k, const Int& c) {  // col j -= c*col k
        for (int i = 0; i < n; ++i) s(i, j) -= c * s(i, k);
        for (int i = 0; i < m; ++i) v(i, j) -= c * v(i, k);
    };
    auto row_swap = [&](int i, int k) {
        for (int j = 0; j < m; ++j) swap(s(i, j), s(k, j));
        for (int j = 0; j < n; ++j) swap(u(i, j), u(k, j));
    };
    auto col_swap = [&](int j, int k) {
        for (int i = 0; i < n; ++i) swap(s(i, j), s(i, k));
        for (int i = 0; i < m; ++i) swap(v(i, j), v(i, k));
    };
    auto row_neg = [&](int i) {
        for (int j = 0; j < m; ++j) s(i, j) = -s(i, j);
        for (int j = 0; j < n; ++j) u(i, j) = -u(i, j);
    };

    int t = 0;
    while (t < n && t < m) {
        // find a nonzero pivot of minimal absolute value
        int pi = -1, pj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < m; ++j)
                if (s(i, j) != 0 && (pi < 0 || abs(s(i, j)) < abs(s(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (s(i, t) == 0) continue;
                Int q = s(i, t) / s(t, t);
                row_op(i, t, q);
                if (s(i, t) != 0) {
                    row_swap(i, t);
                    clean = false;
                }
            }
            for (int j = t + 1; j < m; ++j) {
                if (s(t, j) == 0) continue;
                Int q = s(t, j) / s(t, t);
                col_op(j, t, q);
                if (s(t, j) != 0) {
                    col_swap(j, t);
                    clean = false;
                }
            }
        }
        // ensure pivot divides the remaining block
        bool restart = false;
        for (int i = t + 1; i < n && !restart; ++i)
            for (int j = t + 1; j < m && !restart; ++j)
                if (s(i, j) % s(t, t) != 0) {
                    row_op(t, i, Int(-1));  // add row i to row t, then redo
                    restart = true;
                }
        if (restart) continue;
        if (s(t, t) < 0) row_neg(t);
        ++t;
    }
    f.rank = t;
    return f;
}

}  // namespace limitwp
