#pragma once

// Minimal dense linear algebra for small matrices (n <= ~32):
// LU determinant/inverse/solve, nullspace, least squares, hermitian Jacobi.
// Deterministic pivoting; no external dependencies.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "core.hpp"

namespace gnum {

class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    CMat operator+(const CMat& o) const {
        CMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    CMat operator-(const CMat& o) const {
        CMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    CMat operator*(const CMat& o) const {
        CMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                cplx v = (*this)(i, k);
                if (v == cplx{}) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }
    CMat operator*(cplx z) const {
        CMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * z;
        return r;
    }

    CMat adjoint() const {
        CMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double inf_norm() const {
        double m = 0.0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

inline double max_abs_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// LU with partial pivoting. Returns det; on request fills the inverse.
// Throws invariant_error when the matrix is singular at the given threshold.
inline cplx lu_det(const CMat& m, CMat* inverse = nullptr, double singular_tol = 0.0) {
    int n = m.rows();
    CMat a = m;
    CMat inv = CMat::identity(n);
    cplx det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
            det = -det;
        }
        cplx p = a(col, col);
        det *= p;
        if (std::abs(p) <= singular_tol) {
            if (inverse) throw invariant_error("singular matrix: pivot below threshold");
            // Determinant-only path: keep going, det collapses to ~0.
            if (p == cplx{}) return 0.0;
        }
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == cplx{}) continue;
            cplx f = a(r, col) / p;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            for (int j = 0; j < n; ++j) inv(r, j) -= f * inv(col, j);
        }
    }
    if (inverse) {
        for (int col = n - 1; col >= 0; --col) {
            for (int j = 0; j < n; ++j) {
                cplx s = inv(col, j);
                for (int k = col + 1; k < n; ++k) s -= a(col, k) * (*inverse)(k, j);
                (*inverse)(col, j) = s / a(col, col);
            }
        }
    }
    return det;
}

inline CMat inverse(const CMat& m, double singular_tol) {
    CMat inv(m.rows(), m.cols());
    lu_det(m, &inv, singular_tol);
    return inv;
}

// Basis of the right nullspace of a (possibly rectangular) matrix.
// Pivots below rel_tol * max|entry| count as zero.
inline std::vector<std::vector<cplx>> nullspace(const CMat& m, double rel_tol = 1e-10) {
    int rows = m.rows(), cols = m.cols();
    CMat a = m;
    double scale = a.inf_norm();
    double tol = (scale == 0.0 ? 1.0 : scale) * rel_tol;

    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = r;
        for (int i = r + 1; i < rows; ++i)
            if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
        if (std::abs(a(piv, c)) <= tol) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        cplx p = a(r, c);
        for (int j = 0; j < cols; ++j) a(r, j) /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == cplx{}) continue;
            cplx f = a(i, c);
            for (int j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<cplx>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<cplx> v(cols, cplx{});
        v[free] = 1.0;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a(int(k), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Least squares via normal equations; fine for the small well-conditioned
// frames used here.
inline std::vector<cplx> lstsq(const CMat& a, const std::vector<cplx>& b) {
    CMat at = a.adjoint();
    CMat ata = at * a;
    int n = ata.rows();
    std::vector<cplx> rhs(n, cplx{});
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < a.rows(); ++k) rhs[i] += at(i, k) * b[k];
    CMat inv = inverse(ata, ata.inf_norm() * 1e-14);
    std::vector<cplx> x(n, cplx{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x[i] += inv(i, j) * rhs[j];
    return x;
}

struct EigResult {
    std::vector<double> values;  // ascending
    CMat vectors;                // columns are eigenvectors
};

// Cyclic Jacobi for hermitian matrices.
inline EigResult eig_hermitian(const CMat& m) {
    int n = m.rows();
    CMat a = m;
    CMat v = CMat::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * std::max(1.0, a.inf_norm())) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double b = std::abs(a(p, q));
                if (b <= 1e-18 * std::max(1.0, a.inf_norm())) continue;
                cplx phase = a(p, q) / b;
                double alpha = a(p, p).real(), gamma = a(q, q).real();
                double d = (alpha - gamma) / (2.0 * b);
                double t = (d >= 0 ? 1.0 : -1.0) / (std::abs(d) + std::sqrt(d * d + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = c * t;
                // Columns p,q transform by [[c, -s*phase],[s*conj(phase), c]].
                for (int i = 0; i < n; ++i) {
                    cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * c + aiq * s * std::conj(phase);
                    a(i, q) = -aip * s * phase + aiq * c;
                }
                for (int j = 0; j < n; ++j) {
                    cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = apj * c + aqj * s * phase;
                    a(q, j) = -apj * s * std::conj(phase) + aqj * c;
                }
                for (int i = 0; i < n; ++i) {
                    cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * c + viq * s * std::conj(phase);
                    v(i, q) = -vip * s * phase + viq * c;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
    EigResult out;
    out.values.resize(n);
    out.vectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

// Real matrices: used for structure constants, adjoints, Killing forms.
class RMat {
public:
    RMat() = default;
    RMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static RMat identity(int n) {
        RMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const double& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    RMat operator*(const RMat& o) const {
        RMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                double v = (*this)(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    RMat transpose() const {
        RMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    double inf_norm() const {
        double m = 0.0;
        for (double x : a_) m = std::max(m, std::abs(x));
        return m;
    }

    CMat to_complex() const {
        CMat r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline double max_abs_diff(const RMat& a, const RMat& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// max |M^T M - I|: zero iff M is orthogonal.
inline double orthogonality_defect(const RMat& m) {
    RMat g = m.transpose() * m;
    double worst = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

inline std::vector<double> eig_real_symmetric(const RMat& m) {
    return eig_hermitian(m.to_complex()).values;
}

}  // namespace gnum
