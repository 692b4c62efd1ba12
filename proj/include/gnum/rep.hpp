#pragma once

// Standard 4x4 matrix representation of the Minkowski algebra, plus the
// gamma-number transcendentals built on it (trace, determinant, inverse,
// eigenvalues) and the context-generic exponential series.

#include <array>
#include <cmath>

#include "algebra.hpp"

namespace gnum {

class Mat4C {
public:
    Mat4C() : a_{} {}

    static Mat4C identity() {
        Mat4C m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    cplx& operator()(int i, int j) { return a_[std::size_t(i) * 4 + j]; }
    const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * 4 + j]; }

    Mat4C operator+(const Mat4C& o) const {
        Mat4C r;
        for (int i = 0; i < 16; ++i) r.a_[std::size_t(i)] = a_[std::size_t(i)] + o.a_[std::size_t(i)];
        return r;
    }
    Mat4C operator-(const Mat4C& o) const {
        Mat4C r;
        for (int i = 0; i < 16; ++i) r.a_[std::size_t(i)] = a_[std::size_t(i)] - o.a_[std::size_t(i)];
        return r;
    }
    Mat4C operator*(const Mat4C& o) const {
        Mat4C r;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                cplx v = (*this)(i, k);
                if (v == cplx{}) continue;
                for (int j = 0; j < 4; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }
    Mat4C operator*(cplx z) const {
        Mat4C r;
        for (int i = 0; i < 16; ++i) r.a_[std::size_t(i)] = a_[std::size_t(i)] * z;
        return r;
    }
    friend Mat4C operator*(cplx z, const Mat4C& m) { return m * z; }

    Mat4C adjoint() const {
        Mat4C r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    cplx trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

    double inf_norm() const {
        double m = 0.0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    CMat to_cmat() const {
        CMat m(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    static Mat4C from_cmat(const CMat& m) {
        Mat4C r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = m(i, j);
        return r;
    }

private:
    std::array<cplx, 16> a_;
};

inline double max_abs_diff(const Mat4C& a, const Mat4C& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

namespace detail {

// gamma^0 = diag(1,1,-1,-1); gamma^k = [[0, -sigma_k], [sigma_k, 0]].
inline const std::array<Mat4C, 4>& gamma_matrices() {
    static const std::array<Mat4C, 4> g = [] {
        const cplx I(0.0, 1.0);
        std::array<Mat4C, 4> m{};
        m[0](0, 0) = 1;  m[0](1, 1) = 1;  m[0](2, 2) = -1; m[0](3, 3) = -1;
        // sigma_1
        m[1](0, 3) = -1; m[1](1, 2) = -1; m[1](2, 1) = 1;  m[1](3, 0) = 1;
        // sigma_2
        m[2](0, 3) = I;  m[2](1, 2) = -I; m[2](2, 1) = -I; m[2](3, 0) = I;
        // sigma_3
        m[3](0, 2) = -1; m[3](1, 3) = 1;  m[3](2, 0) = 1;  m[3](3, 1) = -1;
        return m;
    }();
    return g;
}

struct BladeRep {
    std::array<Mat4C, 16> mat;
    std::array<Mat4C, 16> inv;  // = adjoint; blade matrices are unitary
};

inline const BladeRep& blade_rep() {
    static const BladeRep rep = [] {
        BladeRep r;
        const auto& g = gamma_matrices();
        for (BladeMask m = 0; m < 16; ++m) {
            Mat4C b = Mat4C::identity();
            for (int i = 0; i < 4; ++i)
                if (m & (1u << i)) b = b * g[std::size_t(i)];
            r.mat[m] = b;
            r.inv[m] = b.adjoint();
        }
        return r;
    }();
    return rep;
}

}  // namespace detail

inline Mat4C to_matrix(const GammaNumber& g) {
    if (!g.ctx().is_minkowski()) throw error("to_matrix requires a Minkowski context");
    const auto& rep = detail::blade_rep();
    Mat4C m;
    for (BladeMask b = 0; b < 16; ++b) {
        cplx c = g.coeff(b);
        if (c == cplx{}) continue;
        m = m + rep.mat[b] * c;
    }
    return m;
}

// Inverse of to_matrix. Blade matrices are unitary and trace-orthogonal, so
// each coefficient is tr(B^dagger M)/4. A real target context requires the
// coefficients to be real within tol.
inline GammaNumber from_matrix(const Mat4C& m,
                               const AlgebraContext& ctx = AlgebraContext::minkowski(),
                               double real_tol = kTolAlgebraic) {
    if (!ctx.is_minkowski()) throw error("from_matrix requires a Minkowski context");
    const auto& rep = detail::blade_rep();
    GammaNumber g(ctx);
    for (BladeMask b = 0; b < 16; ++b) {
        cplx c = (rep.inv[b] * m).trace() * 0.25;
        if (ctx.field() == Field::Real) {
            if (std::abs(c.imag()) > real_tol)
                throw invariant_error("from_matrix: non-real coefficient for real context");
            c = c.real();
        }
        g.set_coeff(b, c);
    }
    return g;
}

// Intrinsic trace: 4 times the scalar coefficient; equals the matrix trace.
inline cplx trace_gamma(const GammaNumber& g) { return 4.0 * g.coeff(0u); }

inline cplx det_gamma(const GammaNumber& g) {
    return lu_det(to_matrix(g).to_cmat());
}

// Series exponential with scaling and squaring; works in any context.
inline GammaNumber exp_gamma(const GammaNumber& g) {
    double norm = g.inf_norm();
    int squarings = 0;
    GammaNumber x = g;
    while (norm > 0.5 && squarings < 64) {
        x = x * 0.5;
        norm *= 0.5;
        ++squarings;
    }
    GammaNumber result = GammaNumber::unit(g.ctx());
    GammaNumber term = result;
    for (int k = 1; k <= 64; ++k) {
        term = term * x * (1.0 / k);
        result += term;
        if (term.inf_norm() < 1e-16) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// Inverse through the representation; singularity threshold scales with the
// fourth power of the coefficient magnitude.
inline GammaNumber inverse_gamma(const GammaNumber& g) {
    Mat4C m = to_matrix(g);
    double scale = std::max(g.inf_norm(), 1e-300);
    cplx det = lu_det(m.to_cmat());
    if (std::abs(det) < 1e-10 * scale * scale * scale * scale)
        throw invariant_error("inverse_gamma: singular gamma-number");
    CMat inv = inverse(m.to_cmat(), 0.0);
    return from_matrix(Mat4C::from_cmat(inv), g.ctx());
}

// Eigenvalues of the representing matrix ("eigen-numbers"): characteristic
// polynomial by Faddeev-LeVerrier, roots by Durand-Kerner.
inline std::array<cplx, 4> eigen_numbers(const GammaNumber& g) {
    Mat4C a = to_matrix(g);
    std::array<cplx, 5> c{};  // monic: l^4 + c1 l^3 + c2 l^2 + c3 l + c4
    Mat4C m = a;
    c[0] = 1.0;
    for (int k = 1; k <= 4; ++k) {
        c[std::size_t(k)] = -m.trace() / double(k);
        if (k < 4) {
            Mat4C shifted = m;
            for (int i = 0; i < 4; ++i) shifted(i, i) += c[std::size_t(k)];
            m = a * shifted;
        }
    }
    double radius = 1.0;
    for (int k = 1; k <= 4; ++k) radius = std::max(radius, std::abs(c[std::size_t(k)]));
    std::array<cplx, 4> r;
    cplx seed(0.4, 0.9);
    cplx p = 1.0;
    for (int i = 0; i < 4; ++i) {
        p *= seed;
        r[std::size_t(i)] = p * (1.0 + radius);
    }
    auto eval = [&](cplx z) {
        cplx v = 1.0;
        for (int k = 1; k <= 4; ++k) v = v * z + c[std::size_t(k)];
        return v;
    };
    for (int iter = 0; iter < 200; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < 4; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= r[std::size_t(i)] - r[std::size_t(j)];
            cplx step = eval(r[std::size_t(i)]) / denom;
            r[std::size_t(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * (1.0 + radius)) break;
    }
    return r;
}

}  // namespace gnum
