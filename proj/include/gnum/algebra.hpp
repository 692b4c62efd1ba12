#pragma once

// Clifford algebra contexts and dense gamma-number values.
//
// A context fixes the generator count n <= 6, a diagonal signature and the
// coefficient field. Basis blades are bitmasks: bit i set means generator e^i
// is a factor, factors ordered by ascending index. The product of two blades
// is the XOR of their masks times a sign (transposition parity times the
// signature of the contracted generators); the full 2^n x 2^n sign table is
// precomputed per context.

#include <array>
#include <bit>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"

namespace gnum {

using BladeMask = unsigned;

enum class Field { Real, Complex };

inline int grade(BladeMask m) { return std::popcount(m); }

namespace detail {

struct ContextImpl {
    int n = 0;
    std::array<int, 6> signature{};  // +1 / -1 per generator
    Field field = Field::Complex;
    std::vector<std::int8_t> signs;  // [a * 2^n + b] -> sign of e_a * e_b

    int dim() const { return 1 << n; }
};

inline int blade_sign(BladeMask a, BladeMask b, const std::array<int, 6>& sig, int n) {
    int swaps = 0;
    for (int i = 1; i < n; ++i)
        if (a & (1u << i)) swaps += std::popcount(b & ((1u << i) - 1u));
    int s = (swaps & 1) ? -1 : 1;
    BladeMask common = a & b;
    for (int i = 0; i < n; ++i)
        if (common & (1u << i)) s *= sig[std::size_t(i)];
    return s;
}

}  // namespace detail

class AlgebraContext {
public:
    AlgebraContext() = default;

    static AlgebraContext make(int n, const std::vector<int>& signature, Field field) {
        if (n < 1 || n > 6) throw schema_error("context: n must be in [1,6]");
        if (int(signature.size()) != n) throw schema_error("context: signature length != n");
        auto impl = std::make_shared<detail::ContextImpl>();
        impl->n = n;
        impl->field = field;
        for (int i = 0; i < n; ++i) {
            if (signature[std::size_t(i)] != 1 && signature[std::size_t(i)] != -1)
                throw schema_error("context: signature entries must be +1 or -1");
            impl->signature[std::size_t(i)] = signature[std::size_t(i)];
        }
        int d = impl->dim();
        impl->signs.resize(std::size_t(d) * d);
        for (BladeMask a = 0; a < BladeMask(d); ++a)
            for (BladeMask b = 0; b < BladeMask(d); ++b)
                impl->signs[std::size_t(a) * d + b] =
                    std::int8_t(detail::blade_sign(a, b, impl->signature, n));
        AlgebraContext ctx;
        ctx.impl_ = std::move(impl);
        return ctx;
    }

    // Minkowski (+,-,-,-), n = 4.
    static AlgebraContext minkowski(Field field = Field::Complex) {
        static const AlgebraContext c = make(4, {1, -1, -1, -1}, Field::Complex);
        static const AlgebraContext r = make(4, {1, -1, -1, -1}, Field::Real);
        return field == Field::Complex ? c : r;
    }

    static AlgebraContext euclidean(int n, Field field = Field::Real) {
        return make(n, std::vector<int>(std::size_t(n), 1), field);
    }

    bool valid() const { return impl_ != nullptr; }
    int n() const { return impl_->n; }
    int dim() const { return impl_->dim(); }
    Field field() const { return impl_->field; }
    int signature(int i) const { return impl_->signature[std::size_t(i)]; }

    bool is_minkowski() const {
        return impl_->n == 4 && impl_->signature[0] == 1 && impl_->signature[1] == -1 &&
               impl_->signature[2] == -1 && impl_->signature[3] == -1;
    }

    int sign(BladeMask a, BladeMask b) const {
        return impl_->signs[std::size_t(a) * dim() + b];
    }

    // Product of two basis blades: result mask and its sign.
    std::pair<BladeMask, int> blade_product(BladeMask a, BladeMask b) const {
        check_mask(a);
        check_mask(b);
        return {a ^ b, sign(a, b)};
    }

    void check_mask(BladeMask m) const {
        if (m >= BladeMask(dim())) throw schema_error("blade mask out of range for context");
    }

    friend bool operator==(const AlgebraContext& x, const AlgebraContext& y) {
        if (x.impl_ == y.impl_) return true;
        if (!x.impl_ || !y.impl_) return false;
        return x.impl_->n == y.impl_->n && x.impl_->field == y.impl_->field &&
               x.impl_->signature == y.impl_->signature;
    }
    friend bool operator!=(const AlgebraContext& x, const AlgebraContext& y) { return !(x == y); }

private:
    std::shared_ptr<const detail::ContextImpl> impl_;
};

class GammaNumber {
public:
    GammaNumber() = default;
    explicit GammaNumber(AlgebraContext ctx) : ctx_(std::move(ctx)), c_(std::size_t(ctx_.dim())) {}

    static GammaNumber zero(const AlgebraContext& ctx) { return GammaNumber(ctx); }

    static GammaNumber blade(const AlgebraContext& ctx, BladeMask mask, cplx coeff = 1.0) {
        ctx.check_mask(mask);
        GammaNumber g(ctx);
        g.c_[mask] = coeff;
        return g;
    }

    // The algebra unit e.
    static GammaNumber unit(const AlgebraContext& ctx) { return blade(ctx, 0u, 1.0); }

    static GammaNumber scalar(const AlgebraContext& ctx, cplx z) { return blade(ctx, 0u, z); }

    static GammaNumber sum_of(const AlgebraContext& ctx,
                              std::initializer_list<std::pair<BladeMask, cplx>> terms) {
        GammaNumber g(ctx);
        for (const auto& [mask, z] : terms) {
            ctx.check_mask(mask);
            g.c_[mask] += z;
        }
        return g;
    }

    const AlgebraContext& ctx() const { return ctx_; }
    cplx coeff(BladeMask mask) const { return c_[mask]; }
    void set_coeff(BladeMask mask, cplx z) {
        ctx_.check_mask(mask);
        c_[mask] = z;
    }
    int dim() const { return int(c_.size()); }

    GammaNumber operator+(const GammaNumber& o) const {
        require_same_ctx(o);
        GammaNumber r(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    GammaNumber operator-(const GammaNumber& o) const {
        require_same_ctx(o);
        GammaNumber r(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    GammaNumber operator-() const {
        GammaNumber r(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
        return r;
    }
    GammaNumber& operator+=(const GammaNumber& o) {
        require_same_ctx(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    GammaNumber& operator-=(const GammaNumber& o) {
        require_same_ctx(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    GammaNumber operator*(const GammaNumber& o) const {
        require_same_ctx(o);
        int d = dim();
        GammaNumber r(ctx_);
        for (int a = 0; a < d; ++a) {
            if (c_[std::size_t(a)] == cplx{}) continue;
            cplx ca = c_[std::size_t(a)];
            for (int b = 0; b < d; ++b) {
                cplx cb = o.c_[std::size_t(b)];
                if (cb == cplx{}) continue;
                r.c_[std::size_t(a ^ b)] += ca * cb * double(ctx_.sign(BladeMask(a), BladeMask(b)));
            }
        }
        return r;
    }

    GammaNumber operator*(cplx z) const {
        GammaNumber r(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * z;
        return r;
    }
    friend GammaNumber operator*(cplx z, const GammaNumber& g) { return g * z; }

    GammaNumber grade_part(int k) const {
        if (k < 0 || k > ctx_.n()) throw error("grade projection index out of range");
        GammaNumber r(ctx_);
        for (std::size_t m = 0; m < c_.size(); ++m)
            if (grade(BladeMask(m)) == k) r.c_[m] = c_[m];
        return r;
    }

    GammaNumber even() const {
        GammaNumber r(ctx_);
        for (std::size_t m = 0; m < c_.size(); ++m)
            if ((grade(BladeMask(m)) & 1) == 0) r.c_[m] = c_[m];
        return r;
    }
    GammaNumber odd() const {
        GammaNumber r(ctx_);
        for (std::size_t m = 0; m < c_.size(); ++m)
            if (grade(BladeMask(m)) & 1) r.c_[m] = c_[m];
        return r;
    }

    // Reversion: blade factors written in the opposite order; no coefficient
    // conjugation. Sign (-1)^{k(k-1)/2} on grade k.
    GammaNumber reverse() const {
        GammaNumber r(ctx_);
        for (std::size_t m = 0; m < c_.size(); ++m) {
            int k = grade(BladeMask(m));
            double s = ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0;
            r.c_[m] = c_[m] * s;
        }
        return r;
    }

    GammaNumber conj_coeffs() const {
        GammaNumber r(ctx_);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = std::conj(c_[i]);
        return r;
    }

    // Star: reversion plus coefficient conjugation (conjugation is a no-op in
    // a real context). Anti-automorphism: (UV)* = V* U*.
    GammaNumber star() const {
        return ctx_.field() == Field::Complex ? reverse().conj_coeffs() : reverse();
    }

    // Dagger: U^dagger = e^0 U* e^0. Minkowski only; matches the matrix
    // conjugate-transpose in the standard representation.
    GammaNumber dagger() const {
        if (!ctx_.is_minkowski()) throw error("dagger requires a Minkowski context");
        GammaNumber e0 = blade(ctx_, 1u);
        return e0 * star() * e0;
    }

    double inf_norm() const {
        double m = 0.0;
        for (const cplx& z : c_) m = std::max(m, std::abs(z));
        return m;
    }

    double max_imag() const {
        double m = 0.0;
        for (const cplx& z : c_) m = std::max(m, std::abs(z.imag()));
        return m;
    }

    bool approx_zero(double tol = kTolAlgebraic) const { return inf_norm() <= tol; }

private:
    void require_same_ctx(const GammaNumber& o) const {
        if (ctx_ != o.ctx_) throw error("gamma-number context mismatch");
    }

    AlgebraContext ctx_;
    std::vector<cplx> c_;
};

inline double max_abs_diff(const GammaNumber& a, const GammaNumber& b) {
    return (a - b).inf_norm();
}

inline bool approx_equal(const GammaNumber& a, const GammaNumber& b, double tol = kTolAlgebraic) {
    return max_abs_diff(a, b) <= tol;
}

inline GammaNumber commutator(const GammaNumber& a, const GammaNumber& b) {
    return a * b - b * a;
}

inline GammaNumber anticommutator(const GammaNumber& a, const GammaNumber& b) {
    return a * b + b * a;
}

inline GammaNumber basis_vector(const AlgebraContext& ctx, int i) {
    return GammaNumber::blade(ctx, 1u << i);
}

// Highest blade e^{0...n-1}; in Minkowski this is e^5 = e^{0123}.
inline GammaNumber pseudoscalar(const AlgebraContext& ctx) {
    return GammaNumber::blade(ctx, BladeMask(ctx.dim() - 1));
}

inline std::pair<GammaNumber, GammaNumber> even_odd_split(const GammaNumber& g) {
    return {g.even(), g.odd()};
}

// Basis of { B : [B, C_j] = 0 for all constraints }, as a complex subspace.
inline std::vector<GammaNumber> commutant_basis(const std::vector<GammaNumber>& constraints) {
    if (constraints.empty()) throw error("commutant_basis: no constraints");
    const AlgebraContext& ctx = constraints.front().ctx();
    if (ctx.field() != Field::Complex)
        throw error("commutant_basis requires a complex context");
    for (const auto& c : constraints)
        if (c.ctx() != ctx) throw error("commutant_basis: constraint context mismatch");

    int d = ctx.dim();
    CMat sys(int(constraints.size()) * d, d);
    for (int j = 0; j < int(constraints.size()); ++j) {
        for (int b = 0; b < d; ++b) {
            GammaNumber col = commutator(GammaNumber::blade(ctx, BladeMask(b)), constraints[std::size_t(j)]);
            for (int r = 0; r < d; ++r) sys(j * d + r, b) = col.coeff(BladeMask(r));
        }
    }
    std::vector<GammaNumber> basis;
    for (const auto& v : nullspace(sys)) {
        GammaNumber g(ctx);
        for (int b = 0; b < d; ++b) g.set_coeff(BladeMask(b), v[std::size_t(b)]);
        basis.push_back(std::move(g));
    }
    return basis;
}

// Random gamma-number with coefficients uniform in the unit box; real
// contexts get real coefficients.
inline GammaNumber random_gamma(const AlgebraContext& ctx, Rng& rng) {
    GammaNumber g(ctx);
    for (int m = 0; m < ctx.dim(); ++m)
        g.set_coeff(BladeMask(m), ctx.field() == Field::Complex
                                      ? rng.complex_symmetric()
                                      : cplx(rng.symmetric(), 0.0));
    return g;
}

inline GammaNumber random_grade(const AlgebraContext& ctx, int k, Rng& rng) {
    GammaNumber g(ctx);
    for (int m = 0; m < ctx.dim(); ++m)
        if (grade(BladeMask(m)) == k)
            g.set_coeff(BladeMask(m), ctx.field() == Field::Complex
                                          ? rng.complex_symmetric()
                                          : cplx(rng.symmetric(), 0.0));
    return g;
}

}  // namespace gnum
