#pragma once

// Second-order jets of gamma-valued fields and the expression trees that emit
// them. Differentiation is exact: every field description knows its own
// Taylor data, so residuals of field equations are checked to round-off.

#include <array>
#include <memory>
#include <vector>

#include "rep.hpp"

namespace gnum {

using Point = std::array<double, 4>;

// Symmetric Hessian storage: (0,0)(0,1)(0,2)(0,3)(1,1)(1,2)(1,3)(2,2)(2,3)(3,3).
inline int hess_index(int mu, int nu) {
    if (mu > nu) std::swap(mu, nu);
    static constexpr int base[4] = {0, 4, 7, 9};
    return base[mu] + (nu - mu);
}

class Jet2 {
public:
    Jet2() = default;
    explicit Jet2(const AlgebraContext& ctx)
        : value(GammaNumber::zero(ctx)) {
        grad.fill(GammaNumber::zero(ctx));
        hess.fill(GammaNumber::zero(ctx));
    }

    static Jet2 constant(const GammaNumber& g) {
        Jet2 j(g.ctx());
        j.value = g;
        return j;
    }

    const AlgebraContext& ctx() const { return value.ctx(); }

    Jet2 operator+(const Jet2& o) const {
        Jet2 r = *this;
        r.value += o.value;
        for (int m = 0; m < 4; ++m) r.grad[std::size_t(m)] += o.grad[std::size_t(m)];
        for (int h = 0; h < 10; ++h) r.hess[std::size_t(h)] += o.hess[std::size_t(h)];
        return r;
    }

    Jet2 operator-(const Jet2& o) const {
        Jet2 r = *this;
        r.value -= o.value;
        for (int m = 0; m < 4; ++m) r.grad[std::size_t(m)] -= o.grad[std::size_t(m)];
        for (int h = 0; h < 10; ++h) r.hess[std::size_t(h)] -= o.hess[std::size_t(h)];
        return r;
    }

    Jet2 operator-() const {
        Jet2 r = *this;
        r.value = -r.value;
        for (auto& g : r.grad) g = -g;
        for (auto& h : r.hess) h = -h;
        return r;
    }

    // Noncommutative Leibniz rule through second order.
    Jet2 operator*(const Jet2& o) const {
        Jet2 r(ctx());
        r.value = value * o.value;
        for (int m = 0; m < 4; ++m)
            r.grad[std::size_t(m)] = grad[std::size_t(m)] * o.value + value * o.grad[std::size_t(m)];
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                int h = hess_index(mu, nu);
                r.hess[std::size_t(h)] = hess[std::size_t(h)] * o.value +
                                         grad[std::size_t(mu)] * o.grad[std::size_t(nu)] +
                                         grad[std::size_t(nu)] * o.grad[std::size_t(mu)] +
                                         value * o.hess[std::size_t(h)];
            }
        return r;
    }

    Jet2 operator*(cplx z) const {
        Jet2 r = *this;
        r.value = r.value * z;
        for (auto& g : r.grad) g = g * z;
        for (auto& h : r.hess) h = h * z;
        return r;
    }

    friend Jet2 operator*(const GammaNumber& c, const Jet2& j) {
        Jet2 r(j.ctx());
        r.value = c * j.value;
        for (int m = 0; m < 4; ++m) r.grad[std::size_t(m)] = c * j.grad[std::size_t(m)];
        for (int h = 0; h < 10; ++h) r.hess[std::size_t(h)] = c * j.hess[std::size_t(h)];
        return r;
    }

    friend Jet2 operator*(const Jet2& j, const GammaNumber& c) {
        Jet2 r(j.ctx());
        r.value = j.value * c;
        for (int m = 0; m < 4; ++m) r.grad[std::size_t(m)] = j.grad[std::size_t(m)] * c;
        for (int h = 0; h < 10; ++h) r.hess[std::size_t(h)] = j.hess[std::size_t(h)] * c;
        return r;
    }

    // Conjugations commute with differentiation, so they act componentwise.
    Jet2 dagger() const { return map([](const GammaNumber& g) { return g.dagger(); }); }
    Jet2 star() const { return map([](const GammaNumber& g) { return g.star(); }); }
    Jet2 reverse() const { return map([](const GammaNumber& g) { return g.reverse(); }); }
    Jet2 grade_part(int k) const {
        return map([k](const GammaNumber& g) { return g.grade_part(k); });
    }

    template <typename F>
    Jet2 map(F&& f) const {
        Jet2 r;
        r.value = f(value);
        for (int m = 0; m < 4; ++m) r.grad[std::size_t(m)] = f(grad[std::size_t(m)]);
        for (int h = 0; h < 10; ++h) r.hess[std::size_t(h)] = f(hess[std::size_t(h)]);
        return r;
    }

    double inf_norm() const {
        double n = value.inf_norm();
        for (const auto& g : grad) n = std::max(n, g.inf_norm());
        for (const auto& h : hess) n = std::max(n, h.inf_norm());
        return n;
    }

    GammaNumber value;
    std::array<GammaNumber, 4> grad;
    std::array<GammaNumber, 10> hess;
};

inline double max_abs_diff(const Jet2& a, const Jet2& b) { return (a - b).inf_norm(); }

// exp at jet level by series with scaling and squaring; exact because jet
// multiplication is exact function-product differentiation.
inline Jet2 exp_jet(const Jet2& a) {
    double norm = a.inf_norm();
    int squarings = 0;
    Jet2 x = a;
    while (norm > 0.5 && squarings < 64) {
        x = x * 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Jet2 result = Jet2::constant(GammaNumber::unit(a.ctx()));
    Jet2 term = result;
    for (int k = 1; k <= 96; ++k) {
        term = term * x * (1.0 / k);
        result = result + term;
        if (term.inf_norm() < 1e-16) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// dslash = e^mu * grad_mu (left multiplication by the basis vectors).
inline GammaNumber dslash(const Jet2& j) {
    GammaNumber r = GammaNumber::zero(j.ctx());
    for (int mu = 0; mu < 4; ++mu) r += basis_vector(j.ctx(), mu) * j.grad[std::size_t(mu)];
    return r;
}

// One order down: value = dslash, grad from the Hessian.
inline Jet2 dslash_jet(const Jet2& j) {
    Jet2 r(j.ctx());
    r.value = dslash(j);
    for (int mu = 0; mu < 4; ++mu) {
        GammaNumber g = GammaNumber::zero(j.ctx());
        for (int nu = 0; nu < 4; ++nu)
            g += basis_vector(j.ctx(), nu) * j.hess[std::size_t(hess_index(nu, mu))];
        r.grad[std::size_t(mu)] = g;
    }
    return r;
}

// box = d0^2 - d1^2 - d2^2 - d3^2.
inline GammaNumber box(const Jet2& j) {
    GammaNumber r = j.hess[std::size_t(hess_index(0, 0))];
    for (int k = 1; k < 4; ++k) r -= j.hess[std::size_t(hess_index(k, k))];
    return r;
}

// --- scalar polynomial machinery ---------------------------------------

struct ScalarPolyTerm {
    double coeff = 0.0;
    std::array<int, 4> powers{};
};
using ScalarPoly = std::vector<ScalarPolyTerm>;

struct ScalarJet {
    double v = 0.0;
    std::array<double, 4> g{};
    std::array<double, 10> h{};
};

namespace detail {

inline double int_pow(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

inline ScalarJet monomial_jet(const Point& x, const std::array<int, 4>& pw) {
    ScalarJet j;
    std::array<double, 4> base;
    for (int m = 0; m < 4; ++m) base[std::size_t(m)] = int_pow(x[std::size_t(m)], pw[std::size_t(m)]);
    j.v = base[0] * base[1] * base[2] * base[3];
    auto d1 = [&](int m) {
        int p = pw[std::size_t(m)];
        if (p == 0) return 0.0;
        double r = p * int_pow(x[std::size_t(m)], p - 1);
        for (int i = 0; i < 4; ++i)
            if (i != m) r *= base[std::size_t(i)];
        return r;
    };
    for (int m = 0; m < 4; ++m) j.g[std::size_t(m)] = d1(m);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu; nu < 4; ++nu) {
            double r;
            if (mu == nu) {
                int p = pw[std::size_t(mu)];
                if (p < 2) {
                    r = 0.0;
                } else {
                    r = double(p) * (p - 1) * int_pow(x[std::size_t(mu)], p - 2);
                    for (int i = 0; i < 4; ++i)
                        if (i != mu) r *= base[std::size_t(i)];
                }
            } else {
                int p = pw[std::size_t(mu)], q = pw[std::size_t(nu)];
                if (p == 0 || q == 0) {
                    r = 0.0;
                } else {
                    r = double(p) * q * int_pow(x[std::size_t(mu)], p - 1) *
                        int_pow(x[std::size_t(nu)], q - 1);
                    for (int i = 0; i < 4; ++i)
                        if (i != mu && i != nu) r *= base[std::size_t(i)];
                }
            }
            j.h[std::size_t(hess_index(mu, nu))] = r;
        }
    }
    return j;
}

inline ScalarJet scalar_poly_jet(const ScalarPoly& poly, const Point& x) {
    ScalarJet acc;
    for (const auto& term : poly) {
        ScalarJet m = monomial_jet(x, term.powers);
        acc.v += term.coeff * m.v;
        for (int i = 0; i < 4; ++i) acc.g[std::size_t(i)] += term.coeff * m.g[std::size_t(i)];
        for (int i = 0; i < 10; ++i) acc.h[std::size_t(i)] += term.coeff * m.h[std::size_t(i)];
    }
    return acc;
}

}  // namespace detail

// --- field expression tree ----------------------------------------------

struct PolyTerm {
    GammaNumber coeff;
    std::array<int, 4> powers{};
};

class FieldExpr;
using FieldPtr = std::shared_ptr<const FieldExpr>;

// Tagged union of the field families with exact jets: constants, coordinate
// functions, polynomials with gamma coefficients, plane-wave factors
// exp((c.x) S) with S^2 = -e, single-generator group factors exp(lambda(x) t),
// and finite sums/products.
class FieldExpr {
public:
    enum class Kind { Constant, Coordinate, Poly, PlaneWave, GroupFactor, Sum, Product };

    Kind kind;
    AlgebraContext context;

    GammaNumber constant;              // Constant
    int mu = 0;                        // Coordinate
    std::vector<PolyTerm> poly;        // Poly
    GammaNumber direction;             // PlaneWave S / GroupFactor t
    std::array<double, 4> wave{};      // PlaneWave covariant coefficients
    ScalarPoly lambda;                 // GroupFactor exponent
    std::vector<FieldPtr> children;    // Sum / Product

    explicit FieldExpr(Kind k, AlgebraContext ctx) : kind(k), context(std::move(ctx)) {}

    Jet2 eval(const Point& x) const {
        switch (kind) {
            case Kind::Constant:
                return Jet2::constant(constant);
            case Kind::Coordinate: {
                Jet2 j(context);
                j.value = GammaNumber::scalar(context, x[std::size_t(mu)]);
                j.grad[std::size_t(mu)] = GammaNumber::unit(context);
                return j;
            }
            case Kind::Poly: {
                Jet2 j(context);
                for (const auto& term : poly) {
                    ScalarJet s = detail::monomial_jet(x, term.powers);
                    j.value += term.coeff * s.v;
                    for (int m = 0; m < 4; ++m)
                        j.grad[std::size_t(m)] += term.coeff * s.g[std::size_t(m)];
                    for (int h = 0; h < 10; ++h)
                        j.hess[std::size_t(h)] += term.coeff * s.h[std::size_t(h)];
                }
                return j;
            }
            case Kind::PlaneWave: {
                double phase = 0.0;
                for (int m = 0; m < 4; ++m) phase += wave[std::size_t(m)] * x[std::size_t(m)];
                GammaNumber e = GammaNumber::unit(context);
                GammaNumber u = e * std::cos(phase) + direction * std::sin(phase);
                GammaNumber du = direction * u;  // d(exp(phi S))/dphi, S^2 = -e
                Jet2 j(context);
                j.value = u;
                for (int m = 0; m < 4; ++m) j.grad[std::size_t(m)] = du * wave[std::size_t(m)];
                for (int a = 0; a < 4; ++a)
                    for (int b = a; b < 4; ++b)
                        j.hess[std::size_t(hess_index(a, b))] =
                            -(u * (wave[std::size_t(a)] * wave[std::size_t(b)]));
                return j;
            }
            case Kind::GroupFactor: {
                ScalarJet s = detail::scalar_poly_jet(lambda, x);
                GammaNumber e = GammaNumber::unit(context);
                if ((direction * direction + e).approx_zero()) {
                    // exp(lambda t) = e cos(lambda) + t sin(lambda), chain rule.
                    GammaNumber u = e * std::cos(s.v) + direction * std::sin(s.v);
                    GammaNumber du = direction * u;
                    GammaNumber ddu = -u;
                    Jet2 j(context);
                    j.value = u;
                    for (int m = 0; m < 4; ++m) j.grad[std::size_t(m)] = du * s.g[std::size_t(m)];
                    for (int a = 0; a < 4; ++a)
                        for (int b = a; b < 4; ++b) {
                            int h = hess_index(a, b);
                            j.hess[std::size_t(h)] =
                                du * s.h[std::size_t(h)] +
                                ddu * (s.g[std::size_t(a)] * s.g[std::size_t(b)]);
                        }
                    return j;
                }
                Jet2 arg(context);
                arg.value = direction * s.v;
                for (int m = 0; m < 4; ++m) arg.grad[std::size_t(m)] = direction * s.g[std::size_t(m)];
                for (int h = 0; h < 10; ++h) arg.hess[std::size_t(h)] = direction * s.h[std::size_t(h)];
                return exp_jet(arg);
            }
            case Kind::Sum: {
                Jet2 j(context);
                for (const auto& c : children) j = j + c->eval(x);
                return j;
            }
            case Kind::Product: {
                Jet2 j = Jet2::constant(GammaNumber::unit(context));
                for (const auto& c : children) j = j * c->eval(x);
                return j;
            }
        }
        throw error("unreachable field kind");
    }
};

inline Jet2 jet_eval(const FieldPtr& f, const Point& x) {
    if (!f) throw error("jet_eval: null field");
    return f->eval(x);
}

inline FieldPtr constant_field(const GammaNumber& g) {
    auto e = std::make_shared<FieldExpr>(FieldExpr::Kind::Constant, g.ctx());
    e->constant = g;
    return e;
}

inline FieldPtr coordinate_field(const AlgebraContext& ctx, int mu) {
    if (mu < 0 || mu > 3) throw schema_error("coordinate index must be 0..3");
    auto e = std::make_shared<FieldExpr>(FieldExpr::Kind::Coordinate, ctx);
    e->mu = mu;
    return e;
}

inline FieldPtr poly_field(const AlgebraContext& ctx, std::vector<PolyTerm> terms) {
    for (const auto& t : terms) {
        if (t.coeff.ctx() != ctx) throw error("poly_field: coefficient context mismatch");
        for (int p : t.powers)
            if (p < 0) throw schema_error("poly_field: negative power");
    }
    auto e = std::make_shared<FieldExpr>(FieldExpr::Kind::Poly, ctx);
    e->poly = std::move(terms);
    return e;
}

inline FieldPtr planewave_field(const GammaNumber& s, const std::array<double, 4>& coeffs) {
    GammaNumber e = GammaNumber::unit(s.ctx());
    if (!(s * s + e).approx_zero(kTolQuadratic))
        throw invariant_error("planewave_field: direction must square to -e");
    auto f = std::make_shared<FieldExpr>(FieldExpr::Kind::PlaneWave, s.ctx());
    f->direction = s;
    f->wave = coeffs;
    return f;
}

inline FieldPtr groupfactor_field(const ScalarPoly& lambda, const GammaNumber& t) {
    auto f = std::make_shared<FieldExpr>(FieldExpr::Kind::GroupFactor, t.ctx());
    f->lambda = lambda;
    f->direction = t;
    return f;
}

inline FieldPtr sum_field(std::vector<FieldPtr> children) {
    if (children.empty()) throw schema_error("sum_field: no children");
    const AlgebraContext& ctx = children.front()->context;
    for (const auto& c : children)
        if (c->context != ctx) throw error("sum_field: mixed contexts");
    auto e = std::make_shared<FieldExpr>(FieldExpr::Kind::Sum, ctx);
    e->children = std::move(children);
    return e;
}

inline FieldPtr product_field(std::vector<FieldPtr> children) {
    if (children.empty()) throw schema_error("product_field: no children");
    const AlgebraContext& ctx = children.front()->context;
    for (const auto& c : children)
        if (c->context != ctx) throw error("product_field: mixed contexts");
    auto e = std::make_shared<FieldExpr>(FieldExpr::Kind::Product, ctx);
    e->children = std::move(children);
    return e;
}

// Random low-degree polynomial field; degree <= 2 keeps Hessians nontrivial.
inline FieldPtr random_poly_field(const AlgebraContext& ctx, Rng& rng, int terms = 4) {
    std::vector<PolyTerm> ts;
    for (int i = 0; i < terms; ++i) {
        PolyTerm t;
        t.coeff = random_gamma(ctx, rng);
        int total = int(rng.next_u64() % 3);
        for (int d = 0; d < total; ++d) ++t.powers[std::size_t(rng.next_u64() % 4)];
        ts.push_back(std::move(t));
    }
    return poly_field(ctx, std::move(ts));
}

}  // namespace gnum
