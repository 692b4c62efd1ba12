#pragma once
// Gauge sector: algebra-valued potentials and field strengths over the outer
// rank-4 blade algebra, the second-order field equations, gauge
// transformations, the coupled system with spinor sources, the per-column
// idempotent reduction, and the polar decomposition of a field value.

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <utility>

#include "gnum/dirac.hpp"

namespace gnum {

// --- tensor numbers ---------------------------------------------------------
// Sums of outer blades E^mask with gamma-number coefficients.  Outer blades
// anticommute among themselves with the (+,-,-,-) metric and commute with
// every coefficient; coefficient products keep their order.

class TensorGamma {
public:
    explicit TensorGamma(const AlgebraContext& inner) : inner_(inner) {}

    static const AlgebraContext& outer() {
        static const AlgebraContext ctx = AlgebraContext::minkowski(Field::Real);
        return ctx;
    }

    static TensorGamma term(BladeMask mask, const GammaNumber& coeff) {
        outer().check_mask(mask);
        TensorGamma t(coeff.ctx());
        if (!coeff.approx_zero(0.0)) t.terms_[mask] = coeff;
        return t;
    }

    const AlgebraContext& inner() const { return inner_; }

    GammaNumber coeff(BladeMask mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? GammaNumber::zero(inner_) : it->second;
    }

    void add(BladeMask mask, const GammaNumber& g) {
        outer().check_mask(mask);
        auto it = terms_.find(mask);
        if (it == terms_.end())
            terms_.emplace(mask, g);
        else
            it->second += g;
    }

    TensorGamma& operator+=(const TensorGamma& o) {
        require_same(o);
        for (const auto& [m, g] : o.terms_) add(m, g);
        return *this;
    }
    TensorGamma& operator-=(const TensorGamma& o) {
        require_same(o);
        for (const auto& [m, g] : o.terms_) add(m, -g);
        return *this;
    }
    friend TensorGamma operator+(TensorGamma a, const TensorGamma& b) { return a += b; }
    friend TensorGamma operator-(TensorGamma a, const TensorGamma& b) { return a -= b; }
    TensorGamma operator-() const {
        TensorGamma r(inner_);
        for (const auto& [m, g] : terms_) r.terms_.emplace(m, -g);
        return r;
    }

    friend TensorGamma operator*(const TensorGamma& a, const TensorGamma& b) {
        a.require_same(b);
        TensorGamma r(a.inner_);
        for (const auto& [ma, ga] : a.terms_)
            for (const auto& [mb, gb] : b.terms_) {
                auto [mask, sign] = outer().blade_product(ma, mb);
                r.add(mask, (ga * gb) * double(sign));
            }
        return r;
    }
    friend TensorGamma operator*(const TensorGamma& a, cplx s) {
        TensorGamma r(a.inner_);
        for (const auto& [m, g] : a.terms_) r.terms_.emplace(m, g * s);
        return r;
    }

    TensorGamma grade_part(int k) const {
        TensorGamma r(inner_);
        for (const auto& [m, g] : terms_)
            if (std::popcount(unsigned(m)) == k) r.terms_.emplace(m, g);
        return r;
    }

    // Applies f to every coefficient (e.g. a group conjugation).
    template <typename F>
    TensorGamma mapped(F&& f) const {
        TensorGamma r(inner_);
        for (const auto& [m, g] : terms_) r.terms_.emplace(m, f(g));
        return r;
    }

    double inf_norm() const {
        double worst = 0.0;
        for (const auto& [m, g] : terms_) worst = std::max(worst, g.inf_norm());
        return worst;
    }
    bool approx_zero(double tol = kTolAlgebraic) const { return inf_norm() <= tol; }

private:
    void require_same(const TensorGamma& o) const {
        if (inner_ != o.inner_) throw error("tensor number: mixed coefficient contexts");
    }

    AlgebraContext inner_;
    std::map<BladeMask, GammaNumber> terms_;
};

// --- algebra-valued fields --------------------------------------------------

// Membership of g in the real span of the generators: least-squares residual
// plus the largest imaginary part of any expansion coefficient.
inline double real_span_defect(const SpanSolver& solver, const GammaNumber& g) {
    auto ex = solver.expand(g);
    double imag = 0.0;
    for (const auto& c : ex.coeffs) imag = std::max(imag, std::abs(c.imag()));
    return std::max(ex.residual, imag);
}

inline double real_span_defect(const GeneratorSet& gs, const GammaNumber& g) {
    return real_span_defect(SpanSolver(gs.gens), g);
}

struct LieValuedPotential {
    std::array<FieldPtr, 4> a;
    GeneratorSet gs;
};

struct FieldStrength {
    std::array<FieldPtr, 6> f;  // pairs (0,1)(0,2)(0,3)(1,2)(1,3)(2,3)
};

constexpr std::array<std::pair<int, int>, 6> kStrengthPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int fpair_index(int mu, int nu) {
    if (mu < 0 || nu < 0 || mu > 3 || nu > 3 || mu == nu)
        throw schema_error("field strength: pair index out of range");
    if (mu > nu) std::swap(mu, nu);
    static constexpr int base[3] = {0, 3, 5};
    return base[mu] + (nu - mu - 1);
}

// Pointwise evaluation caches: second-order data for the potential,
// first-order data for the strength.
struct PotentialJets {
    std::array<Jet2, 4> a;
};

struct StrengthJets {
    std::array<GammaNumber, 6> value;
    std::array<std::array<GammaNumber, 4>, 6> grad;  // grad[pair][lambda]
};

namespace detail {

inline void require_lie_jet(const SpanSolver& solver, const Jet2& j, const char* what) {
    double scale = 1.0 + j.inf_norm();
    auto check = [&](const GammaNumber& g) {
        if (real_span_defect(solver, g) > kTolQuadratic * scale)
            throw error(std::string(what) + ": field escapes the generator span");
    };
    check(j.value);
    for (const auto& g : j.grad) check(g);
    for (const auto& g : j.hess) check(g);
}

}  // namespace detail

inline PotentialJets eval_potential(const LieValuedPotential& pot, const Point& x) {
    SpanSolver solver(pot.gs.gens);
    PotentialJets out;
    for (int mu = 0; mu < 4; ++mu) {
        out.a[std::size_t(mu)] = jet_eval(pot.a[std::size_t(mu)], x);
        detail::require_lie_jet(solver, out.a[std::size_t(mu)], "potential");
    }
    return out;
}

// f_{mu nu} = d_mu a_nu - d_nu a_mu - [a_nu, a_mu], with first derivatives
// obtained from the potential Hessians.
inline StrengthJets derive_strength(const PotentialJets& aj) {
    StrengthJets out;
    for (std::size_t p = 0; p < 6; ++p) {
        auto [mu, nu] = kStrengthPairs[p];
        const Jet2& am = aj.a[std::size_t(mu)];
        const Jet2& an = aj.a[std::size_t(nu)];
        out.value[p] = an.grad[std::size_t(mu)] - am.grad[std::size_t(nu)] -
                       commutator(an.value, am.value);
        for (int lam = 0; lam < 4; ++lam)
            out.grad[p][std::size_t(lam)] =
                an.hess[std::size_t(hess_index(lam, mu))] -
                am.hess[std::size_t(hess_index(lam, nu))] -
                commutator(an.grad[std::size_t(lam)], am.value) -
                commutator(an.value, am.grad[std::size_t(lam)]);
    }
    return out;
}

inline StrengthJets eval_strength(const FieldStrength& f, const GeneratorSet& gs, const Point& x) {
    SpanSolver solver(gs.gens);
    StrengthJets out;
    for (std::size_t p = 0; p < 6; ++p) {
        Jet2 j = jet_eval(f.f[p], x);
        detail::require_lie_jet(solver, j, "field strength");
        out.value[p] = j.value;
        out.grad[p] = j.grad;
    }
    return out;
}

inline std::array<GammaNumber, 6> curvature(const LieValuedPotential& pot, const Point& x) {
    return derive_strength(eval_potential(pot, x)).value;
}

// --- second-order field equations -------------------------------------------

struct YmResidual {
    TensorGamma eq1;      // grade-2: potential/strength compatibility
    TensorGamma eq2;      // grade-1: dynamic equation, source-free
    TensorGamma bianchi;  // grade-3 part of the same expression
    double component_defect = 0.0;  // blade coefficients vs component equations
};

namespace detail {

// Core evaluation shared by the full and the commutator-free variants.
inline YmResidual ym_core(const PotentialJets& aj, const StrengthJets& fj, bool commutators) {
    const AlgebraContext& ctx = aj.a[0].ctx();
    const AlgebraContext& outer = TensorGamma::outer();

    // First equation: grade-2 part of E^mu (d_mu A - [A, a_mu]) - A^2, minus F.
    TensorGamma expr1(ctx);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            auto [mask, sign] = outer.blade_product(BladeMask(1u << mu), BladeMask(1u << nu));
            GammaNumber g = aj.a[std::size_t(nu)].grad[std::size_t(mu)];
            if (commutators)
                g -= commutator(aj.a[std::size_t(nu)].value, aj.a[std::size_t(mu)].value) +
                     aj.a[std::size_t(mu)].value * aj.a[std::size_t(nu)].value;
            expr1.add(mask, g * double(sign));
        }
    YmResidual out{TensorGamma(ctx), TensorGamma(ctx), TensorGamma(ctx), 0.0};
    out.eq1 = expr1.grade_part(2);
    for (std::size_t p = 0; p < 6; ++p) {
        auto [mu, nu] = kStrengthPairs[p];
        out.eq1.add(BladeMask((1u << mu) | (1u << nu)), -fj.value[p]);
    }

    // Second expression: E^mu (d_mu F - [F, a_mu]); grade 1 is the dynamic
    // equation, grade 3 the cyclic-derivative part.
    TensorGamma expr2(ctx);
    for (int mu = 0; mu < 4; ++mu)
        for (std::size_t p = 0; p < 6; ++p) {
            auto [al, be] = kStrengthPairs[p];
            BladeMask fmask = BladeMask((1u << al) | (1u << be));
            auto [mask, sign] = outer.blade_product(BladeMask(1u << mu), fmask);
            GammaNumber g = fj.grad[p][std::size_t(mu)];
            if (commutators) g -= commutator(fj.value[p], aj.a[std::size_t(mu)].value);
            expr2.add(mask, g * double(sign));
        }
    out.eq2 = expr2.grade_part(1);
    out.bianchi = expr2.grade_part(3);

    // Component cross-check: the blade coefficients must reproduce the
    // index-form equations exactly.
    double defect = 0.0, scale = 1.0;
    for (const auto& j : aj.a) scale = std::max(scale, j.inf_norm());
    for (std::size_t p = 0; p < 6; ++p) scale = std::max(scale, 1.0 + fj.value[p].inf_norm());
    for (std::size_t p = 0; p < 6; ++p) {
        auto [mu, nu] = kStrengthPairs[p];
        GammaNumber comp = aj.a[std::size_t(nu)].grad[std::size_t(mu)] -
                           aj.a[std::size_t(mu)].grad[std::size_t(nu)] - fj.value[p];
        if (commutators)
            comp -= commutator(aj.a[std::size_t(nu)].value, aj.a[std::size_t(mu)].value);
        defect = std::max(
            defect,
            max_abs_diff(out.eq1.coeff(BladeMask((1u << mu) | (1u << nu))), comp));
    }
    for (int nu = 0; nu < 4; ++nu) {
        GammaNumber comp = GammaNumber::zero(ctx);
        for (int mu = 0; mu < 4; ++mu) {
            if (mu == nu) continue;
            int lo = std::min(mu, nu), hi = std::max(mu, nu);
            double orient = mu < nu ? 1.0 : -1.0;  // f_{mu nu} = -f_{nu mu}
            std::size_t p = std::size_t(fpair_index(lo, hi));
            GammaNumber fmn = fj.value[p] * orient;
            GammaNumber dfmn = fj.grad[p][std::size_t(mu)] * orient;
            GammaNumber t = dfmn;
            if (commutators) t -= commutator(fmn, aj.a[std::size_t(mu)].value);
            comp += t * double(ctx.signature(mu));
        }
        defect = std::max(defect, max_abs_diff(out.eq2.coeff(BladeMask(1u << nu)), comp));
    }
    out.component_defect = defect;
    if (defect > kTolAlgebraic * scale * scale)
        throw error("field equations: blade and component forms disagree");
    return out;
}

}  // namespace detail

// Strength derived from the potential: cyclic-derivative part must vanish.
inline YmResidual ym_residual(const LieValuedPotential& pot, const Point& x) {
    PotentialJets aj = eval_potential(pot, x);
    StrengthJets fj = derive_strength(aj);
    YmResidual r = detail::ym_core(aj, fj, true);
    double scale = 1.0;
    for (const auto& j : aj.a) scale = std::max(scale, 1.0 + j.inf_norm());
    if (r.bianchi.inf_norm() > kTolAlgebraic * scale * scale * scale)
        throw error("field equations: cyclic-derivative part of a derived strength is nonzero");
    return r;
}

// Explicit strength: the cyclic-derivative part is reported, not asserted.
inline YmResidual ym_residual(const LieValuedPotential& pot, const FieldStrength& f,
                              const Point& x) {
    PotentialJets aj = eval_potential(pot, x);
    StrengthJets fj = eval_strength(f, pot.gs, x);
    return detail::ym_core(aj, fj, true);
}

inline void require_one_dim_abelian(const GeneratorSet& gs) {
    if (gs.size() != 1)
        throw schema_error("commutator-free equations need a one-dimensional generator set");
}

inline YmResidual maxwell_residual(const LieValuedPotential& pot, const Point& x) {
    require_one_dim_abelian(pot.gs);
    PotentialJets aj = eval_potential(pot, x);
    return detail::ym_core(aj, derive_strength(aj), false);
}

inline YmResidual maxwell_residual(const LieValuedPotential& pot, const FieldStrength& f,
                                   const Point& x) {
    require_one_dim_abelian(pot.gs);
    PotentialJets aj = eval_potential(pot, x);
    return detail::ym_core(aj, eval_strength(f, pot.gs, x), false);
}

// Divergence d^mu a_mu: the grade-0 coefficient of E^mu d_mu A.
inline GammaNumber lorentz_condition(const LieValuedPotential& pot, const Point& x) {
    PotentialJets aj = eval_potential(pot, x);
    GammaNumber r = GammaNumber::zero(aj.a[0].ctx());
    for (int mu = 0; mu < 4; ++mu)
        r += aj.a[std::size_t(mu)].grad[std::size_t(mu)] * double(aj.a[0].ctx().signature(mu));
    return r;
}

// d/dx_mu of a scalar polynomial.
inline ScalarPoly scalar_poly_derivative(const ScalarPoly& p, int mu) {
    ScalarPoly out;
    for (const auto& t : p) {
        int pw = t.powers[std::size_t(mu)];
        if (pw == 0) continue;
        ScalarPolyTerm d = t;
        d.coeff *= pw;
        d.powers[std::size_t(mu)] = pw - 1;
        out.push_back(d);
    }
    return out;
}

// a'_mu = a_mu + i (d_mu lambda) e for a one-dimensional set spanned by ie.
inline LieValuedPotential abelian_shift(const LieValuedPotential& pot, const ScalarPoly& lambda) {
    require_one_dim_abelian(pot.gs);
    const AlgebraContext& ctx = pot.gs.ctx();
    LieValuedPotential out = pot;
    for (int mu = 0; mu < 4; ++mu) {
        ScalarPoly d = scalar_poly_derivative(lambda, mu);
        if (d.empty()) continue;
        std::vector<PolyTerm> terms;
        for (const auto& t : d)
            terms.push_back({GammaNumber::unit(ctx) * cplx(0.0, t.coeff), t.powers});
        out.a[std::size_t(mu)] =
            sum_field({pot.a[std::size_t(mu)], poly_field(ctx, std::move(terms))});
    }
    return out;
}

// --- gauge transformations ---------------------------------------------------
// U(x) = prod_i exp(lambda_i(x) t_i) with polynomial exponents; the inverse and
// the exact derivative fields stay inside the field-expression language.

struct GaugeFactor {
    GammaNumber t;
    ScalarPoly lambda;
};

class GaugeTransformation {
public:
    GaugeTransformation(std::vector<GaugeFactor> factors, const GeneratorSet& gs)
        : factors_(std::move(factors)) {
        if (factors_.empty()) throw schema_error("gauge transformation: no factors");
        SpanSolver solver(gs.gens);
        for (const auto& f : factors_) {
            if (f.t.ctx() != gs.ctx())
                throw error("gauge transformation: factor context mismatch");
            if (real_span_defect(solver, f.t) > kTolQuadratic * (1.0 + f.t.inf_norm()))
                throw invariant_error(
                    "gauge transformation: factor generator outside the set span");
        }
    }

    FieldPtr u_field() const {
        std::vector<FieldPtr> parts;
        for (const auto& f : factors_) parts.push_back(groupfactor_field(f.lambda, f.t));
        return parts.size() == 1 ? parts[0] : product_field(std::move(parts));
    }

    FieldPtr u_inverse_field() const {
        std::vector<FieldPtr> parts;
        for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
            ScalarPoly neg = it->lambda;
            for (auto& t : neg) t.coeff = -t.coeff;
            parts.push_back(groupfactor_field(neg, it->t));
        }
        return parts.size() == 1 ? parts[0] : product_field(std::move(parts));
    }

    // d_mu U as a field: sum over factors of U_1..U_{i-1} (d_mu lambda_i) t_i U_i..U_k.
    FieldPtr du_field(int mu) const {
        const AlgebraContext& ctx = factors_.front().t.ctx();
        std::vector<FieldPtr> terms;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            ScalarPoly d = scalar_poly_derivative(factors_[i].lambda, mu);
            if (d.empty()) continue;
            std::vector<PolyTerm> scaled;
            for (const auto& t : d) scaled.push_back({factors_[i].t * t.coeff, t.powers});
            std::vector<FieldPtr> prod;
            for (std::size_t j = 0; j < i; ++j)
                prod.push_back(groupfactor_field(factors_[j].lambda, factors_[j].t));
            prod.push_back(poly_field(ctx, std::move(scaled)));
            for (std::size_t j = i; j < factors_.size(); ++j)
                prod.push_back(groupfactor_field(factors_[j].lambda, factors_[j].t));
            terms.push_back(prod.size() == 1 ? prod[0] : product_field(std::move(prod)));
        }
        if (terms.empty()) return constant_field(GammaNumber::zero(ctx));
        return terms.size() == 1 ? terms[0] : sum_field(std::move(terms));
    }

    FieldPtr conjugated(const FieldPtr& g) const {
        return product_field({u_inverse_field(), g, u_field()});
    }

    // a'_mu = U^{-1} a_mu U + U^{-1} d_mu U.
    FieldPtr transformed_potential(const FieldPtr& a_mu, int mu) const {
        return sum_field({conjugated(a_mu), product_field({u_inverse_field(), du_field(mu)})});
    }

    const std::vector<GaugeFactor>& factors() const { return factors_; }

private:
    std::vector<GaugeFactor> factors_;
};

// --- the coupled system ------------------------------------------------------

struct DymConfig {
    FieldPtr psi;
    LieValuedPotential pot;
    std::optional<FieldStrength> strength;  // empty: derived from the potential
    MassTerm mt;
    double epsilon;

    DymConfig(FieldPtr psi_in, LieValuedPotential pot_in, std::optional<FieldStrength> f_in,
              MassTerm mt_in, double eps)
        : psi(std::move(psi_in)),
          pot(std::move(pot_in)),
          strength(std::move(f_in)),
          mt(std::move(mt_in)),
          epsilon(eps) {
        if (epsilon != 1.0 && epsilon != -1.0)
            throw schema_error("coupled system: epsilon must be +1 or -1");
        // The commutation constraint enters through the mass side only, so a
        // massless system accepts any closed generator set.
        if (mt.m != 0.0 && !is_admissible(pot.gs, mt))
            throw invariant_error(
                "coupled system: generators must commute with the mass pair");
        if (pot.gs.ctx() != mt.ctx()) throw error("coupled system: context mismatch");
    }
};

// Right side of the third equation: -eps sum_k t_k (x) grade-1(psi t_k bar(psi) pair),
// with the inner grade-1 blades transcribed to outer blades.
inline TensorGamma source_current(const GammaNumber& psi, const GeneratorSet& gs, double eps,
                                  bool e5_pairing) {
    const AlgebraContext& ctx = psi.ctx();
    GammaNumber pair =
        e5_pairing ? pseudoscalar(ctx) : GammaNumber::unit(ctx) * cplx(0.0, 1.0);
    GammaNumber bar = psi.dagger() * basis_vector(ctx, 0);
    TensorGamma out(ctx);
    for (const auto& t : gs.gens) {
        GammaNumber bil = (psi * t * bar * pair).grade_part(1);
        for (int nu = 0; nu < 4; ++nu) {
            cplx c = bil.coeff(BladeMask(1u << nu));
            if (c != cplx(0.0)) out.add(BladeMask(1u << nu), t * (-eps * c));
        }
    }
    return out;
}

inline TensorGamma source_J(const GammaNumber& psi, const GeneratorSet& gs, double eps) {
    return source_current(psi, gs, eps, false);
}

inline TensorGamma source_Jtilde(const GammaNumber& psi, const GeneratorSet& gs, double eps) {
    return source_current(psi, gs, eps, true);
}

struct DymResidual {
    GammaNumber dirac;    // first equation
    TensorGamma eq1;      // second equation, grade-2
    TensorGamma eq2;      // third equation with the source subtracted, grade-1
    TensorGamma bianchi;  // grade-3 part of the third expression
};

inline DymResidual dym_residual(const DymConfig& cfg, const Point& x) {
    Jet2 psi = jet_eval(cfg.psi, x);
    PotentialJets aj = eval_potential(cfg.pot, x);
    StrengthJets fj = cfg.strength ? eval_strength(*cfg.strength, cfg.pot.gs, x)
                                   : derive_strength(aj);
    std::array<GammaNumber, 4> avals = {aj.a[0].value, aj.a[1].value, aj.a[2].value,
                                        aj.a[3].value};
    YmResidual ym = detail::ym_core(aj, fj, true);
    bool real_pairing = cfg.mt.ctx().field() == Field::Real;
    TensorGamma src = source_current(psi.value, cfg.pot.gs, cfg.epsilon, real_pairing);
    return DymResidual{dirac_residual(psi, cfg.mt, &avals), ym.eq1, ym.eq2 - src, ym.bianchi};
}

// Applies psi' = psi U, a' = U^{-1} a U + U^{-1} dU, f' = U^{-1} f U.
inline DymConfig gauge_transform(const DymConfig& cfg, const GaugeTransformation& u) {
    LieValuedPotential pot{{}, cfg.pot.gs};
    for (int mu = 0; mu < 4; ++mu)
        pot.a[std::size_t(mu)] = u.transformed_potential(cfg.pot.a[std::size_t(mu)], mu);
    std::optional<FieldStrength> strength;
    if (cfg.strength) {
        FieldStrength fs;
        for (std::size_t p = 0; p < 6; ++p) fs.f[p] = u.conjugated(cfg.strength->f[p]);
        strength = fs;
    }
    return DymConfig(product_field({cfg.psi, u.u_field()}), std::move(pot),
                     std::move(strength), cfg.mt, cfg.epsilon);
}

// --- spinor-column reduction -------------------------------------------------

struct ColumnReduction {
    std::array<cplx, 4> psi_col{};           // column of the field value
    std::array<double, 4> abar{};            // doubled scalar potential
    cplx mass_n{}, mass_k{};                 // per-column mass pair scalars
    double dirac_norm = 0.0;                 // reduced first-equation residual
    double curvature_norm = 0.0;             // reduced second-equation residual
    double source_norm = 0.0;                // reduced third-equation residual
    double match_defect = 0.0;               // reduced vs extracted column equations
};

struct SpinorReduction {
    std::array<ColumnReduction, 4> columns;
    double idempotent_defect = 0.0;  // worst deviation in the idempotent relations
};

inline SpinorReduction spinor_reduce(const DymConfig& cfg, const Point& x) {
    const AlgebraContext& ctx = cfg.mt.ctx();
    auto spin = builtin_generators("spinorial4");
    if (cfg.pot.gs.size() != 4)
        throw schema_error("column reduction: needs the four diagonal generators");
    for (int k = 0; k < 4; ++k)
        if (max_abs_diff(cfg.pot.gs.gens[std::size_t(k)], spin.gens[std::size_t(k)]) >
            kTolAlgebraic)
            throw schema_error("column reduction: needs the four diagonal generators");
    auto s = spinor_idempotents(ctx);
    for (const auto& sk : s)
        if (!commutator(cfg.mt.n, sk).approx_zero(kTolQuadratic) ||
            !commutator(cfg.mt.k, sk).approx_zero(kTolQuadratic))
            throw invariant_error("column reduction: mass pair must be diagonal");

    SpinorReduction out;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            GammaNumber prod = s[std::size_t(k)] * s[std::size_t(l)];
            GammaNumber want = k == l ? s[std::size_t(k)] : GammaNumber::zero(ctx);
            out.idempotent_defect = std::max(out.idempotent_defect, max_abs_diff(prod, want));
        }

    Jet2 psi = jet_eval(cfg.psi, x);
    PotentialJets aj = eval_potential(cfg.pot, x);
    StrengthJets fj = cfg.strength ? eval_strength(*cfg.strength, cfg.pot.gs, x)
                                   : derive_strength(aj);
    DymResidual full = dym_residual(cfg, x);

    SpanSolver solver(cfg.pot.gs.gens);
    // Doubled scalar coefficients of the potential, its gradients and the strength.
    std::array<std::array<double, 4>, 4> abar{};        // [mu][l]
    std::array<std::array<double, 4>, 16> dabar{};      // [mu*4+nu][l]: d_mu abar_nu
    std::array<std::array<double, 4>, 6> fbar{};        // [pair][l]
    std::array<std::array<double, 4>, 24> dfbar{};      // [pair*4+lam][l]
    auto expand2 = [&](const GammaNumber& g, std::array<double, 4>& dst) {
        auto ex = solver.expand(g);
        for (int l = 0; l < 4; ++l) dst[std::size_t(l)] = 2.0 * ex.coeffs[std::size_t(l)].real();
    };
    for (int mu = 0; mu < 4; ++mu) {
        expand2(aj.a[std::size_t(mu)].value, abar[std::size_t(mu)]);
        for (int nu = 0; nu < 4; ++nu)
            expand2(aj.a[std::size_t(nu)].grad[std::size_t(mu)], dabar[std::size_t(mu * 4 + nu)]);
    }
    for (std::size_t p = 0; p < 6; ++p) {
        expand2(fj.value[p], fbar[p]);
        for (int lam = 0; lam < 4; ++lam) expand2(fj.grad[p][std::size_t(lam)], dfbar[p * 4 + std::size_t(lam)]);
    }

    // Frozen matrices of the basis vectors and the grade-4 unit.
    std::array<Mat4C, 4> gamma;
    for (int mu = 0; mu < 4; ++mu) gamma[std::size_t(mu)] = to_matrix(basis_vector(ctx, mu));
    Mat4C gamma5 = to_matrix(pseudoscalar(ctx));
    Mat4C psi_m = to_matrix(psi.value);
    std::array<Mat4C, 4> dpsi_m;
    for (int mu = 0; mu < 4; ++mu) dpsi_m[std::size_t(mu)] = to_matrix(psi.grad[std::size_t(mu)]);
    Mat4C nm = to_matrix(cfg.mt.n), km = to_matrix(cfg.mt.k);
    Mat4C dirac_m = to_matrix(full.dirac);

    auto col = [](const Mat4C& m, int l) {
        std::array<cplx, 4> c;
        for (int r = 0; r < 4; ++r) c[std::size_t(r)] = m(r, l);
        return c;
    };
    auto matvec = [](const Mat4C& m, const std::array<cplx, 4>& v) {
        std::array<cplx, 4> r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[std::size_t(i)] += m(i, j) * v[std::size_t(j)];
        return r;
    };

    for (int l = 0; l < 4; ++l) {
        ColumnReduction& cr = out.columns[std::size_t(l)];
        cr.psi_col = col(psi_m, l);
        for (int mu = 0; mu < 4; ++mu) cr.abar[std::size_t(mu)] = abar[std::size_t(mu)][std::size_t(l)];
        cr.mass_n = nm(l, l);
        cr.mass_k = km(l, l);

        // Reduced first equation:
        //   i gamma^mu d_mu psi_l + abar_mu gamma^mu psi_l - m (n_l + k_l gamma5) psi_l.
        std::array<cplx, 4> r1{};
        for (int mu = 0; mu < 4; ++mu) {
            auto term = matvec(gamma[std::size_t(mu)], col(dpsi_m[std::size_t(mu)], l));
            auto gauge = matvec(gamma[std::size_t(mu)], cr.psi_col);
            for (int r = 0; r < 4; ++r)
                r1[std::size_t(r)] += cplx(0, 1) * term[std::size_t(r)] +
                                      cr.abar[std::size_t(mu)] * gauge[std::size_t(r)];
        }
        auto mass5 = matvec(gamma5, cr.psi_col);
        for (int r = 0; r < 4; ++r)
            r1[std::size_t(r)] -= cfg.mt.m * (cr.mass_n * cr.psi_col[std::size_t(r)] +
                                              cr.mass_k * mass5[std::size_t(r)]);
        auto extracted1 = col(dirac_m, l);
        double d1 = 0.0, n1 = 0.0;
        for (int r = 0; r < 4; ++r) {
            d1 = std::max(d1, std::abs(r1[std::size_t(r)] - extracted1[std::size_t(r)]));
            n1 = std::max(n1, std::abs(r1[std::size_t(r)]));
        }
        cr.dirac_norm = n1;
        cr.match_defect = std::max(cr.match_defect, d1);

        // Reduced second equation per pair: d_mu abar_nu - d_nu abar_mu - fbar.
        for (std::size_t p = 0; p < 6; ++p) {
            auto [mu, nu] = kStrengthPairs[p];
            double rc = dabar[std::size_t(mu * 4 + nu)][std::size_t(l)] -
                        dabar[std::size_t(nu * 4 + mu)][std::size_t(l)] -
                        fbar[p][std::size_t(l)];
            cr.curvature_norm = std::max(cr.curvature_norm, std::abs(rc));
            cplx extracted =
                to_matrix(full.eq1.coeff(BladeMask((1u << mu) | (1u << nu))))(l, l);
            cr.match_defect =
                std::max(cr.match_defect, std::abs(extracted - cplx(0, 1) * rc));
        }

        // Reduced third equation per index: g^{mu mu} d_mu fbar_{mu nu} - eps g_{nu nu} jbar_nu,
        // with jbar_nu = conj(psi_l)^T gamma^0 gamma_nu psi_l.
        for (int nu = 0; nu < 4; ++nu) {
            double lhs = 0.0;
            for (int mu = 0; mu < 4; ++mu) {
                if (mu == nu) continue;
                int lo = std::min(mu, nu), hi = std::max(mu, nu);
                double orient = mu < nu ? 1.0 : -1.0;
                lhs += ctx.signature(mu) * orient *
                       dfbar[std::size_t(fpair_index(lo, hi)) * 4 + std::size_t(mu)][std::size_t(l)];
            }
            auto gnu_psi = matvec(gamma[std::size_t(nu)], cr.psi_col);
            auto g0_gnu_psi = matvec(gamma[0], gnu_psi);
            cplx jbar = 0.0;
            for (int r = 0; r < 4; ++r)
                jbar += std::conj(cr.psi_col[std::size_t(r)]) * g0_gnu_psi[std::size_t(r)];
            cplx rs = lhs - cfg.epsilon * double(ctx.signature(nu)) * jbar;
            cr.source_norm = std::max(cr.source_norm, std::abs(rs));
            cplx extracted = to_matrix(full.eq2.coeff(BladeMask(1u << nu)))(l, l);
            cr.match_defect =
                std::max(cr.match_defect, std::abs(extracted - cplx(0, 1) * rs));
        }
    }
    return out;
}

// Reduction of the four-mass diagonal system: each column carries its own mass.
inline SpinorReduction multi_mass_reduce(const std::array<double, 4>& masses, FieldPtr psi,
                                         LieValuedPotential pot,
                                         std::optional<FieldStrength> f, double eps,
                                         const Point& x) {
    DymConfig cfg(std::move(psi), std::move(pot), std::move(f),
                  MassTerm::multi_mass(masses), eps);
    return spinor_reduce(cfg, x);
}

// --- polar decomposition ------------------------------------------------------

struct PolarDecomposition {
    GammaNumber p, u;
    int rank = 4;                  // numerical rank of the value
    double min_singular = 0.0;     // smallest retained singular value
    double reconstruction = 0.0;   // | psi - p u |
};

// psi = P U with P hermitian nonnegative and U unitary, built from the
// eigendecomposition of psi^dagger psi; zero singular directions (below
// 1e-14 x max) get their unitary part from a Gram-Schmidt completion.
inline PolarDecomposition polar_gauge(const GammaNumber& psi) {
    const AlgebraContext& ctx = psi.ctx();
    if (!ctx.is_minkowski()) throw schema_error("polar decomposition: rank-4 context required");
    CMat m = to_matrix(psi).to_cmat();
    CMat h = m.adjoint() * m;
    EigResult eig = eig_hermitian(h);
    double top = std::max(eig.values.back(), 0.0);
    double cutoff = 1e-14 * top;

    PolarDecomposition out;
    std::vector<double> sigma(4, 0.0);
    CMat w(4, 4);
    std::vector<int> zero_cols;
    for (int i = 0; i < 4; ++i) {
        double ev = eig.values[std::size_t(i)];
        if (ev <= cutoff) {
            zero_cols.push_back(i);
            continue;
        }
        sigma[std::size_t(i)] = std::sqrt(ev);
        for (int r = 0; r < 4; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += m(r, c) * eig.vectors(c, i);
            w(r, i) = acc / sigma[std::size_t(i)];
        }
    }
    out.rank = 4 - int(zero_cols.size());
    // Complete the zero directions to an orthonormal frame.
    std::vector<int> filled;
    for (int j = 0; j < 4; ++j)
        if (std::find(zero_cols.begin(), zero_cols.end(), j) == zero_cols.end())
            filled.push_back(j);
    for (int zc : zero_cols) {
        for (int cand = 0; cand < 4; ++cand) {
            std::array<cplx, 4> v{};
            v[std::size_t(cand)] = 1.0;
            for (int j : filled) {
                cplx dot = 0.0;
                for (int r = 0; r < 4; ++r) dot += std::conj(w(r, j)) * v[std::size_t(r)];
                for (int r = 0; r < 4; ++r) v[std::size_t(r)] -= dot * w(r, j);
            }
            double norm = 0.0;
            for (const auto& z : v) norm += std::norm(z);
            norm = std::sqrt(norm);
            if (norm > 0.25) {
                for (int r = 0; r < 4; ++r) w(r, zc) = v[std::size_t(r)] / norm;
                filled.push_back(zc);
                break;
            }
        }
    }

    CMat pm(4, 4), um(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            cplx pacc = 0.0, uacc = 0.0;
            for (int i = 0; i < 4; ++i) {
                pacc += w(r, i) * sigma[std::size_t(i)] * std::conj(w(c, i));
                uacc += w(r, i) * std::conj(eig.vectors(c, i));
            }
            pm(r, c) = pacc;
            um(r, c) = uacc;
        }

    double scale = 1.0 + m.inf_norm();
    if (max_abs_diff(um * um.adjoint(), CMat::identity(4)) > kTolQuadratic)
        throw error("polar decomposition: unitary factor check failed");
    out.reconstruction = max_abs_diff(pm * um, m);
    if (out.reconstruction > kTolQuadratic * scale)
        throw error("polar decomposition: reconstruction check failed");
    out.min_singular = sigma[0];
    for (double s : sigma) out.min_singular = std::min(out.min_singular, s);
    if (out.min_singular < -1e-12) throw error("polar decomposition: negative singular value");
    out.p = from_matrix(Mat4C::from_cmat(pm), ctx);
    out.u = from_matrix(Mat4C::from_cmat(um), ctx);
    return out;
}

}  // namespace gnum
