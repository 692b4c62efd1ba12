#pragma once

// Mass terms, first-order field residuals, plane-wave solution families,
// conserved currents and chiral projectors for the right-acting Dirac
// equation over the Minkowski gamma algebra.

#include <optional>
#include <utility>

#include "jet.hpp"
#include "lie.hpp"

namespace gnum {

// p0^2 - p1^2 - p2^2 - p3^2; same value for covariant or contravariant
// components under the diagonal metric.
inline double minkowski_square(const std::array<double, 4>& p) {
    return p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
}

enum class CanonicalForm { FormI, FormII, FormIII, FormIV };

// Right-acting mass data (m, N, K). Complex flavor: N^2 + K^2 = e and the
// residual is i*dslash(psi) - m(psi N + e5 psi K). Real flavor stores the
// hatted pair with N^2 + K^2 = -e and residual dslash(psi) + m(psi N + e5 psi K).
class MassTerm {
public:
    double m = 0.0;
    GammaNumber n, k;
    bool real_flavor = false;
    // Set when N, K decompose as scalar + real multiple of a hermitian
    // unitary; the current-conservation identities need this shape.
    bool hermitian_parts = false;
    // Construction tag and its numeric parameters, kept for serialization.
    std::string kind = "standard";
    std::vector<double> params;

    static MassTerm standard(double m, GammaNumber n, GammaNumber k,
                             bool hermitian_parts = false) {
        require_nonneg(m);
        validate_pair(n, k, 1.0);
        MassTerm mt;
        mt.m = m;
        mt.n = std::move(n);
        mt.k = std::move(k);
        mt.hermitian_parts = hermitian_parts;
        return mt;
    }

    static MassTerm real_form(double m, GammaNumber n_hat, GammaNumber k_hat) {
        require_nonneg(m);
        validate_pair(n_hat, k_hat, -1.0);
        MassTerm mt;
        mt.m = m;
        mt.n = std::move(n_hat);
        mt.k = std::move(k_hat);
        mt.real_flavor = true;
        mt.kind = "real";
        return mt;
    }

    static MassTerm canonical(CanonicalForm form, double m, double xi, double eta = 0.0);
    static MassTerm electroweak(double m, double xi) {
        MassTerm mt = canonical(CanonicalForm::FormIV, m, xi, xi + kPi);
        mt.kind = "electroweak";
        mt.params = {xi};
        return mt;
    }
    static MassTerm hestenes(double m) {
        auto ctx = AlgebraContext::minkowski(Field::Real);
        MassTerm mt = real_form(m, GammaNumber::blade(ctx, 0b0111), GammaNumber::zero(ctx));
        mt.kind = "hestenes";
        return mt;
    }
    // Four decoupled masses: N = sum m_l s_l with m = 1; N^2 + K^2 equals the
    // squared mass matrix instead of e.
    static MassTerm multi_mass(const std::array<double, 4>& masses);

    const AlgebraContext& ctx() const { return n.ctx(); }
    GammaNumber n0() const { return n + pseudoscalar(ctx()) * k; }
    GammaNumber n1() const { return n - pseudoscalar(ctx()) * k; }

private:
    MassTerm() = default;
    static void require_nonneg(double m) {
        if (m < 0.0) throw schema_error("mass must be nonnegative");
    }
    static void validate_pair(const GammaNumber& n, const GammaNumber& k, double square) {
        if (n.ctx() != k.ctx()) throw error("mass term: context mismatch");
        if (!commutator(n, k).approx_zero(kTolQuadratic))
            throw invariant_error("mass term: N and K must commute");
        GammaNumber unit_defect = n * n + k * k - GammaNumber::scalar(n.ctx(), square);
        if (!unit_defect.approx_zero(kTolQuadratic))
            throw invariant_error("mass term: N^2 + K^2 has the wrong square");
    }
    static constexpr double kPi = 3.141592653589793238462643383279502884;
};

namespace detail {

// Four primitive commuting idempotents; in the matrix picture each selects
// one column.
inline std::array<GammaNumber, 4> spinor_idempotents_impl(const AlgebraContext& ctx) {
    GammaNumber e = GammaNumber::unit(ctx);
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber it12 = GammaNumber::blade(ctx, 0b0110) * cplx(0, 1);
    GammaNumber it012 = GammaNumber::blade(ctx, 0b0111) * cplx(0, 1);
    return {(e + e0 + it12 + it012) * 0.25, (e + e0 - it12 - it012) * 0.25,
            (e - e0 + it12 - it012) * 0.25, (e - e0 - it12 + it012) * 0.25};
}

}  // namespace detail

inline std::array<GammaNumber, 4> spinor_idempotents(
    const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    return detail::spinor_idempotents_impl(ctx);
}

inline MassTerm MassTerm::canonical(CanonicalForm form, double m, double xi, double eta) {
    auto ctx = AlgebraContext::minkowski();
    GammaNumber e = GammaNumber::unit(ctx);
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber it12 = GammaNumber::blade(ctx, 0b0110) * cplx(0, 1);
    GammaNumber it012 = GammaNumber::blade(ctx, 0b0111) * cplx(0, 1);
    double cx = std::cos(xi), sx = std::sin(xi);
    double ce = std::cos(eta), se = std::sin(eta);
    GammaNumber n = GammaNumber::zero(ctx), k = GammaNumber::zero(ctx);
    switch (form) {
        case CanonicalForm::FormI:
            n = e * cx;
            k = e * sx;
            break;
        case CanonicalForm::FormII:
            n = (e + e0 + it12 - it012) * (0.5 * cx);
            k = e0 * sx;
            break;
        case CanonicalForm::FormIII:
            n = (e * 3.0 + e0 + it12 - it012) * (0.25 * cx) +
                (e - e0 - it12 + it012) * (0.25 * ce);
            k = (e * 3.0 + e0 + it12 - it012) * (0.25 * sx) +
                (e - e0 - it12 + it012) * (0.25 * se);
            break;
        case CanonicalForm::FormIV:
            n = (e + e0) * (0.5 * cx) + (e - e0) * (0.5 * ce);
            k = (e + e0) * (0.5 * sx) + (e - e0) * (0.5 * se);
            break;
    }
    MassTerm mt = standard(m, std::move(n), std::move(k), true);
    mt.kind = "canonical";
    mt.params = {double(int(form)), xi, eta};
    return mt;
}

inline MassTerm MassTerm::multi_mass(const std::array<double, 4>& masses) {
    auto ctx = AlgebraContext::minkowski();
    auto s = spinor_idempotents(ctx);
    GammaNumber n = GammaNumber::zero(ctx);
    for (int l = 0; l < 4; ++l) {
        if (masses[std::size_t(l)] < 0.0) throw schema_error("mass must be nonnegative");
        n += s[std::size_t(l)] * masses[std::size_t(l)];
    }
    MassTerm mt;
    mt.m = 1.0;
    mt.n = std::move(n);
    mt.k = GammaNumber::zero(ctx);
    mt.kind = "multimass";
    mt.params.assign(masses.begin(), masses.end());
    return mt;
}

// N = V J V^-1 with a full Jordan block, K the matching upper-triangular
// polynomial in the nilpotent part; the pair commutes with N^2 + K^2 = e.
inline std::pair<GammaNumber, GammaNumber> example_pair_jordan(double theta, const CMat& v) {
    double z = std::cos(theta), y = std::sin(theta);
    if (std::abs(y) < 1e-8) throw schema_error("jordan pair needs sin(theta) != 0");
    double a = -z / y, b = -1.0 / (2.0 * y * y * y), c = -z / (2.0 * std::pow(y, 5));
    CMat nj(4, 4), kj(4, 4);
    for (int i = 0; i < 4; ++i) {
        nj(i, i) = z;
        kj(i, i) = y;
        if (i < 3) {
            nj(i, i + 1) = 1.0;
            kj(i, i + 1) = a;
        }
        if (i < 2) kj(i, i + 2) = b;
    }
    kj(0, 3) = c;
    CMat vinv = inverse(v, v.inf_norm() * 1e-13);
    CMat nm = v * nj * vinv, km = v * kj * vinv;
    CMat comm = nm * km - km * nm;
    CMat unit_defect = nm * nm + km * km - CMat::identity(4);
    if (comm.inf_norm() > kTolQuadratic || unit_defect.inf_norm() > 1e-8)
        throw invariant_error("jordan pair: constraint violated");
    return {from_matrix(Mat4C::from_cmat(nm)), from_matrix(Mat4C::from_cmat(km))};
}

inline std::pair<GammaNumber, GammaNumber> example_pair_diag(const std::array<double, 4>& phases,
                                                             const CMat& v) {
    CMat nd(4, 4), kd(4, 4);
    for (int i = 0; i < 4; ++i) {
        nd(i, i) = std::cos(phases[std::size_t(i)]);
        kd(i, i) = std::sin(phases[std::size_t(i)]);
    }
    CMat vinv = inverse(v, v.inf_norm() * 1e-13);
    CMat nm = v * nd * vinv, km = v * kd * vinv;
    CMat comm = nm * km - km * nm;
    CMat unit_defect = nm * nm + km * km - CMat::identity(4);
    if (comm.inf_norm() > 1e-8 || unit_defect.inf_norm() > 1e-8)
        throw invariant_error("diag pair: constraint violated");
    return {from_matrix(Mat4C::from_cmat(nm)), from_matrix(Mat4C::from_cmat(km))};
}

// Residual of the first-order equation, optionally with a gauge potential
// entering through the covariant derivative grad_mu - psi a_mu.
inline GammaNumber dirac_residual(const Jet2& psi, const MassTerm& mt,
                                  const std::array<GammaNumber, 4>* a = nullptr) {
    const AlgebraContext& ctx = psi.ctx();
    if (ctx != mt.ctx()) throw error("dirac_residual: context mismatch");
    GammaNumber slash = GammaNumber::zero(ctx);
    for (int mu = 0; mu < 4; ++mu) {
        GammaNumber d = psi.grad[std::size_t(mu)];
        if (a) d -= psi.value * (*a)[std::size_t(mu)];
        slash += basis_vector(ctx, mu) * d;
    }
    GammaNumber mass = (psi.value * mt.n + pseudoscalar(ctx) * psi.value * mt.k) * mt.m;
    if (mt.real_flavor) return slash + mass;
    return slash * cplx(0, 1) - mass;
}

inline GammaNumber klein_gordon_residual(const Jet2& psi, double m) {
    return -(box(psi) + psi.value * (m * m));
}

// Applies the two first-order factors in sequence and subtracts the
// second-order operator output; vanishes identically when z^2 + y^2 = 1.
inline GammaNumber factorization_residual(const Jet2& phi, double m, cplx z, cplx y) {
    if (std::abs(z * z + y * y - cplx(1.0)) > kTolQuadratic)
        throw invariant_error("factorization: z^2 + y^2 must be 1");
    const AlgebraContext& ctx = phi.ctx();
    GammaNumber e5 = pseudoscalar(ctx);
    auto apply = [&](const Jet2& f, cplx zz, cplx yy) {
        Jet2 r = dslash_jet(f) * cplx(0, 1);
        Jet2 mass = f * (m * zz) + (e5 * f) * (m * yy);
        return r - mass;
    };
    // (i dslash + m(z - y e5)) (i dslash - m(z + y e5)) phi
    Jet2 inner = apply(phi, z, y);
    Jet2 outer = dslash_jet(inner) * cplx(0, 1) + inner * (m * z) - (e5 * inner) * (m * y);
    return outer.value - klein_gordon_residual(phi, m);
}

// --- plane waves ----------------------------------------------------------

struct PlaneWaveSpec {
    std::array<double, 4> p{};  // covariant components p_mu
    GammaNumber s, y;
    MassTerm mt;

    explicit PlaneWaveSpec(MassTerm mass)
        : s(GammaNumber::zero(mass.ctx())), y(GammaNumber::unit(mass.ctx())), mt(std::move(mass)) {}
};

inline GammaNumber momentum_slash(const AlgebraContext& ctx, const std::array<double, 4>& p) {
    GammaNumber r = GammaNumber::zero(ctx);
    for (int mu = 0; mu < 4; ++mu) r += basis_vector(ctx, mu) * p[std::size_t(mu)];
    return r;
}

inline void validate_wave_spec(const PlaneWaveSpec& spec) {
    const MassTerm& mt = spec.mt;
    if (mt.real_flavor) throw schema_error("plane_wave: complex-flavor mass term required");
    const AlgebraContext& ctx = mt.ctx();
    if (spec.s.ctx() != ctx || spec.y.ctx() != ctx)
        throw error("plane_wave: context mismatch");
    double msq = minkowski_square(spec.p);
    if (std::abs(msq - mt.m * mt.m) > kTolQuadratic * std::max(1.0, mt.m * mt.m))
        throw invariant_error("plane_wave: p.p must equal m^2");
    GammaNumber e = GammaNumber::unit(ctx);
    if (!(spec.s * spec.s + e).approx_zero(kTolQuadratic))
        throw invariant_error("plane_wave: S^2 must be -e");
    for (const GammaNumber* g : {&spec.s, &spec.y})
        if (!commutator(*g, mt.n).approx_zero(kTolQuadratic) ||
            !commutator(*g, mt.k).approx_zero(kTolQuadratic))
            throw invariant_error("plane_wave: S, Y must commute with N and K");
}

// (P + i m (N - e5 K) S) exp(p.x S) Y.
inline FieldPtr plane_wave(const PlaneWaveSpec& spec) {
    validate_wave_spec(spec);
    const AlgebraContext& ctx = spec.mt.ctx();
    GammaNumber head = momentum_slash(ctx, spec.p) +
                       (spec.mt.n - pseudoscalar(ctx) * spec.mt.k) * spec.s * cplx(0, spec.mt.m);
    return product_field({constant_field(head), planewave_field(spec.s, spec.p),
                          constant_field(spec.y)});
}

// Normalized wave of the N = e0 equation; spatial components are the
// contravariant momenta.
inline FieldPtr standard_wave(double m, const std::array<double, 3>& pk,
                              const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    if (m <= 0.0) throw schema_error("standard_wave: m must be positive");
    double en = std::sqrt(pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2] + m * m);
    std::array<double, 4> pcov = {en, -pk[0], -pk[1], -pk[2]};
    double norm = 1.0 / std::sqrt(2.0 * m * (en + m));
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber head = (momentum_slash(ctx, pcov) + e0 * m) * e0 * norm;
    GammaNumber phase_dir = GammaNumber::unit(ctx) * cplx(0, -1);
    return product_field({constant_field(head), planewave_field(phase_dir, pcov)});
}

// Real-algebra wave exp(-p.x I) with I = (q.e) e5; q unit.
inline FieldPtr real_wave(double m, const std::array<double, 3>& pk,
                          const std::array<double, 3>& q,
                          const AlgebraContext& ctx = AlgebraContext::minkowski(Field::Real)) {
    if (m <= 0.0) throw schema_error("real_wave: m must be positive");
    double qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    if (std::abs(qq - 1.0) > kTolQuadratic) throw invariant_error("real_wave: q must be unit");
    GammaNumber dir = GammaNumber::zero(ctx);
    for (int i = 0; i < 3; ++i) dir += basis_vector(ctx, i + 1) * q[std::size_t(i)];
    GammaNumber iplane = dir * pseudoscalar(ctx);
    double en = std::sqrt(pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2] + m * m);
    std::array<double, 4> pcov = {en, -pk[0], -pk[1], -pk[2]};
    double norm = 1.0 / std::sqrt(2.0 * m * (en + m));
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber head = (momentum_slash(ctx, pcov) + e0 * m) * e0 * norm;
    return product_field({constant_field(head),
                          planewave_field(iplane, {-pcov[0], -pcov[1], -pcov[2], -pcov[3]})});
}

// Mass data solved by real_wave: dslash psi + m psi e0 I = 0.
inline MassTerm real_wave_term(double m, const std::array<double, 3>& q,
                               const AlgebraContext& ctx = AlgebraContext::minkowski(Field::Real)) {
    GammaNumber dir = GammaNumber::zero(ctx);
    for (int i = 0; i < 3; ++i) dir += basis_vector(ctx, i + 1) * q[std::size_t(i)];
    GammaNumber n_hat = basis_vector(ctx, 0) * dir * pseudoscalar(ctx);
    return MassTerm::real_form(m, std::move(n_hat), GammaNumber::zero(ctx));
}

// In-plane phase e12 instead of (q.e)e5; solves the real equation with
// N = e012 and lands in the even subalgebra family.
inline FieldPtr hestenes_wave(double m, const std::array<double, 3>& pk,
                              const AlgebraContext& ctx = AlgebraContext::minkowski(Field::Real)) {
    if (m <= 0.0) throw schema_error("hestenes_wave: m must be positive");
    double en = std::sqrt(pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2] + m * m);
    std::array<double, 4> pcov = {en, -pk[0], -pk[1], -pk[2]};
    double norm = 1.0 / std::sqrt(2.0 * m * (en + m));
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber head = (momentum_slash(ctx, pcov) + e0 * m) * e0 * norm;
    GammaNumber plane = GammaNumber::blade(ctx, 0b0110);
    return product_field({constant_field(head),
                          planewave_field(plane, {-pcov[0], -pcov[1], -pcov[2], -pcov[3]})});
}

// Representatives of the five similarity classes of square-roots of -e.
inline std::array<GammaNumber, 5> s_classes(
    const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    GammaNumber e = GammaNumber::unit(ctx);
    GammaNumber e0 = basis_vector(ctx, 0);
    GammaNumber it12 = GammaNumber::blade(ctx, 0b0110) * cplx(0, 1);
    GammaNumber it012 = GammaNumber::blade(ctx, 0b0111) * cplx(0, 1);
    GammaNumber s45 = (-e + e0 + it12 + it012) * cplx(0, 0.5);
    return {e * cplx(0, 1), e * cplx(0, -1), e0 * cplx(0, 1), s45, -s45};
}

// --- decomposition into even and odd parts --------------------------------

struct DecomposeReport {
    double even_residual = 0.0;
    double odd_residual = 0.0;
    double square_defect = 0.0;  // N0^2, N1^2 vs +-e
};

inline DecomposeReport decompose_check(const Jet2& psi, const MassTerm& mt) {
    if (!mt.n.even().approx_zero() || !mt.k.even().approx_zero())
        throw invariant_error("decompose_check: N, K must be odd");
    const AlgebraContext& ctx = psi.ctx();
    GammaNumber e5 = pseudoscalar(ctx);
    GammaNumber n0 = mt.n0(), n1 = mt.n1();
    double target = mt.real_flavor ? -1.0 : 1.0;
    GammaNumber sq0 = n0 * n0 - GammaNumber::scalar(ctx, target);
    GammaNumber sq1 = n1 * n1 - GammaNumber::scalar(ctx, target);
    Jet2 even = psi.map([](const GammaNumber& g) { return g.even(); });
    Jet2 odd = psi.map([](const GammaNumber& g) { return g.odd(); });
    auto part_residual = [&](const Jet2& part, const GammaNumber& nn) {
        GammaNumber slash = GammaNumber::zero(ctx);
        for (int mu = 0; mu < 4; ++mu)
            slash += basis_vector(ctx, mu) * part.grad[std::size_t(mu)];
        if (mt.real_flavor) return slash + part.value * nn * mt.m;
        return slash * cplx(0, 1) - part.value * nn * mt.m;
    };
    DecomposeReport rep;
    rep.even_residual = part_residual(even, n0).inf_norm();
    rep.odd_residual = part_residual(odd, n1).inf_norm();
    rep.square_defect = std::max(sq0.inf_norm(), sq1.inf_norm());
    return rep;
}

// --- currents --------------------------------------------------------------

inline Jet2 bar_jet(const Jet2& psi) {
    return psi.dagger() * basis_vector(psi.ctx(), 0);
}

struct CurrentReport {
    // Contravariant components j^mu per generator, plus the plain divergence
    // d0 j^0 + d1 j^1 + d2 j^2 + d3 j^3 from the exact jet.
    std::vector<std::array<double, 4>> j;
    std::vector<double> divergence;
    double max_imag = 0.0;
};

// Currents from the grade-1 part of psi t_k bar(psi) X, X = ie (default) or
// e5 (the massless alternative pairing).
inline CurrentReport currents(const Jet2& psi, const GeneratorSet& gs,
                              bool e5_pairing = false) {
    const AlgebraContext& ctx = psi.ctx();
    GammaNumber pair = e5_pairing ? pseudoscalar(ctx)
                                  : GammaNumber::unit(ctx) * cplx(0, 1);
    Jet2 bar = bar_jet(psi);
    CurrentReport rep;
    double scale = 1.0 + psi.inf_norm();
    for (const auto& t : gs.gens) {
        Jet2 c = psi * t * bar * pair;
        std::array<double, 4> jmu{};
        for (int nu = 0; nu < 4; ++nu) {
            cplx coef = c.value.coeff(BladeMask(1u << nu));
            rep.max_imag = std::max(rep.max_imag, std::abs(coef.imag()));
            jmu[std::size_t(nu)] = nu == 0 ? -coef.real() : coef.real();
        }
        double div = -c.grad[0].coeff(0b0001).real();
        for (int k = 1; k < 4; ++k)
            div += c.grad[std::size_t(k)].coeff(BladeMask(1u << k)).real();
        for (int nu = 0; nu < 4; ++nu)
            for (int mu = 0; mu < 4; ++mu)
                rep.max_imag = std::max(
                    rep.max_imag,
                    std::abs(c.grad[std::size_t(mu)].coeff(BladeMask(1u << nu)).imag()));
        rep.j.push_back(jmu);
        rep.divergence.push_back(div);
    }
    if (rep.max_imag > kTolAdjoint * scale * scale)
        throw invariant_error("currents: grade-1 coefficients are not real");
    return rep;
}

// max_k |coeff_k(pi_L(bar(psi) X e^mu psi)) - j^mu_k|.
inline double current_projection_residual(const Jet2& psi, const GeneratorSet& gs, int mu,
                                          const CurrentReport& rep, bool e5_pairing = false) {
    const AlgebraContext& ctx = psi.ctx();
    GammaNumber pair = e5_pairing ? pseudoscalar(ctx)
                                  : GammaNumber::unit(ctx) * cplx(0, 1);
    GammaNumber probe = bar_jet(psi).value * pair * basis_vector(ctx, mu) * psi.value;
    SpanSolver solver(gs.gens);
    auto ex = solver.expand(probe);
    double worst = 0.0;
    for (std::size_t k = 0; k < gs.gens.size(); ++k)
        worst = std::max(worst, std::abs(ex.coeffs[k] - cplx(rep.j[k][std::size_t(mu)])));
    return worst;
}

// First bilinear identity: i d_mu(bar e^mu psi) - m(bar psi N - N^dag bar psi + ...).
inline std::pair<double, double> bilinear_identity_residuals(const Jet2& psi,
                                                             const MassTerm& mt) {
    const AlgebraContext& ctx = psi.ctx();
    if (mt.real_flavor) throw schema_error("bilinear identities: complex flavor only");
    GammaNumber e5 = pseudoscalar(ctx);
    Jet2 bar = bar_jet(psi);
    auto divergence = [&](const GammaNumber& mid) {
        GammaNumber r = GammaNumber::zero(ctx);
        for (int mu = 0; mu < 4; ++mu) {
            Jet2 prod = bar * (mid * basis_vector(ctx, mu)) * psi;
            r += prod.grad[std::size_t(mu)];
        }
        return r;
    };
    GammaNumber bb = (bar * psi).value;
    GammaNumber b5 = (bar * (e5 * psi)).value;
    GammaNumber nd = mt.n.dagger(), kd = mt.k.dagger();
    GammaNumber first = divergence(GammaNumber::unit(ctx)) * cplx(0, 1) -
                        (bb * mt.n - nd * bb + b5 * mt.k - kd * b5) * mt.m;
    GammaNumber second = divergence(e5) * cplx(0, 1) -
                         (b5 * mt.n + nd * b5 - bb * mt.k - kd * bb) * mt.m;
    return {first.inf_norm(), second.inf_norm()};
}

// Projection of the mass-side bilinear onto the gauge algebra vanishes for
// scalar+projector mass terms and admissible algebras.
inline double gauge_projection_residual(const GammaNumber& psi, const MassTerm& mt,
                                        const GeneratorSet& gs) {
    const AlgebraContext& ctx = psi.ctx();
    GammaNumber e5 = pseudoscalar(ctx);
    GammaNumber bar = psi.dagger() * basis_vector(ctx, 0);
    GammaNumber bb = bar * psi, b5 = bar * e5 * psi;
    GammaNumber nd = mt.n.dagger(), kd = mt.k.dagger();
    GammaNumber b = bb * mt.n - nd * bb + b5 * mt.k - kd * b5;
    SpanSolver solver(gs.gens);
    auto ex = solver.expand(b);
    double worst = 0.0;
    for (const auto& cmag : ex.coeffs) worst = std::max(worst, std::abs(cmag));
    return worst;
}

// --- chiral projectors ------------------------------------------------------

inline GammaNumber chiral_left(const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    return (GammaNumber::unit(ctx) + pseudoscalar(ctx) * cplx(0, 1)) * 0.5;
}
inline GammaNumber chiral_right(const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    return (GammaNumber::unit(ctx) - pseudoscalar(ctx) * cplx(0, 1)) * 0.5;
}

inline std::pair<Jet2, Jet2> chiral_split(const Jet2& psi) {
    return {chiral_left(psi.ctx()) * psi, chiral_right(psi.ctx()) * psi};
}

// --- admissibility and canonical gauge sets ---------------------------------

inline bool is_admissible(const GeneratorSet& gs, const MassTerm& mt) {
    for (const auto& t : gs.gens)
        if (!commutator(t, mt.n).approx_zero(kTolQuadratic) ||
            !commutator(t, mt.k).approx_zero(kTolQuadratic))
            return false;
    return true;
}

// Antihermitian generator sets of the canonical gauge groups; dimensions
// 16, 5, 9, 8.
inline GeneratorSet canonical_gauge_set(CanonicalForm form) {
    auto ctx = AlgebraContext::minkowski();
    auto from = [&](const Mat4C& m) { return from_matrix(m, ctx); };
    auto block_su2 = [&](int base) {
        // antihermitian traceless on the 2x2 block at (base, base)
        std::vector<GammaNumber> out;
        Mat4C m1, m2, m3;
        m1(base, base) = cplx(0, 1);
        m1(base + 1, base + 1) = cplx(0, -1);
        m2(base, base + 1) = 1.0;
        m2(base + 1, base) = -1.0;
        m3(base, base + 1) = cplx(0, 1);
        m3(base + 1, base) = cplx(0, 1);
        out.push_back(from(m1));
        out.push_back(from(m2));
        out.push_back(from(m3));
        return out;
    };
    GeneratorSet gs;
    switch (form) {
        case CanonicalForm::FormI: {
            gs = builtin_generators("antihermitian16");
            gs.name = "canonical1";
            return gs;
        }
        case CanonicalForm::FormII: {
            auto spin = builtin_generators("spinorial4");
            std::vector<GammaNumber> gens = block_su2(0);
            gens.push_back(spin.gens[2]);
            gens.push_back(spin.gens[3]);
            return GeneratorSet{"canonical2", std::move(gens), nullptr};
        }
        case CanonicalForm::FormIII: {
            auto gm = builtin_generators("gellmann8");
            std::vector<GammaNumber> gens = gm.gens;
            gens.push_back(GammaNumber::unit(ctx) * cplx(0, 1));
            return GeneratorSet{"canonical3", std::move(gens), nullptr};
        }
        case CanonicalForm::FormIV: {
            std::vector<GammaNumber> gens = block_su2(0);
            auto lower = block_su2(2);
            gens.insert(gens.end(), lower.begin(), lower.end());
            Mat4C u1a, u1b;
            u1a(0, 0) = u1a(1, 1) = cplx(0, 1);
            u1b(2, 2) = u1b(3, 3) = cplx(0, 1);
            gens.push_back(from(u1a));
            gens.push_back(from(u1b));
            return GeneratorSet{"canonical4", std::move(gens), nullptr};
        }
    }
    throw error("unreachable canonical form");
}

// Random invertible element of com(N, K) built from the commutant basis.
inline GammaNumber random_commutant_element(const MassTerm& mt, Rng& rng,
                                            double scale = 0.6) {
    auto basis = commutant_basis({mt.n, mt.k});
    const AlgebraContext& ctx = mt.ctx();
    for (int attempt = 0; attempt < 16; ++attempt) {
        GammaNumber w = GammaNumber::unit(ctx);
        for (const auto& b : basis) w += b * (rng.complex_symmetric() * scale);
        try {
            inverse_gamma(w);
            return w;
        } catch (const invariant_error&) {
        }
    }
    throw invariant_error("could not sample an invertible commutant element");
}

// Random square-root of -e inside com(N, K): conjugate a class representative
// by an invertible commutant element.
inline GammaNumber random_admissible_s(const MassTerm& mt, Rng& rng) {
    auto classes = s_classes(mt.ctx());
    GammaNumber rep = classes[rng.next_u64() % classes.size()];
    GammaNumber w = random_commutant_element(mt, rng);
    return w * rep * inverse_gamma(w);
}

inline GammaNumber random_commutant_combination(const MassTerm& mt, Rng& rng) {
    auto basis = commutant_basis({mt.n, mt.k});
    GammaNumber y = GammaNumber::zero(mt.ctx());
    for (const auto& b : basis) y += b * rng.complex_symmetric();
    return y;
}

}  // namespace gnum
