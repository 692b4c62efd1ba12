#include <catch2/catch_amalgamated.hpp>

#include "gnum/dirac.hpp"

using namespace gnum;

namespace {

const AlgebraContext& mk() {
    static AlgebraContext ctx = AlgebraContext::minkowski();
    return ctx;
}

Point sample_point(Rng& rng) {
    Point x;
    for (auto& xi : x) xi = rng.uniform(-1.0, 1.0);
    return x;
}

std::array<double, 4> on_shell_momentum(double m, Rng& rng) {
    double p1 = rng.symmetric(), p2 = rng.symmetric(), p3 = rng.symmetric();
    double en = std::sqrt(p1 * p1 + p2 * p2 + p3 * p3 + m * m);
    return {en, -p1, -p2, -p3};
}

CMat random_invertible(Rng& rng) {
    for (;;) {
        CMat v(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v(i, j) = rng.complex_symmetric();
        if (std::abs(lu_det(v)) > 0.1) return v;
    }
}

MassTerm random_canonical(CanonicalForm form, double m, Rng& rng) {
    return MassTerm::canonical(form, m, rng.uniform(0.0, 6.28), rng.uniform(0.0, 6.28));
}

const std::array<CanonicalForm, 4> kForms = {CanonicalForm::FormI, CanonicalForm::FormII,
                                             CanonicalForm::FormIII, CanonicalForm::FormIV};

}  // namespace

TEST_CASE("canonical mass terms match their diagonal matrices") {
    double xi = 0.8, eta = 2.1;
    double cx = std::cos(xi), sx = std::sin(xi), ce = std::cos(eta), se = std::sin(eta);

    auto diag = [](cplx a, cplx b, cplx c, cplx d) {
        Mat4C m;
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        m(3, 3) = d;
        return m;
    };

    auto m1 = MassTerm::canonical(CanonicalForm::FormI, 1.0, xi);
    REQUIRE(max_abs_diff(to_matrix(m1.n), diag(cx, cx, cx, cx)) < kTolAlgebraic);
    REQUIRE(max_abs_diff(to_matrix(m1.k), diag(sx, sx, sx, sx)) < kTolAlgebraic);

    auto m2 = MassTerm::canonical(CanonicalForm::FormII, 1.0, xi);
    REQUIRE(max_abs_diff(to_matrix(m2.n), diag(cx, cx, cx, -cx)) < kTolAlgebraic);
    REQUIRE(max_abs_diff(to_matrix(m2.k), diag(sx, sx, -sx, -sx)) < kTolAlgebraic);

    auto m3 = MassTerm::canonical(CanonicalForm::FormIII, 1.0, xi, eta);
    REQUIRE(max_abs_diff(to_matrix(m3.n), diag(cx, cx, cx, ce)) < kTolAlgebraic);
    REQUIRE(max_abs_diff(to_matrix(m3.k), diag(sx, sx, sx, se)) < kTolAlgebraic);

    auto m4 = MassTerm::canonical(CanonicalForm::FormIV, 1.0, xi, eta);
    REQUIRE(max_abs_diff(to_matrix(m4.n), diag(cx, cx, ce, ce)) < kTolAlgebraic);
    REQUIRE(max_abs_diff(to_matrix(m4.k), diag(sx, sx, se, se)) < kTolAlgebraic);

    auto odd = MassTerm::canonical(CanonicalForm::FormIV, 1.0, 0.0, 3.141592653589793);
    REQUIRE(max_abs_diff(odd.n, basis_vector(mk(), 0)) < kTolAlgebraic);
    REQUIRE(odd.k.approx_zero(kTolAlgebraic));

    auto mi = MassTerm::canonical(CanonicalForm::FormI, 2.0, 0.0);
    REQUIRE(max_abs_diff(mi.n, GammaNumber::unit(mk())) < kTolAlgebraic);
    REQUIRE(mi.k.approx_zero());
}

TEST_CASE("mass term validation rejects broken pairs") {
    GammaNumber bad_n = basis_vector(mk(), 0) + basis_vector(mk(), 1);  // squares to 0
    REQUIRE_THROWS_AS(MassTerm::standard(1.0, bad_n, GammaNumber::zero(mk())), invariant_error);
    // e1 and e2 do not commute
    REQUIRE_THROWS_AS(MassTerm::standard(1.0, basis_vector(mk(), 1), basis_vector(mk(), 2)),
                      invariant_error);
    REQUIRE_THROWS_AS(MassTerm::standard(-1.0, GammaNumber::unit(mk()), GammaNumber::zero(mk())),
                      schema_error);
}

TEST_CASE("electroweak term is the left rotor form") {
    // m(psi N + e5 psi K) with N = cos(xi) e0, K = sin(xi) e0 equals
    // m exp(xi e5) psi e0.
    Rng rng(31);
    double xi = 1.234;
    auto mt = MassTerm::electroweak(1.7, xi);
    REQUIRE(max_abs_diff(mt.n, basis_vector(mk(), 0) * std::cos(xi)) < kTolAlgebraic);
    REQUIRE(max_abs_diff(mt.k, basis_vector(mk(), 0) * std::sin(xi)) < kTolAlgebraic);
    GammaNumber psi = random_gamma(mk(), rng);
    GammaNumber lhs = (psi * mt.n + pseudoscalar(mk()) * psi * mt.k) * mt.m;
    GammaNumber rhs = exp_gamma(pseudoscalar(mk()) * xi) * psi * basis_vector(mk(), 0) * mt.m;
    REQUIRE(max_abs_diff(lhs, rhs) < kTolQuadratic);
}

TEST_CASE("hestenes and multi-mass terms") {
    auto h = MassTerm::hestenes(1.0);
    REQUIRE(h.real_flavor);
    REQUIRE((h.n * h.n + GammaNumber::unit(h.ctx())).approx_zero());
    auto mm = MassTerm::multi_mass({0.5, 1.0, 1.5, 2.0});
    Mat4C want;
    want(0, 0) = 0.5;
    want(1, 1) = 1.0;
    want(2, 2) = 1.5;
    want(3, 3) = 2.0;
    REQUIRE(max_abs_diff(to_matrix(mm.n), want) < kTolAlgebraic);
}

TEST_CASE("example pairs satisfy the commuting unit-square constraint") {
    Rng rng(32);
    CMat v = random_invertible(rng);
    auto [nd, kd] = example_pair_diag({0.3, 1.1, 2.0, 4.4}, v);
    auto mt = MassTerm::standard(1.0, nd, kd);
    REQUIRE(commutator(mt.n, mt.k).approx_zero(kTolQuadratic));

    auto [nj, kj] = example_pair_jordan(0.7, v);
    GammaNumber defect = nj * nj + kj * kj - GammaNumber::unit(mk());
    REQUIRE(defect.inf_norm() < 1e-8);
    REQUIRE(commutator(nj, kj).approx_zero(1e-8));
    // Jordan block is visible with V = identity.
    auto [nj0, kj0] = example_pair_jordan(0.7, CMat::identity(4));
    Mat4C njm = to_matrix(nj0);
    REQUIRE(std::abs(njm(0, 1) - cplx(1.0)) < kTolAlgebraic);
    REQUIRE(std::abs(njm(0, 0) - cplx(std::cos(0.7))) < kTolAlgebraic);
    REQUIRE(std::abs(to_matrix(kj0)(0, 3) -
                     cplx(-std::cos(0.7) / (2.0 * std::pow(std::sin(0.7), 5)))) < 1e-9);
    REQUIRE_THROWS_AS(example_pair_jordan(0.0, v), schema_error);
}

TEST_CASE("spinor idempotents resolve the identity") {
    auto s = spinor_idempotents();
    Mat4C first = to_matrix(s[0]);
    Mat4C want;
    want(0, 0) = 1.0;
    REQUIRE(max_abs_diff(first, want) < kTolAlgebraic);
    GammaNumber sum = GammaNumber::zero(mk());
    for (const auto& sk : s) sum += sk;
    REQUIRE(max_abs_diff(sum, GammaNumber::unit(mk())) < kTolAlgebraic);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            GammaNumber prod = s[std::size_t(a)] * s[std::size_t(b)];
            GammaNumber want_g = a == b ? s[std::size_t(a)] : GammaNumber::zero(mk());
            REQUIRE(max_abs_diff(prod, want_g) < kTolAlgebraic);
        }
    // spinorial generators are 2i s^(k)
    auto spin = builtin_generators("spinorial4");
    for (int kk = 0; kk < 4; ++kk)
        REQUIRE(max_abs_diff(spin.gens[std::size_t(kk)], s[std::size_t(kk)] * cplx(0, 2)) <
                kTolAlgebraic);
}

TEST_CASE("constant field residual is the mass term") {
    Rng rng(33);
    auto mt = MassTerm::standard(1.4, GammaNumber::unit(mk()), GammaNumber::zero(mk()));
    GammaNumber g = random_gamma(mk(), rng);
    Jet2 c = Jet2::constant(g);
    GammaNumber r = dirac_residual(c, mt);
    REQUIRE(max_abs_diff(r, -(g * 1.4)) < kTolAlgebraic);
}

TEST_CASE("standard wave at rest is the pure phase") {
    double m = 1.3;
    FieldPtr psi = standard_wave(m, {0, 0, 0});
    Rng rng(34);
    Point x = sample_point(rng);
    Jet2 j = jet_eval(psi, x);
    Mat4C mat = to_matrix(j.value);
    cplx phase = std::exp(cplx(0, -m * x[0]));
    Mat4C want;
    for (int i = 0; i < 4; ++i) want(i, i) = phase;
    REQUIRE(max_abs_diff(mat, want) < kTolAlgebraic);
    auto mt = MassTerm::canonical(CanonicalForm::FormIV, m, 0.0, 3.141592653589793);
    REQUIRE(dirac_residual(j, mt).inf_norm() < kTolAlgebraic);
}

TEST_CASE("standard wave matches the textbook matrix") {
    double m = 1.1;
    std::array<double, 3> pk = {0.3, -0.4, 0.5};
    double en = std::sqrt(0.09 + 0.16 + 0.25 + m * m);
    FieldPtr psi = standard_wave(m, pk);
    Jet2 j = jet_eval(psi, {0, 0, 0, 0});
    double s = std::sqrt((en + m) / (2.0 * m)), d = en + m;
    Mat4C want;
    want(0, 0) = want(1, 1) = want(2, 2) = want(3, 3) = s;
    cplx a = -pk[2] / d, b = cplx(-pk[0], pk[1]) / d, c = cplx(-pk[0], -pk[1]) / d,
         e = pk[2] / d;
    want(0, 2) = s * a;
    want(0, 3) = s * b;
    want(1, 2) = s * c;
    want(1, 3) = s * e;
    want(2, 0) = s * a;
    want(2, 1) = s * b;
    want(3, 0) = s * c;
    want(3, 1) = s * e;
    REQUIRE(max_abs_diff(to_matrix(j.value), want) < kTolQuadratic);
}

TEST_CASE("standard wave is star-normalized") {
    Rng rng(35);
    FieldPtr psi = standard_wave(0.9, {0.6, -0.1, 0.8});
    for (int trial = 0; trial < 6; ++trial) {
        Point x = sample_point(rng);
        GammaNumber v = jet_eval(psi, x).value;
        REQUIRE(max_abs_diff(v * v.star(), GammaNumber::unit(mk())) < kTolAlgebraic);
    }
}

TEST_CASE("plane waves solve the equation across forms and phase classes") {
    Rng rng(36);
    double m = 1.3;
    auto classes = s_classes();
    for (auto form : kForms) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            MassTerm mt = random_canonical(form, m, rng);
            PlaneWaveSpec spec(mt);
            spec.p = on_shell_momentum(m, rng);
            GammaNumber w = random_commutant_element(mt, rng);
            spec.s = w * classes[c] * inverse_gamma(w);
            spec.y = random_commutant_combination(mt, rng);
            FieldPtr psi = plane_wave(spec);
            Point x = sample_point(rng);
            Jet2 j = jet_eval(psi, x);
            double scale = 1.0 + j.inf_norm();
            REQUIRE(dirac_residual(j, mt).inf_norm() < kTolAlgebraic * scale);
            REQUIRE(klein_gordon_residual(j, m).inf_norm() < kTolAlgebraic * scale);
        }
    }
}

TEST_CASE("plane wave validation") {
    auto mt = MassTerm::canonical(CanonicalForm::FormI, 1.0, 0.4);
    PlaneWaveSpec spec(mt);
    spec.p = {1.0, 0.5, 0.0, 0.0};  // p.p != 1
    spec.s = GammaNumber::unit(mk()) * cplx(0, 1);
    spec.y = GammaNumber::unit(mk());
    REQUIRE_THROWS_AS(plane_wave(spec), invariant_error);
    spec.p = {1.0, 0.0, 0.0, 0.0};
    spec.s = basis_vector(mk(), 0);  // squares to +e
    REQUIRE_THROWS_AS(plane_wave(spec), invariant_error);
    auto mt2 = MassTerm::canonical(CanonicalForm::FormII, 1.0, 0.4);
    PlaneWaveSpec spec2(mt2);
    spec2.p = {1.0, 0.0, 0.0, 0.0};
    spec2.s = basis_vector(mk(), 1) * basis_vector(mk(), 2) * basis_vector(mk(), 0) *
              basis_vector(mk(), 1);  // -e02: fails to commute with N
    spec2.y = GammaNumber::unit(mk());
    REQUIRE_THROWS_AS(plane_wave(spec2), invariant_error);
}

TEST_CASE("random admissible phase directions are commutant square roots") {
    Rng rng(37);
    for (auto form : kForms) {
        MassTerm mt = random_canonical(form, 1.0, rng);
        GammaNumber s = random_admissible_s(mt, rng);
        REQUIRE((s * s + GammaNumber::unit(mk())).approx_zero(1e-9));
        REQUIRE(commutator(s, mt.n).approx_zero(1e-9));
        REQUIRE(commutator(s, mt.k).approx_zero(1e-9));
    }
}

TEST_CASE("factorization annihilates against the second-order operator") {
    Rng rng(38);
    for (int trial = 0; trial < 5; ++trial) {
        FieldPtr f = random_poly_field(mk(), rng, 4);
        Point x = sample_point(rng);
        Jet2 j = jet_eval(f, x);
        double scale = 1.0 + j.inf_norm();
        REQUIRE(factorization_residual(j, 1.7, 1.0, 0.0).inf_norm() < kTolAlgebraic * scale);
        for (double theta : {0.3, 1.1, 2.5})
            REQUIRE(factorization_residual(j, 1.7, std::cos(theta), std::sin(theta)).inf_norm() <
                    kTolAlgebraic * scale);
        // complex pair on the constraint
        cplx z = 1.2, y = cplx(0, 1) * std::sqrt(0.44);
        REQUIRE(factorization_residual(j, 1.7, z, y).inf_norm() < kTolQuadratic * scale);
    }
    REQUIRE_THROWS_AS(
        factorization_residual(Jet2::constant(GammaNumber::unit(mk())), 1.0, 0.5, 0.5),
        invariant_error);
}

TEST_CASE("even and odd parts solve their own equations") {
    Rng rng(39);
    double m = 1.2, xi = 0.9;
    auto mt = MassTerm::electroweak(m, xi);  // N, K odd
    PlaneWaveSpec spec(mt);
    spec.p = on_shell_momentum(m, rng);
    auto classes = s_classes();
    spec.s = classes[2];  // i e0 commutes with e0-based N, K
    spec.y = random_commutant_combination(mt, rng);
    FieldPtr psi = plane_wave(spec);
    Point x = sample_point(rng);
    Jet2 j = jet_eval(psi, x);
    auto rep = decompose_check(j, mt);
    double scale = 1.0 + j.inf_norm();
    REQUIRE(rep.square_defect < kTolAlgebraic);
    REQUIRE(rep.even_residual < kTolAlgebraic * scale);
    REQUIRE(rep.odd_residual < kTolAlgebraic * scale);
    auto even_mt = MassTerm::canonical(CanonicalForm::FormI, 1.0, 0.2);
    REQUIRE_THROWS_AS(decompose_check(j, even_mt), invariant_error);
}

TEST_CASE("odd real mass squares follow the quadratic constraint") {
    // q_mu e^mu (alpha e + beta e5) squares to -e when
    // (alpha^2 + beta^2)(q.q) = -1.
    Rng rng(40);
    auto ctx = AlgebraContext::minkowski(Field::Real);
    for (int trial = 0; trial < 5; ++trial) {
        std::array<double, 4> q = {rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.6),
                                   rng.symmetric(), rng.symmetric()};
        double qq = minkowski_square(q);
        REQUIRE(qq < 0.0);
        double alpha = rng.symmetric(), beta = rng.symmetric();
        double norm = std::sqrt(-1.0 / (qq * (alpha * alpha + beta * beta)));
        alpha *= norm;
        beta *= norm;
        GammaNumber n0 = momentum_slash(ctx, q) *
                         (GammaNumber::unit(ctx) * alpha + pseudoscalar(ctx) * beta);
        REQUIRE((n0 * n0 + GammaNumber::unit(ctx)).approx_zero(kTolQuadratic));
    }
}

TEST_CASE("real-flavor waves solve the real equation") {
    Rng rng(41);
    double m = 1.05;
    std::array<double, 3> pk = {0.4, 0.2, -0.7};
    std::array<double, 3> q = {0.0, 0.6, 0.8};
    FieldPtr psi = real_wave(m, pk, q);
    auto mt = real_wave_term(m, q);
    for (int trial = 0; trial < 4; ++trial) {
        Point x = sample_point(rng);
        Jet2 j = jet_eval(psi, x);
        REQUIRE(dirac_residual(j, mt).inf_norm() < kTolAlgebraic * (1.0 + j.inf_norm()));
    }
    FieldPtr hp = hestenes_wave(m, pk);
    auto hmt = MassTerm::hestenes(m);
    for (int trial = 0; trial < 4; ++trial) {
        Point x = sample_point(rng);
        Jet2 j = jet_eval(hp, x);
        REQUIRE(dirac_residual(j, hmt).inf_norm() < kTolAlgebraic * (1.0 + j.inf_norm()));
        REQUIRE(j.value.odd().approx_zero(kTolAlgebraic));
    }
    REQUIRE_THROWS_AS(real_wave(1.0, pk, {1.0, 1.0, 0.0}), invariant_error);
}

TEST_CASE("currents of exact solutions are conserved") {
    Rng rng(42);
    double m = 1.0;
    struct Case {
        CanonicalForm form;
        const char* set;
    };
    const Case cases[] = {{CanonicalForm::FormI, "antihermitian16"},
                          {CanonicalForm::FormI, "gellmann15"},
                          {CanonicalForm::FormII, "spinorial4"},
                          {CanonicalForm::FormIII, "gellmann8"},
                          {CanonicalForm::FormIV, "spinorial4"}};
    for (const auto& c : cases) {
        MassTerm mt = random_canonical(c.form, m, rng);
        auto gs = builtin_generators(c.set);
        REQUIRE(is_admissible(gs, mt));
        PlaneWaveSpec spec(mt);
        spec.p = on_shell_momentum(m, rng);
        spec.s = random_admissible_s(mt, rng);
        spec.y = random_commutant_combination(mt, rng);
        FieldPtr psi = plane_wave(spec);
        for (int trial = 0; trial < 4; ++trial) {
            Point x = sample_point(rng);
            Jet2 j = jet_eval(psi, x);
            auto rep = currents(j, gs);
            double scale = std::pow(1.0 + j.inf_norm(), 2);
            for (double d : rep.divergence) REQUIRE(std::abs(d) < kTolQuadratic * scale);
        }
    }
}

TEST_CASE("zero field has zero currents") {
    Jet2 zero(mk());
    auto rep = currents(zero, builtin_generators("gellmann8"));
    for (const auto& jm : rep.j)
        for (double v : jm) REQUIRE(v == 0.0);
}

TEST_CASE("projection identity links currents to the algebra") {
    Rng rng(43);
    for (const char* name : {"antihermitian16", "gellmann8", "spinorial4", "L3_1"}) {
        auto gs = builtin_generators(name);
        FieldPtr f = random_poly_field(mk(), rng, 3);
        Point x = sample_point(rng);
        Jet2 j = jet_eval(f, x);
        auto rep = currents(j, gs);
        double scale = std::pow(1.0 + j.inf_norm(), 2);
        for (int mu = 0; mu < 4; ++mu)
            REQUIRE(current_projection_residual(j, gs, mu, rep) < kTolAdjoint * scale);
    }
}

TEST_CASE("non-real pairings are rejected") {
    Rng rng(44);
    GeneratorSet bad{"hermitian1", {basis_vector(mk(), 1) * cplx(0, 1)}, nullptr};
    FieldPtr f = random_poly_field(mk(), rng, 3);
    Jet2 j = jet_eval(f, sample_point(rng));
    REQUIRE_THROWS_AS(currents(j, bad), invariant_error);
}

TEST_CASE("bilinear identities hold on exact solutions") {
    Rng rng(45);
    double m = 1.15;
    for (auto form : kForms) {
        MassTerm mt = random_canonical(form, m, rng);
        PlaneWaveSpec spec(mt);
        spec.p = on_shell_momentum(m, rng);
        spec.s = random_admissible_s(mt, rng);
        spec.y = random_commutant_combination(mt, rng);
        FieldPtr psi = plane_wave(spec);
        Point x = sample_point(rng);
        Jet2 j = jet_eval(psi, x);
        auto [r1, r2] = bilinear_identity_residuals(j, mt);
        double scale = std::pow(1.0 + j.inf_norm(), 2);
        REQUIRE(r1 < kTolQuadratic * scale);
        REQUIRE(r2 < kTolQuadratic * scale);
    }
}

TEST_CASE("mass-side bilinear projects to zero on the gauge algebra") {
    Rng rng(46);
    struct Case {
        CanonicalForm form;
        const char* set;
    };
    const Case cases[] = {{CanonicalForm::FormII, "spinorial4"},
                          {CanonicalForm::FormIII, "gellmann8"}};
    for (const auto& c : cases) {
        MassTerm mt = random_canonical(c.form, 1.0, rng);
        auto gs = builtin_generators(c.set);
        for (int trial = 0; trial < 5; ++trial) {
            GammaNumber psi = random_gamma(mk(), rng);
            double scale = std::pow(1.0 + psi.inf_norm(), 2);
            REQUIRE(gauge_projection_residual(psi, mt, gs) < kTolQuadratic * scale);
        }
    }
}

TEST_CASE("chiral projectors split the identity") {
    GammaNumber l = chiral_left(), r = chiral_right();
    REQUIRE(max_abs_diff(l + r, GammaNumber::unit(mk())) < kTolAlgebraic);
    REQUIRE(max_abs_diff(l * l, l) < kTolAlgebraic);
    REQUIRE(max_abs_diff(r * r, r) < kTolAlgebraic);
    REQUIRE((l * r).approx_zero());
    REQUIRE((r * l).approx_zero());
    // r e^mu = e^mu l
    for (int mu = 0; mu < 4; ++mu)
        REQUIRE(max_abs_diff(r * basis_vector(mk(), mu), basis_vector(mk(), mu) * l) <
                kTolAlgebraic);
}

TEST_CASE("massless chiral currents are conserved and split as half sums") {
    Rng rng(47);
    auto mt = MassTerm::canonical(CanonicalForm::FormI, 0.0, 0.3);
    PlaneWaveSpec spec(mt);
    double p1 = 0.8, p2 = -0.3, p3 = 0.5;
    double en = std::sqrt(p1 * p1 + p2 * p2 + p3 * p3);
    spec.p = {en, -p1, -p2, -p3};
    spec.s = random_admissible_s(mt, rng);
    spec.y = random_commutant_combination(mt, rng);
    FieldPtr psi = plane_wave(spec);
    auto gs = builtin_generators("gellmann8");
    for (int trial = 0; trial < 3; ++trial) {
        Point x = sample_point(rng);
        Jet2 j = jet_eval(psi, x);
        auto [jl, jr] = chiral_split(j);
        double scale = std::pow(1.0 + j.inf_norm(), 2);
        auto rep_l = currents(jl, gs);
        auto rep_r = currents(jr, gs);
        for (double d : rep_l.divergence) REQUIRE(std::abs(d) < kTolQuadratic * scale);
        for (double d : rep_r.divergence) REQUIRE(std::abs(d) < kTolQuadratic * scale);
        auto rep = currents(j, gs);
        auto rep5 = currents(j, gs, true);
        for (std::size_t k = 0; k < gs.gens.size(); ++k)
            for (int mu = 0; mu < 4; ++mu) {
                double plus = 0.5 * (rep.j[k][std::size_t(mu)] + rep5.j[k][std::size_t(mu)]);
                double minus = 0.5 * (rep.j[k][std::size_t(mu)] - rep5.j[k][std::size_t(mu)]);
                REQUIRE(std::abs(rep_l.j[k][std::size_t(mu)] - plus) < kTolQuadratic * scale);
                REQUIRE(std::abs(rep_r.j[k][std::size_t(mu)] - minus) < kTolQuadratic * scale);
            }
    }
}

TEST_CASE("canonical gauge sets have the stated dimensions and close") {
    Rng rng(48);
    const int dims[] = {16, 5, 9, 8};
    for (int fi = 0; fi < 4; ++fi) {
        auto gs = canonical_gauge_set(kForms[std::size_t(fi)]);
        REQUIRE(gs.size() == dims[fi]);
        MassTerm mt = random_canonical(kForms[std::size_t(fi)], 1.0, rng);
        REQUIRE(is_admissible(gs, mt));
        for (const auto& t : gs.gens)
            REQUIRE(max_abs_diff(t.dagger(), -t) < kTolAlgebraic);
        auto sc = structure_constants(gs);
        REQUIRE(sc.closure_residual < kTolQuadratic);
        GroupElement u = random_group_element(gs, rng);
        REQUIRE(max_abs_diff(u.u * u.u.dagger(), GammaNumber::unit(mk())) < kTolQuadratic);
        REQUIRE(commutator(u.u, mt.n).approx_zero(kTolQuadratic));
        REQUIRE(commutator(u.u, mt.k).approx_zero(kTolQuadratic));
    }
}

TEST_CASE("antihermitian commutant elements exponentiate to unitaries") {
    Rng rng(49);
    for (auto form : kForms) {
        MassTerm mt = random_canonical(form, 1.0, rng);
        GammaNumber w = random_commutant_element(mt, rng);
        GammaNumber t = (w - w.dagger()) * 0.5;
        REQUIRE(commutator(t, mt.n).approx_zero(kTolQuadratic));
        GammaNumber u = exp_gamma(t);
        REQUIRE(max_abs_diff(u * u.dagger(), GammaNumber::unit(mk())) < kTolQuadratic);
        REQUIRE(commutator(u, mt.n).approx_zero(kTolQuadratic));
        REQUIRE(commutator(u, mt.k).approx_zero(kTolQuadratic));
    }
}

TEST_CASE("global gauge covariance of the residual") {
    Rng rng(50);
    auto mt = MassTerm::canonical(CanonicalForm::FormIII, 1.0, 0.7, 1.9);
    FieldPtr f = random_poly_field(mk(), rng, 3);
    GammaNumber u = random_commutant_element(mt, rng);
    Point x = sample_point(rng);
    Jet2 j = jet_eval(f, x);
    GammaNumber lhs = dirac_residual(j * u, mt);
    GammaNumber rhs = dirac_residual(j, mt) * u;
    REQUIRE(max_abs_diff(lhs, rhs) < kTolQuadratic * (1.0 + j.inf_norm()) * (1.0 + u.inf_norm()));
}
