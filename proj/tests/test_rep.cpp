#include <catch2/catch_amalgamated.hpp>

#include <gnum/rep.hpp>

using namespace gnum;

namespace {

const AlgebraContext& mink() {
    static AlgebraContext c = AlgebraContext::minkowski();
    return c;
}

GammaNumber blade_m(BladeMask m, cplx z = 1.0) { return GammaNumber::blade(mink(), m, z); }

}  // namespace

TEST_CASE("gamma matrices realize the metric") {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Mat4C gi = to_matrix(basis_vector(mink(), i));
            Mat4C gj = to_matrix(basis_vector(mink(), j));
            Mat4C anti = gi * gj + gj * gi;
            Mat4C expect = Mat4C::identity() * cplx(i == j ? 2.0 * mink().signature(i) : 0.0);
            REQUIRE(max_abs_diff(anti, expect) < kTolAlgebraic);
        }
    }
    // Time-like generator is hermitian, space-like ones anti-hermitian.
    Mat4C g0 = to_matrix(blade_m(0b0001));
    REQUIRE(max_abs_diff(g0, g0.adjoint()) < kTolAlgebraic);
    for (int k = 1; k < 4; ++k) {
        Mat4C gk = to_matrix(basis_vector(mink(), k));
        REQUIRE(max_abs_diff(gk, gk.adjoint() * cplx(-1.0)) < kTolAlgebraic);
    }
}

TEST_CASE("frozen matrix values") {
    // i e12 represents diag(1,-1,1,-1).
    Mat4C m = to_matrix(blade_m(0b0110, cplx(0, 1)));
    Mat4C expect;
    expect(0, 0) = 1; expect(1, 1) = -1; expect(2, 2) = 1; expect(3, 3) = -1;
    REQUIRE(max_abs_diff(m, expect) < kTolAlgebraic);

    // Pseudoscalar: i on the anti-diagonal blocks.
    Mat4C p = to_matrix(pseudoscalar(mink()));
    Mat4C pex;
    pex(0, 2) = cplx(0, 1); pex(1, 3) = cplx(0, 1);
    pex(2, 0) = cplx(0, 1); pex(3, 1) = cplx(0, 1);
    REQUIRE(max_abs_diff(p, pex) < kTolAlgebraic);
}

TEST_CASE("to_matrix is an algebra isomorphism") {
    Rng rng(kDefaultSeed + 10);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_gamma(mink(), rng);
        auto b = random_gamma(mink(), rng);
        REQUIRE(max_abs_diff(to_matrix(a * b), to_matrix(a) * to_matrix(b)) < kTolQuadratic);
        REQUIRE(max_abs_diff(to_matrix(a + b), to_matrix(a) + to_matrix(b)) < kTolAlgebraic);
        REQUIRE(approx_equal(from_matrix(to_matrix(a)), a, kTolAlgebraic));
    }
    // Arbitrary matrices are hit: blade matrices span all of 4x4.
    for (int trial = 0; trial < 20; ++trial) {
        Mat4C m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = rng.complex_symmetric();
        REQUIRE(max_abs_diff(to_matrix(from_matrix(m)), m) < kTolAlgebraic);
    }
    REQUIRE_THROWS_AS(to_matrix(GammaNumber::unit(AlgebraContext::euclidean(4))), error);
}

TEST_CASE("blade matrices are unitary and trace-orthogonal") {
    for (BladeMask a = 0; a < 16; ++a) {
        Mat4C ba = to_matrix(blade_m(a));
        REQUIRE(max_abs_diff(ba * ba.adjoint(), Mat4C::identity()) < kTolAlgebraic);
        for (BladeMask b = 0; b < 16; ++b) {
            cplx ip = (ba.adjoint() * to_matrix(blade_m(b))).trace();
            REQUIRE(std::abs(ip - (a == b ? cplx(4.0) : cplx(0.0))) < kTolAlgebraic);
        }
    }
}

TEST_CASE("dagger agrees with the matrix adjoint") {
    Rng rng(kDefaultSeed + 11);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_gamma(mink(), rng);
        REQUIRE(max_abs_diff(to_matrix(g.dagger()), to_matrix(g).adjoint()) < kTolAlgebraic);
    }
}

TEST_CASE("trace and determinant behave like their matrix counterparts") {
    Rng rng(kDefaultSeed + 12);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = random_gamma(mink(), rng);
        REQUIRE(std::abs(trace_gamma(g) - to_matrix(g).trace()) < kTolAlgebraic);
    }
    REQUIRE(std::abs(det_gamma(GammaNumber::unit(mink())) - cplx(1.0)) < kTolAlgebraic);
    REQUIRE(std::abs(det_gamma(blade_m(0b0001)) - cplx(1.0)) < kTolAlgebraic);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_gamma(mink(), rng);
        auto b = random_gamma(mink(), rng);
        cplx lhs = det_gamma(a * b);
        cplx rhs = det_gamma(a) * det_gamma(b);
        REQUIRE(std::abs(lhs - rhs) < kTolRelative * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("exponential closed forms") {
    auto e = GammaNumber::unit(mink());
    auto e0 = blade_m(0b0001);
    auto e1 = blade_m(0b0010);
    auto e12 = blade_m(0b0110);
    auto e01 = blade_m(0b0011);

    // Nilpotent: (e0+e1)^2 = 0, so exp is affine.
    auto nil = e0 + e1;
    REQUIRE((nil * nil).approx_zero());
    REQUIRE(approx_equal(exp_gamma(nil), e + nil, kTolQuadratic));

    double th = 0.7;
    REQUIRE(approx_equal(exp_gamma(e12 * th),
                         e * std::cos(th) + e12 * std::sin(th), kTolQuadratic));
    REQUIRE(approx_equal(exp_gamma(e01 * th),
                         e * std::cosh(th) + e01 * std::sinh(th), kTolQuadratic));
    REQUIRE(approx_equal(exp_gamma(GammaNumber::zero(mink())), e));

    // Same closed form away from the matrix-representable context.
    AlgebraContext e5c = AlgebraContext::euclidean(5);
    auto f = GammaNumber::unit(e5c);
    auto f12 = GammaNumber::blade(e5c, 0b00011);
    REQUIRE(approx_equal(exp_gamma(f12 * th),
                         f * std::cos(th) + f12 * std::sin(th), kTolQuadratic));
}

TEST_CASE("exponential laws on random input") {
    Rng rng(kDefaultSeed + 13);
    auto e = GammaNumber::unit(mink());
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_gamma(mink(), rng);
        auto ex = exp_gamma(g);
        REQUIRE(max_abs_diff(ex * exp_gamma(-g), e) < kTolQuadratic * 10);
        double s = rng.symmetric(), t = rng.symmetric();
        REQUIRE(max_abs_diff(exp_gamma(g * (s + t)), exp_gamma(g * s) * exp_gamma(g * t))
                < kTolQuadratic * 10);
        cplx lhs = det_gamma(ex);
        cplx rhs = std::exp(trace_gamma(g));
        REQUIRE(std::abs(lhs - rhs) < kTolRelative * (1.0 + std::abs(rhs)));
        // Conjugation commutes with exp.
        auto u = exp_gamma(random_gamma(mink(), rng) * 0.3);
        auto ui = inverse_gamma(u);
        REQUIRE(max_abs_diff(exp_gamma(u * g * ui), u * ex * ui) < kTolQuadratic * 100);
    }
}

TEST_CASE("inverse through the representation") {
    Rng rng(kDefaultSeed + 14);
    auto e = GammaNumber::unit(mink());
    for (int trial = 0; trial < 50; ++trial) {
        auto u = exp_gamma(random_gamma(mink(), rng));  // exp is always invertible
        auto ui = inverse_gamma(u);
        REQUIRE(max_abs_diff(u * ui, e) < kTolQuadratic * 10);
        REQUIRE(max_abs_diff(ui * u, e) < kTolQuadratic * 10);
    }
    // (e+e0)/2 is idempotent and singular.
    REQUIRE_THROWS_AS(inverse_gamma(e + blade_m(0b0001)), invariant_error);
    REQUIRE_THROWS_AS(inverse_gamma(GammaNumber::zero(mink())), invariant_error);
}

TEST_CASE("eigen-numbers match trace, determinant, and frozen spectra") {
    Rng rng(kDefaultSeed + 15);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_gamma(mink(), rng);
        auto ev = eigen_numbers(g);
        cplx sum = 0.0, prod = 1.0;
        for (auto z : ev) { sum += z; prod *= z; }
        REQUIRE(std::abs(sum - trace_gamma(g)) < 1e-8 * (1.0 + std::abs(sum)));
        REQUIRE(std::abs(prod - det_gamma(g)) < 1e-7 * (1.0 + std::abs(prod)));
    }
    // i e12 has spectrum {1,-1,1,-1}.
    auto ev = eigen_numbers(blade_m(0b0110, cplx(0, 1)));
    int plus = 0, minus = 0;
    for (auto z : ev) {
        if (std::abs(z - cplx(1.0)) < 1e-8) ++plus;
        if (std::abs(z + cplx(1.0)) < 1e-8) ++minus;
    }
    REQUIRE(plus == 2);
    REQUIRE(minus == 2);
}
