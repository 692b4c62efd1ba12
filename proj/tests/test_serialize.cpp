#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "gnum/serialize.hpp"

using namespace gnum;

namespace {

AlgebraContext mk() { return AlgebraContext::minkowski(); }

Point sample_point(Rng& rng) {
    return {rng.symmetric(), rng.symmetric(), rng.symmetric(), rng.symmetric()};
}

double gdiff(const GammaNumber& a, const GammaNumber& b) { return (a - b).inf_norm(); }

// Gamma-valued polynomial with coefficients in the real span of the set.
FieldPtr lie_poly(const GeneratorSet& gs, Rng& rng, int terms = 3) {
    std::vector<PolyTerm> ts;
    for (int i = 0; i < terms; ++i) {
        GammaNumber c = GammaNumber::zero(gs.ctx());
        for (const auto& t : gs.gens) c += t * rng.symmetric();
        PolyTerm term;
        term.coeff = c;
        int total = int(rng.next_u64() % 3);
        for (int d = 0; d < total; ++d) ++term.powers[std::size_t(rng.next_u64() % 4)];
        ts.push_back(std::move(term));
    }
    return poly_field(gs.ctx(), std::move(ts));
}

}  // namespace

TEST_CASE("context round trip") {
    for (const AlgebraContext& ctx :
         {AlgebraContext::minkowski(), AlgebraContext::minkowski(Field::Real),
          AlgebraContext::euclidean(5), AlgebraContext::make(3, {-1, 1, -1}, Field::Complex)}) {
        AlgebraContext back = context_from_json(context_to_json(ctx));
        REQUIRE(back == ctx);
    }
}

TEST_CASE("context schema violations") {
    REQUIRE_THROWS_AS(context_from_json(json{{"n", 4}, {"signature", {1, -1, -1, -1}}}),
                      schema_error);
    REQUIRE_THROWS_AS(context_from_json(json{{"n", 7},
                                             {"signature", {1, 1, 1, 1, 1, 1, 1}},
                                             {"field", "real"}}),
                      schema_error);
    REQUIRE_THROWS_AS(context_from_json(json{{"n", 2}, {"signature", {1, 2}},
                                             {"field", "real"}}),
                      schema_error);
    REQUIRE_THROWS_AS(context_from_json(json{{"n", 2}, {"signature", {1, -1}},
                                             {"field", "quaternionic"}}),
                      schema_error);
}

TEST_CASE("gamma numbers round trip and omit zero blades") {
    Rng rng(901);
    for (const AlgebraContext& ctx :
         {mk(), AlgebraContext::minkowski(Field::Real), AlgebraContext::euclidean(6)}) {
        for (int trial = 0; trial < 5; ++trial) {
            GammaNumber g = random_gamma(ctx, rng);
            g.set_coeff(BladeMask(2), cplx(0.0));
            json j = gamma_to_json(g);
            for (const auto& term : j) REQUIRE(term["mask"].get<int>() != 2);
            REQUIRE(gdiff(gamma_from_json(j, ctx), g) == 0.0);
        }
    }
    REQUIRE(gamma_to_json(GammaNumber::zero(mk())).empty());
}

TEST_CASE("gamma duplicate masks accumulate") {
    json j = json::array({json{{"mask", 3}, {"re", 1.5}}, json{{"mask", 3}, {"im", -1.0}}});
    GammaNumber g = gamma_from_json(j, mk());
    REQUIRE(g.coeff(3) == cplx(1.5, -1.0));
}

TEST_CASE("gamma schema violations") {
    REQUIRE_THROWS_AS(gamma_from_json(json::array({json{{"mask", 16}, {"re", 1.0}}}), mk()),
                      schema_error);
    REQUIRE_THROWS_AS(gamma_from_json(json::array({json{{"mask", -1}}}), mk()),
                      schema_error);
    REQUIRE_THROWS_AS(gamma_from_json(json::array({json{{"re", 1.0}}}), mk()),
                      schema_error);
    REQUIRE_THROWS_AS(gamma_from_json(json::array({json{{"mask", 2.5}}}), mk()),
                      schema_error);
    REQUIRE_THROWS_AS(
        gamma_from_json(json::array({json{{"mask", 1}, {"im", 0.25}}}),
                        AlgebraContext::minkowski(Field::Real)),
        schema_error);
}

TEST_CASE("matrices round trip") {
    Rng rng(902);
    Mat4C m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = cplx(rng.symmetric(), rng.symmetric());
    Mat4C back = matrix_from_json(matrix_to_json(m));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) REQUIRE(back(r, c) == m(r, c));
    REQUIRE_THROWS_AS(matrix_from_json(json::array()), schema_error);
    json bad = matrix_to_json(m);
    bad[5] = json::array({1.0});
    REQUIRE_THROWS_AS(matrix_from_json(bad), schema_error);
}

TEST_CASE("scalar polynomials round trip") {
    ScalarPoly p = {{1.25, {0, 1, 0, 2}}, {-0.5, {3, 0, 0, 0}}};
    ScalarPoly back = scalar_poly_from_json(scalar_poly_to_json(p));
    REQUIRE(back.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        REQUIRE(back[i].coeff == p[i].coeff);
        REQUIRE(back[i].powers == p[i].powers);
    }
    REQUIRE_THROWS_AS(
        scalar_poly_from_json(json::array({json{{"coeff", 1.0}, {"powers", {1, -1, 0, 0}}}})),
        schema_error);
}

TEST_CASE("field expressions round trip through evaluation") {
    Rng rng(903);
    AlgebraContext ctx = mk();
    GammaNumber s = basis_vector(ctx, 1) * basis_vector(ctx, 2);  // squares to -e
    FieldPtr f = sum_field(
        {product_field({constant_field(random_gamma(ctx, rng)),
                        planewave_field(s, {0.7, -0.2, 0.1, 0.4})}),
         random_poly_field(ctx, rng, 3),
         groupfactor_field({{0.4, {1, 1, 0, 0}}}, basis_vector(ctx, 1) * basis_vector(ctx, 3)),
         coordinate_field(ctx, 2)});
    FieldPtr back = field_from_json(field_to_json(f), ctx);
    for (int trial = 0; trial < 4; ++trial) {
        Point x = sample_point(rng);
        Jet2 a = jet_eval(f, x), b = jet_eval(back, x);
        REQUIRE(gdiff(a.value, b.value) == 0.0);
        for (int mu = 0; mu < 4; ++mu)
            REQUIRE(gdiff(a.grad[std::size_t(mu)], b.grad[std::size_t(mu)]) == 0.0);
        for (int h = 0; h < 10; ++h)
            REQUIRE(gdiff(a.hess[std::size_t(h)], b.hess[std::size_t(h)]) == 0.0);
    }
}

TEST_CASE("field schema and invariant violations") {
    AlgebraContext ctx = mk();
    REQUIRE_THROWS_AS(field_from_json(json{{"kind", "spiral"}}, ctx), schema_error);
    REQUIRE_THROWS_AS(field_from_json(json{{"kind", "coordinate"}, {"mu", 5}}, ctx),
                      schema_error);
    REQUIRE_THROWS_AS(
        field_from_json(json{{"kind", "sum"}, {"children", json::array()}}, ctx),
        schema_error);
    // e1 squares to -e only after the metric; e0 squares to +e, so the wave
    // direction constraint must reject it.
    json wave{{"kind", "planewave"},
              {"direction", json::array({json{{"mask", 1}, {"re", 1.0}}})},
              {"coefficients", {1.0, 0.0, 0.0, 0.0}}};
    REQUIRE_THROWS_AS(field_from_json(wave, ctx), invariant_error);
}

TEST_CASE("mass terms round trip for every construction tag") {
    MassTerm canonical = MassTerm::canonical(CanonicalForm::FormII, 1.2, 0.7, 0.3);
    MassTerm standard =
        MassTerm::standard(1.2, canonical.n, canonical.k, canonical.hermitian_parts);
    AlgebraContext mr = AlgebraContext::minkowski(Field::Real);
    MassTerm real = real_wave_term(0.8, {0.0, 1.0, 0.0}, mr);
    MassTerm electroweak = MassTerm::electroweak(0.9, 0.55);
    MassTerm hestenes = MassTerm::hestenes(1.4);
    MassTerm multi = MassTerm::multi_mass({0.5, 1.0, 1.5, 2.0});
    for (const MassTerm& mt : {canonical, standard, real, electroweak, hestenes, multi}) {
        MassTerm back = massterm_from_json(massterm_to_json(mt));
        REQUIRE(back.kind == mt.kind);
        REQUIRE(back.m == mt.m);
        REQUIRE(back.real_flavor == mt.real_flavor);
        REQUIRE(back.hermitian_parts == mt.hermitian_parts);
        REQUIRE(gdiff(back.n, mt.n) < 1e-15);
        REQUIRE(gdiff(back.k, mt.k) < 1e-15);
        REQUIRE(back.params == mt.params);
    }
}

TEST_CASE("mass term schema and invariant violations") {
    REQUIRE_THROWS_AS(massterm_from_json(json{{"kind", "exotic"}, {"m", 1.0}}),
                      schema_error);
    REQUIRE_THROWS_AS(massterm_from_json(json{{"kind", "canonical"},
                                              {"form", "V"},
                                              {"m", 1.0},
                                              {"xi", 0.0}}),
                      schema_error);
    REQUIRE_THROWS_AS(
        massterm_from_json(json{{"kind", "hestenes"}, {"m", -1.0}}), schema_error);
    // n = e0 + e1 squares to zero, not e.
    json bad{{"kind", "standard"},
             {"m", 1.0},
             {"n", json::array({json{{"mask", 1}, {"re", 1.0}},
                                json{{"mask", 2}, {"re", 1.0}}})},
             {"k", json::array()}};
    REQUIRE_THROWS_AS(massterm_from_json(bad), invariant_error);
}

TEST_CASE("standard wave run parses and solves its equation") {
    json j{{"kind", "standard"}, {"m", 1.0}, {"p", {std::sqrt(2.0), 1.0, 0.0, 0.0}}};
    WaveRun run = waverun_from_json(j);
    REQUIRE(run.gs.name == "spinorial4");
    REQUIRE(run.star_normalized);
    Rng rng(904);
    for (int trial = 0; trial < 4; ++trial) {
        Point x = sample_point(rng);
        Jet2 psi = jet_eval(run.psi, x);
        double scale = 1.0 + psi.inf_norm();
        REQUIRE(dirac_residual(psi, run.mt).inf_norm() < kTolAlgebraic * scale);
        GammaNumber kg = box(psi) + psi.value * (run.mt.m * run.mt.m);
        REQUIRE(kg.inf_norm() < kTolAlgebraic * scale);
        REQUIRE(gdiff(psi.value * psi.value.star(), GammaNumber::unit(mk())) <
                kTolAlgebraic * scale);
    }
}

TEST_CASE("off-shell momentum is an invariant violation") {
    json j{{"kind", "standard"}, {"m", 1.0}, {"p", {2.0, 1.0, 0.0, 0.0}}};
    REQUIRE_THROWS_AS(waverun_from_json(j), invariant_error);
}

TEST_CASE("general wave run with an explicit mass record") {
    json mt{{"kind", "canonical"}, {"form", "II"}, {"m", 1.1}, {"xi", 0.4}, {"eta", 0.2}};
    double m = 1.1;
    std::array<double, 3> pk = {0.3, -0.2, 0.5};
    double en = std::sqrt(pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2] + m * m);
    Rng srng(930);
    GammaNumber s = random_admissible_s(massterm_from_json(mt), srng);
    json j{{"kind", "general"},
           {"massterm", mt},
           {"p", {en, pk[0], pk[1], pk[2]}},
           {"s", gamma_to_json(s)},
           {"y", json::array({json{{"mask", 0}, {"re", 1.0}}})},
           {"generators", "L3_1"}};
    WaveRun run = waverun_from_json(j);
    REQUIRE(run.gs.name == "L3_1");
    REQUIRE(run.p_cov[1] == -pk[0]);
    Rng rng(905);
    for (int trial = 0; trial < 3; ++trial) {
        Jet2 psi = jet_eval(run.psi, sample_point(rng));
        double scale = 1.0 + psi.inf_norm();
        REQUIRE(dirac_residual(psi, run.mt).inf_norm() < kTolAlgebraic * scale);
    }
}

TEST_CASE("real and in-plane wave runs parse") {
    json jr{{"kind", "real"}, {"m", 0.7}, {"p", {0.2, 0.0, -0.4}}, {"q", {0.0, 0.0, 1.0}}};
    WaveRun rr = waverun_from_json(jr);
    REQUIRE(rr.e5_pairing);
    json jh{{"kind", "hestenes"}, {"m", 0.9}, {"p", {0.1, 0.3, 0.0}}};
    WaveRun rh = waverun_from_json(jh);
    Rng rng(906);
    for (const WaveRun& run : {rr, rh}) {
        for (int trial = 0; trial < 3; ++trial) {
            Jet2 psi = jet_eval(run.psi, sample_point(rng));
            double scale = 1.0 + psi.inf_norm();
            REQUIRE(dirac_residual(psi, run.mt).inf_norm() < kTolAlgebraic * scale);
            GammaNumber kg = box(psi) + psi.value * (run.mt.m * run.mt.m);
            REQUIRE(kg.inf_norm() < kTolAlgebraic * scale);
        }
    }
    REQUIRE_THROWS_AS(waverun_from_json(json{{"kind", "helical"}, {"m", 1.0}}),
                      schema_error);
}

TEST_CASE("coupled system config round trips through json") {
    Rng rng(907);
    GeneratorSet gs = builtin_generators("gellmann8");
    MassTerm mt = MassTerm::canonical(CanonicalForm::FormIII, 1.05, 0.3, 0.8);
    LieValuedPotential pot{{lie_poly(gs, rng), lie_poly(gs, rng), lie_poly(gs, rng),
                            lie_poly(gs, rng)},
                           gs};
    DymConfig cfg(random_poly_field(mk(), rng, 3), pot, std::nullopt, mt, -1.0);
    json j = dymconfig_to_json(cfg);
    REQUIRE(j["f"] == "derived");
    DymRun run = dymrun_from_json(j);
    for (int trial = 0; trial < 2; ++trial) {
        Point x = sample_point(rng);
        DymResidual a = dym_residual(cfg, x);
        DymResidual b = dym_residual(run.cfg, x);
        REQUIRE(gdiff(a.dirac, b.dirac) == 0.0);
        REQUIRE((a.eq1 - b.eq1).inf_norm() == 0.0);
        REQUIRE((a.eq2 - b.eq2).inf_norm() == 0.0);
    }
    // The default transformation is usable out of the box.
    DymConfig moved = gauge_transform(run.cfg, run.gauge);
    REQUIRE(moved.epsilon == cfg.epsilon);
}

TEST_CASE("coupled system config with explicit strength and gauge factors") {
    Rng rng(908);
    GeneratorSet gs = builtin_generators("gellmann8");
    MassTerm mt = MassTerm::canonical(CanonicalForm::FormIII, 0.9, 0.1, 0.0);
    LieValuedPotential pot{{lie_poly(gs, rng), lie_poly(gs, rng), lie_poly(gs, rng),
                            lie_poly(gs, rng)},
                           gs};
    FieldStrength fs;
    for (std::size_t p = 0; p < 6; ++p) fs.f[p] = lie_poly(gs, rng, 2);
    DymConfig cfg(random_poly_field(mk(), rng, 2), pot, fs, mt, 1.0);
    json j = dymconfig_to_json(cfg);
    j["gauge"] = json::array(
        {json{{"generator", gamma_to_json(gs.gens[2])},
              {"lambda", scalar_poly_to_json({{0.25, {0, 0, 1, 0}}})}}});
    DymRun run = dymrun_from_json(j);
    Point x = sample_point(rng);
    DymResidual a = dym_residual(cfg, x);
    DymResidual b = dym_residual(run.cfg, x);
    REQUIRE(gdiff(a.dirac, b.dirac) == 0.0);
    REQUIRE((a.eq2 - b.eq2).inf_norm() == 0.0);
    DymConfig moved = gauge_transform(run.cfg, run.gauge);
    REQUIRE(moved.strength.has_value());
}

TEST_CASE("coupled system config rejections") {
    Rng rng(909);
    GeneratorSet gs = builtin_generators("gellmann8");
    MassTerm mt = MassTerm::canonical(CanonicalForm::FormIII, 0.9, 0.1, 0.0);
    LieValuedPotential pot{{lie_poly(gs, rng), lie_poly(gs, rng), lie_poly(gs, rng),
                            lie_poly(gs, rng)},
                           gs};
    DymConfig cfg(random_poly_field(mk(), rng, 2), pot, std::nullopt, mt, 1.0);
    json good = dymconfig_to_json(cfg);

    json bad_eps = good;
    bad_eps["epsilon"] = 0.5;
    REQUIRE_THROWS_AS(dymrun_from_json(bad_eps), schema_error);

    json bad_set = good;
    bad_set["generators"] = "su99";
    REQUIRE_THROWS_AS(dymrun_from_json(bad_set), schema_error);

    json bad_ctx = good;
    bad_ctx["generators"] = "real_su2";
    REQUIRE_THROWS_AS(dymrun_from_json(bad_ctx), schema_error);

    json bad_f = good;
    bad_f["f"] = "implicit";
    REQUIRE_THROWS_AS(dymrun_from_json(bad_f), schema_error);

    // N = e01 squares to +e but does not commute with the diagonal
    // spinorial generators, so the massive system must reject the set.
    json bad_adm = good;
    bad_adm["generators"] = "spinorial4";
    bad_adm["massterm"] = json{{"kind", "standard"},
                               {"m", 0.9},
                               {"n", json::array({json{{"mask", 3}, {"re", 1.0}}})},
                               {"k", json::array()}};
    REQUIRE_THROWS_AS(dymrun_from_json(bad_adm), invariant_error);

    json bad_gauge = good;
    bad_gauge["gauge"] = json::array(
        {json{{"generator", gamma_to_json(basis_vector(mk(), 1))},
              {"lambda", json::array()}}});
    REQUIRE_THROWS_AS(dymrun_from_json(bad_gauge), invariant_error);
}

TEST_CASE("json text parsing reports schema errors") {
    REQUIRE_THROWS_AS(parse_json_text("{ not json"), schema_error);
    REQUIRE(parse_json_text("{\"a\": 1}")["a"] == 1);
}

TEST_CASE("report payload carries the check records in order") {
    SuiteReport rep;
    rep.command = "verify";
    rep.suite = "clifford";
    rep.seed = 42;
    rep.samples = 10;
    rep.tolerance_scale = 1.0;
    rep.wall_ms = 123.0;
    rep.checks.push_back({"clifford.assoc", "(ab)c = a(bc)", 10, 1e-16, 1e-12, true});
    rep.checks.push_back({"clifford.metric", "e_mu e_nu + e_nu e_mu = 2 g_mu_nu e", 10,
                          0.0, 1e-12, true});
    rep.pass = true;
    json j = report_to_json(rep);
    REQUIRE(j["schema"] == "gnum-report-v1");
    REQUIRE(j["checks"].size() == 2);
    REQUIRE(j["checks"][0]["id"] == "clifford.assoc");
    REQUIRE(j["checks"][1]["law"].get<std::string>().find("2 g") != std::string::npos);
    // Wall time varies between runs, so it stays out of the payload.
    REQUIRE(!j.contains("wall_ms"));
}
