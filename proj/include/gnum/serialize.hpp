#pragma once

// JSON input and output: algebra contexts, gamma numbers, matrices, field
// expressions, mass terms, plane-wave runs, coupled-system runs, and the
// machine-readable check report emitted by the command-line harness.
//
// Deserializers validate shape first (wrong JSON types, missing keys, out of
// range masks -> schema_error) and then route every object through the same
// validating constructors the library uses internally, so mathematical
// violations surface as invariant_error exactly as they would in C++.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gnum/gauge.hpp"

namespace gnum {

using json = nlohmann::json;

// Parses text, converting nlohmann's diagnostics (byte offset and context)
// into the schema_error family used for exit-code mapping.
inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw schema_error(std::string("json parse: ") + e.what());
    }
}

namespace detail {

inline const json& require_field(const json& j, const char* key, const char* where) {
    if (!j.is_object()) throw schema_error(std::string(where) + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw schema_error(std::string(where) + ": missing field '" + key + "'");
    return *it;
}

inline double as_number(const json& j, const char* where) {
    if (!j.is_number()) throw schema_error(std::string(where) + ": expected a number");
    return j.get<double>();
}

inline int as_int(const json& j, const char* where) {
    if (!j.is_number_integer())
        throw schema_error(std::string(where) + ": expected an integer");
    return j.get<int>();
}

inline bool as_bool(const json& j, const char* where) {
    if (!j.is_boolean()) throw schema_error(std::string(where) + ": expected a boolean");
    return j.get<bool>();
}

inline std::string as_string(const json& j, const char* where) {
    if (!j.is_string()) throw schema_error(std::string(where) + ": expected a string");
    return j.get<std::string>();
}

inline const json& as_array(const json& j, const char* where) {
    if (!j.is_array()) throw schema_error(std::string(where) + ": expected an array");
    return j;
}

template <std::size_t N>
std::array<double, N> as_number_array(const json& j, const char* where) {
    as_array(j, where);
    if (j.size() != N)
        throw schema_error(std::string(where) + ": expected " + std::to_string(N) +
                           " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = as_number(j[i], where);
    return out;
}

inline std::array<int, 4> as_powers(const json& j, const char* where) {
    as_array(j, where);
    if (j.size() != 4)
        throw schema_error(std::string(where) + ": expected 4 integer exponents");
    std::array<int, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        int p = as_int(j[i], where);
        if (p < 0) throw schema_error(std::string(where) + ": exponents must be >= 0");
        out[i] = p;
    }
    return out;
}

}  // namespace detail

// --- algebra context ---------------------------------------------------------

inline json context_to_json(const AlgebraContext& ctx) {
    json sig = json::array();
    for (int i = 0; i < ctx.n(); ++i) sig.push_back(ctx.signature(i));
    return json{{"n", ctx.n()},
                {"signature", sig},
                {"field", ctx.field() == Field::Complex ? "complex" : "real"}};
}

inline AlgebraContext context_from_json(const json& j) {
    int n = detail::as_int(detail::require_field(j, "n", "context"), "context.n");
    const json& sig = detail::as_array(detail::require_field(j, "signature", "context"),
                                       "context.signature");
    std::vector<int> s;
    for (const auto& e : sig) s.push_back(detail::as_int(e, "context.signature"));
    std::string f =
        detail::as_string(detail::require_field(j, "field", "context"), "context.field");
    if (f != "complex" && f != "real")
        throw schema_error("context.field: expected 'complex' or 'real'");
    return AlgebraContext::make(n, s, f == "complex" ? Field::Complex : Field::Real);
}

// --- gamma numbers -------------------------------------------------------------

// A gamma number is a list of blade records {mask, re, im}; zero coefficients
// are omitted on output, and "re"/"im" default to zero on input.
inline json gamma_to_json(const GammaNumber& g) {
    json terms = json::array();
    for (int m = 0; m < g.dim(); ++m) {
        cplx c = g.coeff(BladeMask(unsigned(m)));
        if (c == cplx(0.0)) continue;
        json t{{"mask", m}};
        if (c.real() != 0.0) t["re"] = c.real();
        if (c.imag() != 0.0) t["im"] = c.imag();
        terms.push_back(std::move(t));
    }
    return terms;
}

inline GammaNumber gamma_from_json(const json& j, const AlgebraContext& ctx) {
    detail::as_array(j, "gamma");
    GammaNumber g = GammaNumber::zero(ctx);
    for (const auto& t : j) {
        int mask = detail::as_int(detail::require_field(t, "mask", "gamma term"),
                                  "gamma.mask");
        if (mask < 0 || mask >= ctx.dim())
            throw schema_error("gamma.mask: blade mask " + std::to_string(mask) +
                               " out of range for a rank-" + std::to_string(ctx.n()) +
                               " context");
        double re = 0.0, im = 0.0;
        if (auto it = t.find("re"); it != t.end()) re = detail::as_number(*it, "gamma.re");
        if (auto it = t.find("im"); it != t.end()) im = detail::as_number(*it, "gamma.im");
        if (ctx.field() == Field::Real && im != 0.0)
            throw schema_error("gamma.im: nonzero imaginary part in a real context");
        auto bm = BladeMask(mask);
        g.set_coeff(bm, g.coeff(bm) + cplx(re, im));
    }
    return g;
}

// --- 4x4 complex matrices ------------------------------------------------------

// Row-major list of 16 [re, im] pairs.
inline json matrix_to_json(const Mat4C& m) {
    json entries = json::array();
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    return entries;
}

inline Mat4C matrix_from_json(const json& j) {
    detail::as_array(j, "matrix");
    if (j.size() != 16) throw schema_error("matrix: expected 16 row-major entries");
    Mat4C m;
    for (int i = 0; i < 16; ++i) {
        const json& e = detail::as_array(j[std::size_t(i)], "matrix entry");
        if (e.size() != 2) throw schema_error("matrix entry: expected [re, im]");
        m(i / 4, i % 4) =
            cplx(detail::as_number(e[0], "matrix.re"), detail::as_number(e[1], "matrix.im"));
    }
    return m;
}

// --- scalar polynomials ---------------------------------------------------------

inline json scalar_poly_to_json(const ScalarPoly& p) {
    json terms = json::array();
    for (const auto& t : p)
        terms.push_back(json{{"coeff", t.coeff},
                             {"powers", json::array({t.powers[0], t.powers[1],
                                                     t.powers[2], t.powers[3]})}});
    return terms;
}

inline ScalarPoly scalar_poly_from_json(const json& j) {
    detail::as_array(j, "scalar poly");
    ScalarPoly p;
    for (const auto& t : j) {
        ScalarPolyTerm term;
        term.coeff = detail::as_number(detail::require_field(t, "coeff", "scalar poly term"),
                                       "scalar poly coeff");
        term.powers =
            detail::as_powers(detail::require_field(t, "powers", "scalar poly term"),
                              "scalar poly powers");
        p.push_back(term);
    }
    return p;
}

// --- field expressions -----------------------------------------------------------

inline json field_to_json(const FieldExpr& f);

inline json field_to_json(const FieldPtr& f) {
    if (!f) throw error("field_to_json: null field");
    return field_to_json(*f);
}

inline json field_to_json(const FieldExpr& f) {
    switch (f.kind) {
        case FieldExpr::Kind::Constant:
            return json{{"kind", "constant"}, {"value", gamma_to_json(f.constant)}};
        case FieldExpr::Kind::Coordinate:
            return json{{"kind", "coordinate"}, {"mu", f.mu}};
        case FieldExpr::Kind::Poly: {
            json terms = json::array();
            for (const auto& t : f.poly)
                terms.push_back(json{{"coeff", gamma_to_json(t.coeff)},
                                     {"powers", json::array({t.powers[0], t.powers[1],
                                                             t.powers[2], t.powers[3]})}});
            return json{{"kind", "poly"}, {"terms", terms}};
        }
        case FieldExpr::Kind::PlaneWave:
            return json{{"kind", "planewave"},
                        {"direction", gamma_to_json(f.direction)},
                        {"coefficients", json::array({f.wave[0], f.wave[1], f.wave[2],
                                                      f.wave[3]})}};
        case FieldExpr::Kind::GroupFactor:
            return json{{"kind", "groupfactor"},
                        {"generator", gamma_to_json(f.direction)},
                        {"lambda", scalar_poly_to_json(f.lambda)}};
        case FieldExpr::Kind::Sum:
        case FieldExpr::Kind::Product: {
            json kids = json::array();
            for (const auto& c : f.children) kids.push_back(field_to_json(c));
            return json{{"kind", f.kind == FieldExpr::Kind::Sum ? "sum" : "product"},
                        {"children", kids}};
        }
    }
    throw error("field_to_json: unhandled kind");
}

inline FieldPtr field_from_json(const json& j, const AlgebraContext& ctx) {
    std::string kind =
        detail::as_string(detail::require_field(j, "kind", "field"), "field.kind");
    if (kind == "constant")
        return constant_field(
            gamma_from_json(detail::require_field(j, "value", "constant field"), ctx));
    if (kind == "coordinate")
        return coordinate_field(
            ctx, detail::as_int(detail::require_field(j, "mu", "coordinate field"),
                                "field.mu"));
    if (kind == "poly") {
        const json& terms = detail::as_array(
            detail::require_field(j, "terms", "poly field"), "field.terms");
        std::vector<PolyTerm> p;
        for (const auto& t : terms) {
            PolyTerm term;
            term.coeff =
                gamma_from_json(detail::require_field(t, "coeff", "poly term"), ctx);
            term.powers = detail::as_powers(
                detail::require_field(t, "powers", "poly term"), "poly term powers");
            p.push_back(std::move(term));
        }
        return poly_field(ctx, std::move(p));
    }
    if (kind == "planewave") {
        GammaNumber s =
            gamma_from_json(detail::require_field(j, "direction", "planewave field"), ctx);
        auto c = detail::as_number_array<4>(
            detail::require_field(j, "coefficients", "planewave field"),
            "field.coefficients");
        return planewave_field(s, c);
    }
    if (kind == "groupfactor") {
        GammaNumber t = gamma_from_json(
            detail::require_field(j, "generator", "groupfactor field"), ctx);
        ScalarPoly lam =
            scalar_poly_from_json(detail::require_field(j, "lambda", "groupfactor field"));
        return groupfactor_field(lam, t);
    }
    if (kind == "sum" || kind == "product") {
        const json& kids = detail::as_array(
            detail::require_field(j, "children", "composite field"), "field.children");
        std::vector<FieldPtr> parts;
        for (const auto& k : kids) parts.push_back(field_from_json(k, ctx));
        return kind == "sum" ? sum_field(std::move(parts))
                             : product_field(std::move(parts));
    }
    throw schema_error("field.kind: unknown kind '" + kind + "'");
}

// --- mass terms -------------------------------------------------------------------

// Mass terms serialize through their construction tag, so every record re-runs
// the validating factory it originally came from.
inline json massterm_to_json(const MassTerm& mt) {
    json j{{"kind", mt.kind}};
    if (mt.kind == "standard" || mt.kind == "real") {
        j["m"] = mt.m;
        j["n"] = gamma_to_json(mt.n);
        j["k"] = gamma_to_json(mt.k);
        if (mt.kind == "standard") j["hermitian_parts"] = mt.hermitian_parts;
        return j;
    }
    if (mt.kind == "canonical") {
        static const char* names[4] = {"I", "II", "III", "IV"};
        j["form"] = names[int(mt.params.at(0))];
        j["m"] = mt.m;
        j["xi"] = mt.params.at(1);
        j["eta"] = mt.params.at(2);
        return j;
    }
    if (mt.kind == "electroweak") {
        j["m"] = mt.m;
        j["xi"] = mt.params.at(0);
        return j;
    }
    if (mt.kind == "hestenes") {
        j["m"] = mt.m;
        return j;
    }
    if (mt.kind == "multimass") {
        j["masses"] = json::array(
            {mt.params.at(0), mt.params.at(1), mt.params.at(2), mt.params.at(3)});
        return j;
    }
    throw error("massterm_to_json: unknown construction tag '" + mt.kind + "'");
}

inline MassTerm massterm_from_json(const json& j) {
    std::string kind =
        detail::as_string(detail::require_field(j, "kind", "mass term"), "massterm.kind");
    auto mass = [&] {
        return detail::as_number(detail::require_field(j, "m", "mass term"), "massterm.m");
    };
    if (kind == "standard" || kind == "real") {
        AlgebraContext ctx =
            AlgebraContext::minkowski(kind == "real" ? Field::Real : Field::Complex);
        double m = mass();
        GammaNumber n = gamma_from_json(detail::require_field(j, "n", "mass term"), ctx);
        GammaNumber k = gamma_from_json(detail::require_field(j, "k", "mass term"), ctx);
        if (kind == "real") return MassTerm::real_form(m, std::move(n), std::move(k));
        bool hp = false;
        if (auto it = j.find("hermitian_parts"); it != j.end())
            hp = detail::as_bool(*it, "massterm.hermitian_parts");
        return MassTerm::standard(m, std::move(n), std::move(k), hp);
    }
    if (kind == "canonical") {
        std::string form = detail::as_string(
            detail::require_field(j, "form", "mass term"), "massterm.form");
        CanonicalForm f;
        if (form == "I")
            f = CanonicalForm::FormI;
        else if (form == "II")
            f = CanonicalForm::FormII;
        else if (form == "III")
            f = CanonicalForm::FormIII;
        else if (form == "IV")
            f = CanonicalForm::FormIV;
        else
            throw schema_error("massterm.form: expected 'I', 'II', 'III' or 'IV'");
        double xi = detail::as_number(detail::require_field(j, "xi", "mass term"),
                                      "massterm.xi");
        double eta = 0.0;
        if (auto it = j.find("eta"); it != j.end())
            eta = detail::as_number(*it, "massterm.eta");
        return MassTerm::canonical(f, mass(), xi, eta);
    }
    if (kind == "electroweak")
        return MassTerm::electroweak(
            mass(), detail::as_number(detail::require_field(j, "xi", "mass term"),
                                      "massterm.xi"));
    if (kind == "hestenes") return MassTerm::hestenes(mass());
    if (kind == "multimass")
        return MassTerm::multi_mass(detail::as_number_array<4>(
            detail::require_field(j, "masses", "mass term"), "massterm.masses"));
    throw schema_error("massterm.kind: unknown kind '" + kind + "'");
}

// --- plane-wave run files -----------------------------------------------------------

// Parsed form of a plane-wave spec file: the wave field, the mass data it
// solves, the covariant momentum for the second-order check, and the
// generator set used for the current table.
struct WaveRun {
    std::string kind;  // standard | general | real | hestenes
    FieldPtr psi;
    MassTerm mt;
    GeneratorSet gs;
    std::array<double, 4> p_cov{};
    bool e5_pairing = false;    // pairing used by the current table
    bool star_normalized = false;  // psi psi^* = e is part of the contract
};

inline WaveRun waverun_from_json(const json& j) {
    std::string kind =
        detail::as_string(detail::require_field(j, "kind", "wave spec"), "wave.kind");
    std::optional<std::string> gsname;
    if (auto it = j.find("generators"); it != j.end())
        gsname = detail::as_string(*it, "wave.generators");
    auto mass = [&] {
        return detail::as_number(detail::require_field(j, "m", "wave spec"), "wave.m");
    };
    if (kind == "standard") {
        double m = mass();
        if (m <= 0.0) throw schema_error("wave.m: must be positive");
        auto p = detail::as_number_array<4>(detail::require_field(j, "p", "wave spec"),
                                            "wave.p");
        double en = std::sqrt(p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + m * m);
        if (std::abs(p[0] - en) > kTolQuadratic * (1.0 + en))
            throw invariant_error("wave.p: time component is off shell for the mass");
        WaveRun run{kind,
                    standard_wave(m, {p[1], p[2], p[3]}),
                    MassTerm::electroweak(m, 0.0),
                    builtin_generators(gsname.value_or("spinorial4")),
                    {en, -p[1], -p[2], -p[3]},
                    false,
                    true};
        return run;
    }
    if (kind == "general") {
        MassTerm mt =
            massterm_from_json(detail::require_field(j, "massterm", "wave spec"));
        auto p = detail::as_number_array<4>(detail::require_field(j, "p", "wave spec"),
                                            "wave.p");
        PlaneWaveSpec spec(std::move(mt));
        spec.p = {p[0], -p[1], -p[2], -p[3]};
        spec.s = gamma_from_json(detail::require_field(j, "s", "wave spec"),
                                 spec.mt.ctx());
        spec.y = gamma_from_json(detail::require_field(j, "y", "wave spec"),
                                 spec.mt.ctx());
        bool e5 = spec.mt.ctx().field() == Field::Real;
        FieldPtr psi = plane_wave(spec);
        WaveRun run{kind,
                    std::move(psi),
                    spec.mt,
                    builtin_generators(gsname.value_or(e5 ? "real_su2" : "spinorial4")),
                    spec.p,
                    e5,
                    false};
        return run;
    }
    if (kind == "real" || kind == "hestenes") {
        double m = mass();
        if (m <= 0.0) throw schema_error("wave.m: must be positive");
        auto pk = detail::as_number_array<3>(detail::require_field(j, "p", "wave spec"),
                                             "wave.p");
        double en = std::sqrt(pk[0] * pk[0] + pk[1] * pk[1] + pk[2] * pk[2] + m * m);
        std::array<double, 4> pcov = {en, -pk[0], -pk[1], -pk[2]};
        if (kind == "real") {
            auto q = detail::as_number_array<3>(
                detail::require_field(j, "q", "wave spec"), "wave.q");
            WaveRun run{kind,
                        real_wave(m, pk, q),
                        real_wave_term(m, q),
                        builtin_generators(gsname.value_or("real_u1")),
                        pcov,
                        true,
                        false};
            return run;
        }
        WaveRun run{kind,
                    hestenes_wave(m, pk),
                    MassTerm::hestenes(m),
                    builtin_generators(gsname.value_or("real_su2")),
                    pcov,
                    true,
                    false};
        return run;
    }
    throw schema_error("wave.kind: unknown kind '" + kind + "'");
}

// --- coupled-system run files --------------------------------------------------------

struct DymRun {
    DymConfig cfg;
    GaugeTransformation gauge;
};

// Two fixed low-degree factors over the first generators of the set; used
// when a config file does not pin its own transformation.
inline GaugeTransformation default_gauge(const GeneratorSet& gs) {
    ScalarPoly l0 = {{0.3, {0, 1, 0, 0}}};
    ScalarPoly l1 = {{-0.2, {1, 0, 0, 0}}, {0.1, {0, 0, 2, 0}}};
    std::vector<GaugeFactor> fs;
    fs.push_back({gs.gens.at(0), l0});
    fs.push_back({gs.gens.at(gs.gens.size() > 1 ? 1 : 0), l1});
    return GaugeTransformation(std::move(fs), gs);
}

inline DymRun dymrun_from_json(const json& j) {
    MassTerm mt = massterm_from_json(detail::require_field(j, "massterm", "system"));
    AlgebraContext ctx = mt.ctx();  // keep a handle; mt moves into the config
    GeneratorSet gs = builtin_generators(detail::as_string(
        detail::require_field(j, "generators", "system"), "system.generators"));
    if (gs.ctx() != ctx)
        throw schema_error(
            "system.generators: generator set context differs from the mass term");
    double eps = detail::as_number(detail::require_field(j, "epsilon", "system"),
                                   "system.epsilon");
    FieldPtr psi = field_from_json(detail::require_field(j, "psi", "system"), ctx);
    const json& aj =
        detail::as_array(detail::require_field(j, "a", "system"), "system.a");
    if (aj.size() != 4) throw schema_error("system.a: expected 4 potential components");
    LieValuedPotential pot{{}, gs};
    for (std::size_t mu = 0; mu < 4; ++mu) pot.a[mu] = field_from_json(aj[mu], ctx);
    const json& fj = detail::require_field(j, "f", "system");
    std::optional<FieldStrength> strength;
    if (fj.is_string()) {
        if (fj.get<std::string>() != "derived")
            throw schema_error("system.f: expected \"derived\" or 6 field expressions");
    } else {
        detail::as_array(fj, "system.f");
        if (fj.size() != 6)
            throw schema_error("system.f: expected 6 strength components");
        FieldStrength fs;
        for (std::size_t p = 0; p < 6; ++p) fs.f[p] = field_from_json(fj[p], ctx);
        strength = std::move(fs);
    }
    DymConfig cfg(std::move(psi), std::move(pot), std::move(strength), std::move(mt), eps);
    std::optional<GaugeTransformation> gauge;
    if (auto it = j.find("gauge"); it != j.end()) {
        detail::as_array(*it, "system.gauge");
        std::vector<GaugeFactor> fs;
        for (const auto& e : *it) {
            GaugeFactor f{
                gamma_from_json(detail::require_field(e, "generator", "gauge factor"),
                                ctx),
                scalar_poly_from_json(
                    detail::require_field(e, "lambda", "gauge factor"))};
            fs.push_back(std::move(f));
        }
        gauge = GaugeTransformation(std::move(fs), cfg.pot.gs);
    } else {
        gauge = default_gauge(cfg.pot.gs);
    }
    return DymRun{std::move(cfg), std::move(*gauge)};
}

inline json dymconfig_to_json(const DymConfig& cfg) {
    json a = json::array();
    for (const auto& comp : cfg.pot.a) a.push_back(field_to_json(comp));
    json f;
    if (cfg.strength) {
        f = json::array();
        for (const auto& comp : cfg.strength->f) f.push_back(field_to_json(comp));
    } else {
        f = "derived";
    }
    return json{{"massterm", massterm_to_json(cfg.mt)}, {"generators", cfg.pot.gs.name},
                {"epsilon", cfg.epsilon},               {"psi", field_to_json(cfg.psi)},
                {"a", a},                               {"f", f}};
}

// --- check reports -----------------------------------------------------------------

struct CheckRecord {
    std::string id;
    std::string law;  // the identity being checked, in formula form
    long samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string command;
    std::string suite;
    std::uint64_t seed = 0;
    long samples = 0;
    double tolerance_scale = 1.0;
    bool pass = true;
    double wall_ms = 0.0;  // printed in the summary; kept out of the payload
    std::vector<CheckRecord> checks;
};

// The JSON payload is a pure function of (command, seed, samples, tolerance
// scale), so identical invocations produce byte-identical files; wall time is
// reported on standard output only.
inline json report_to_json(const SuiteReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"id", c.id},
                              {"law", c.law},
                              {"samples", c.samples},
                              {"max_residual", c.max_residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
    return json{{"schema", "gnum-report-v1"},
                {"command", r.command},
                {"suite", r.suite},
                {"seed", r.seed},
                {"samples", r.samples},
                {"tolerance_scale", r.tolerance_scale},
                {"pass", r.pass},
                {"checks", checks}};
}

}  // namespace gnum
