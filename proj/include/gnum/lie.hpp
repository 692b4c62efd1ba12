#pragma once

// Generator bases, structure constants, Killing forms, adjoint representation,
// orthogonality (ADRIO) checks, spin-group actions, and isomorphism
// verification between generator sets.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "rep.hpp"

namespace gnum {

struct StructureConstants {
    int n = 0;
    std::vector<double> c;          // [t_k, t_l] = c^m_{kl} t_m; index ((k*n)+l)*n+m
    double closure_residual = 0.0;  // worst distance of a commutator from the span
    double max_imag = 0.0;          // largest imaginary part dropped from a coefficient

    double at(int k, int l, int m) const {
        return c[std::size_t((k * n + l) * n + m)];
    }
};

struct GeneratorSet {
    std::string name;
    std::vector<GammaNumber> gens;
    mutable std::shared_ptr<const StructureConstants> cache;

    int size() const { return int(gens.size()); }
    const AlgebraContext& ctx() const {
        if (gens.empty()) throw error("generator set is empty");
        return gens.front().ctx();
    }
};

// Expands gamma-numbers over a fixed generator list. All named bases here are
// orthonormal under the coefficient inner product (equivalently tr(A B^dagger)/4),
// so expansion is a plain projection; non-orthonormal lists fall back to
// least squares through the Gram inverse.
class SpanSolver {
public:
    explicit SpanSolver(const std::vector<GammaNumber>& gens) : gens_(gens) {
        if (gens_.empty()) throw error("span solver: no generators");
        const AlgebraContext& ctx = gens_.front().ctx();
        for (const auto& g : gens_)
            if (g.ctx() != ctx) throw error("span solver: mixed contexts");
        int d = ctx.dim(), n = int(gens_.size());
        a_ = CMat(d, n);
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < d; ++r) a_(r, j) = gens_[std::size_t(j)].coeff(BladeMask(r));
        CMat gram = a_.adjoint() * a_;
        if (max_abs_diff(gram, CMat::identity(n)) < 1e-12) {
            pinv_ = a_.adjoint();
        } else {
            pinv_ = inverse(gram, gram.inf_norm() * 1e-13) * a_.adjoint();
        }
    }

    struct Expansion {
        std::vector<cplx> coeffs;
        double residual = 0.0;  // inf-norm distance from the span
    };

    Expansion expand(const GammaNumber& g) const {
        int d = a_.rows(), n = a_.cols();
        Expansion out;
        out.coeffs.assign(std::size_t(n), cplx{});
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < d; ++r) out.coeffs[std::size_t(i)] += pinv_(i, r) * g.coeff(BladeMask(r));
        for (int r = 0; r < d; ++r) {
            cplx recon{};
            for (int i = 0; i < n; ++i) recon += a_(r, i) * out.coeffs[std::size_t(i)];
            out.residual = std::max(out.residual, std::abs(recon - g.coeff(BladeMask(r))));
        }
        return out;
    }

    const std::vector<GammaNumber>& gens() const { return gens_; }

private:
    std::vector<GammaNumber> gens_;
    CMat a_;     // dim x n coefficient matrix
    CMat pinv_;  // n x dim left inverse
};

inline double span_residual(const std::vector<GammaNumber>& gens, const GammaNumber& g) {
    return SpanSolver(gens).expand(g).residual;
}

inline const StructureConstants& structure_constants(const GeneratorSet& gs) {
    if (gs.cache) return *gs.cache;
    int n = gs.size();
    SpanSolver solver(gs.gens);
    auto sc = std::make_shared<StructureConstants>();
    sc->n = n;
    sc->c.assign(std::size_t(n) * n * n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            auto ex = solver.expand(commutator(gs.gens[std::size_t(k)], gs.gens[std::size_t(l)]));
            sc->closure_residual = std::max(sc->closure_residual, ex.residual);
            for (int m = 0; m < n; ++m) {
                cplx z = ex.coeffs[std::size_t(m)];
                sc->max_imag = std::max(sc->max_imag, std::abs(z.imag()));
                sc->c[std::size_t((k * n + l) * n + m)] = z.real();
            }
        }
    }
    if (sc->closure_residual > kTolQuadratic || sc->max_imag > kTolQuadratic)
        throw invariant_error("structure_constants: set is not closed under commutators (" +
                              gs.name + ")");
    gs.cache = sc;
    return *gs.cache;
}

// The returned reference lives in the set's cache, so the set must outlive it;
// calling with a temporary would dangle.
const StructureConstants& structure_constants(GeneratorSet&&) = delete;

// B_{kl} = tr(ad_k ad_l) = sum_{m,j} c^m_{kj} c^j_{lm}.
inline RMat killing_form(const StructureConstants& sc) {
    int n = sc.n;
    RMat b(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int m = 0; m < n; ++m)
                for (int j = 0; j < n; ++j) s += sc.at(k, j, m) * sc.at(l, m, j);
            b(k, l) = s;
        }
    return b;
}

// Worst violation of sum_m (c^m_{kl} c^p_{mj} + c^m_{lj} c^p_{mk} + c^m_{jk} c^p_{ml}) = 0.
inline double jacobi_residual(const StructureConstants& sc) {
    int n = sc.n;
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int j = 0; j < n; ++j)
                for (int p = 0; p < n; ++p) {
                    double s = 0.0;
                    for (int m = 0; m < n; ++m)
                        s += sc.at(k, l, m) * sc.at(m, j, p) + sc.at(l, j, m) * sc.at(m, k, p) +
                             sc.at(j, k, m) * sc.at(m, l, p);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

struct GroupElement {
    GammaNumber u;
    GammaNumber uinv;
};

inline GroupElement random_group_element(const GeneratorSet& gs, Rng& rng, double scale = 1.0) {
    GammaNumber x = GammaNumber::zero(gs.ctx());
    for (const auto& t : gs.gens) x += t * (rng.symmetric() * scale);
    return {exp_gamma(x), exp_gamma(-x)};
}

// U t_k U^{-1} = Ad_{jk} t_j; column k holds the expansion of the k-th image.
inline RMat adjoint_matrix(const GeneratorSet& gs, const GammaNumber& u, const GammaNumber& uinv) {
    int n = gs.size();
    SpanSolver solver(gs.gens);
    RMat ad(n, n);
    for (int k = 0; k < n; ++k) {
        GammaNumber img = u * gs.gens[std::size_t(k)] * uinv;
        auto ex = solver.expand(img);
        double scale = std::max(1.0, img.inf_norm());
        if (ex.residual > kTolQuadratic * scale)
            throw invariant_error("adjoint image leaves the Lie algebra (" + gs.name + ")");
        for (int j = 0; j < n; ++j) {
            if (std::abs(ex.coeffs[std::size_t(j)].imag()) > kTolQuadratic * scale)
                throw invariant_error("adjoint expansion has an imaginary part (" + gs.name + ")");
            ad(j, k) = ex.coeffs[std::size_t(j)].real();
        }
    }
    return ad;
}

inline RMat adjoint_matrix(const GeneratorSet& gs, const GroupElement& g) {
    return adjoint_matrix(gs, g.u, g.uinv);
}

inline RMat adjoint_matrix(const GeneratorSet& gs, const GammaNumber& u) {
    return adjoint_matrix(gs, u, inverse_gamma(u));
}

inline double adrio_deviation(const GeneratorSet& gs, int samples, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        GroupElement g = random_group_element(gs, rng, 1.2);
        worst = std::max(worst, orthogonality_defect(adjoint_matrix(gs, g)));
    }
    return worst;
}

// U t_k U^dagger = Ad_{lk} t_l and U^dagger t_l U = Ad_{lk} t_k for unitary
// groups whose adjoint is orthogonal.
inline double adjoint_dagger_residual(const GeneratorSet& gs, int samples, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        GroupElement g = random_group_element(gs, rng, 1.0);
        RMat ad = adjoint_matrix(gs, g);
        GammaNumber udag = g.u.dagger();
        int n = gs.size();
        for (int k = 0; k < n; ++k) {
            GammaNumber lhs1 = g.u * gs.gens[std::size_t(k)] * udag;
            GammaNumber lhs2 = udag * gs.gens[std::size_t(k)] * g.u;
            GammaNumber rhs1 = GammaNumber::zero(gs.ctx());
            GammaNumber rhs2 = GammaNumber::zero(gs.ctx());
            for (int l = 0; l < n; ++l) {
                rhs1 += gs.gens[std::size_t(l)] * ad(l, k);
                rhs2 += gs.gens[std::size_t(l)] * ad(k, l);
            }
            worst = std::max(worst, max_abs_diff(lhs1, rhs1));
            worst = std::max(worst, max_abs_diff(lhs2, rhs2));
        }
    }
    return worst;
}

// Generator change tau_l = H_{lk} t_k (H orthogonal, so t_k = H_{lk} tau_l):
// the two adjoint representations satisfy Ad_tau(U) = H Ad_t(U) H^T.
inline double basis_change_adjoint_residual(const GeneratorSet& gs, const RMat& h, int samples,
                                            std::uint64_t seed) {
    int n = gs.size();
    if (h.rows() != n || h.cols() != n) throw schema_error("basis change: H has wrong shape");
    if (orthogonality_defect(h) > 1e-10)
        throw invariant_error("basis change: H is not orthogonal");
    GeneratorSet tau{gs.name + "/rotated", {}, nullptr};
    for (int l = 0; l < n; ++l) {
        GammaNumber v = GammaNumber::zero(gs.ctx());
        for (int k = 0; k < n; ++k) v += gs.gens[std::size_t(k)] * h(l, k);
        tau.gens.push_back(v);
    }
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        GroupElement g = random_group_element(gs, rng, 1.0);
        RMat ad_t = adjoint_matrix(gs, g);
        RMat ad_tau = adjoint_matrix(tau, g);
        worst = std::max(worst, max_abs_diff(ad_tau, h * ad_t * h.transpose()));
    }
    return worst;
}

struct SpinActionReport {
    double unit_residual = 0.0;   // ||U U* - e||
    double grade_residual = 0.0;  // leakage of U v U* outside grade 1
    double orth_residual = 0.0;   // orthogonality defect of the induced rotation
};

// Even generator sets with star(t) = -t act on grade-1 elements by rotations.
inline SpinActionReport spin_action_check(const GeneratorSet& gs, int samples,
                                          std::uint64_t seed) {
    const AlgebraContext& ctx = gs.ctx();
    for (const auto& t : gs.gens) {
        if (!t.odd().approx_zero()) throw invariant_error("spin action: generator is not even");
        if (!(t.star() + t).approx_zero())
            throw invariant_error("spin action: generator fails star(t) = -t");
    }
    Rng rng(seed);
    SpinActionReport rep;
    GammaNumber e = GammaNumber::unit(ctx);
    for (int s = 0; s < samples; ++s) {
        GroupElement g = random_group_element(gs, rng, 1.0);
        GammaNumber ustar = g.u.star();
        rep.unit_residual = std::max(rep.unit_residual, max_abs_diff(g.u * ustar, e));
        RMat rot(ctx.n(), ctx.n());
        for (int j = 0; j < ctx.n(); ++j) {
            GammaNumber w = g.u * basis_vector(ctx, j) * ustar;
            rep.grade_residual = std::max(rep.grade_residual,
                                          max_abs_diff(w, w.grade_part(1)));
            for (int i = 0; i < ctx.n(); ++i) rot(i, j) = w.coeff(1u << i).real();
        }
        rep.orth_residual = std::max(rep.orth_residual, orthogonality_defect(rot));
    }
    return rep;
}

// Linear map images img_k = sum_j M_{jk} B_j must reproduce the structure
// constants of A: [img_k, img_l] = c_A^m_{kl} img_m. Any invertible real M
// is accepted.
inline double isomorphism_verify(const GeneratorSet& a, const GeneratorSet& b, const RMat& m) {
    int n = a.size();
    if (b.size() != n || m.rows() != n || m.cols() != n)
        throw schema_error("isomorphism map: dimension mismatch");
    cplx det = lu_det(m.to_complex());
    if (std::abs(det) < 1e-10) throw invariant_error("isomorphism map is not invertible");
    const StructureConstants& sc = structure_constants(a);
    std::vector<GammaNumber> img;
    img.reserve(std::size_t(n));
    for (int k = 0; k < n; ++k) {
        GammaNumber v = GammaNumber::zero(b.ctx());
        for (int j = 0; j < n; ++j) v += b.gens[std::size_t(j)] * m(j, k);
        img.push_back(v);
    }
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            GammaNumber lhs = commutator(img[std::size_t(k)], img[std::size_t(l)]);
            for (int mm = 0; mm < n; ++mm) lhs -= img[std::size_t(mm)] * sc.at(k, l, mm);
            worst = std::max(worst, lhs.inf_norm());
        }
    return worst;
}

// Entry-for-entry comparison of two sets' structure constants.
inline double structure_constants_match(const GeneratorSet& a, const GeneratorSet& b) {
    const StructureConstants& sa = structure_constants(a);
    const StructureConstants& sb = structure_constants(b);
    if (sa.n != sb.n) throw schema_error("structure constant comparison: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.c.size(); ++i)
        worst = std::max(worst, std::abs(sa.c[i] - sb.c[i]));
    return worst;
}

// Coefficients of new_gens over old_gens: new_k = H_{lk} old_l. Throws if the
// expansion leaves the span or picks up imaginary parts.
inline RMat expansion_matrix(const std::vector<GammaNumber>& new_gens,
                             const std::vector<GammaNumber>& old_gens) {
    SpanSolver solver(old_gens);
    int n = int(new_gens.size()), m = int(old_gens.size());
    RMat h(m, n);
    for (int k = 0; k < n; ++k) {
        auto ex = solver.expand(new_gens[std::size_t(k)]);
        if (ex.residual > kTolAlgebraic)
            throw invariant_error("expansion_matrix: element outside the old span");
        for (int l = 0; l < m; ++l) {
            if (std::abs(ex.coeffs[std::size_t(l)].imag()) > kTolAlgebraic)
                throw invariant_error("expansion_matrix: complex coefficient");
            h(l, k) = ex.coeffs[std::size_t(l)].real();
        }
    }
    return h;
}

namespace detail {

struct AhEntry {
    const char* label;
    BladeMask mask;
    bool imaginary;
};

// Antihermitian basis order: ie0, e1, e2, e3, ie01, ie02, ie03, e12, e13, e23,
// e012, e013, e023, ie123, e5, ie.
inline const std::array<AhEntry, 16>& ah_table() {
    static const std::array<AhEntry, 16> t = {{
        {"ie0", 0b0001, true},
        {"e1", 0b0010, false},
        {"e2", 0b0100, false},
        {"e3", 0b1000, false},
        {"ie01", 0b0011, true},
        {"ie02", 0b0101, true},
        {"ie03", 0b1001, true},
        {"e12", 0b0110, false},
        {"e13", 0b1010, false},
        {"e23", 0b1100, false},
        {"e012", 0b0111, false},
        {"e013", 0b1011, false},
        {"e023", 0b1101, false},
        {"ie123", 0b1110, true},
        {"e5", 0b1111, false},
        {"ie", 0b0000, true},
    }};
    return t;
}

inline GammaNumber ah_elem(const AlgebraContext& ctx, int idx) {
    const AhEntry& e = ah_table()[std::size_t(idx)];
    return GammaNumber::blade(ctx, e.mask, e.imaginary ? cplx(0, 1) : cplx(1, 0));
}

inline GeneratorSet from_indices(std::string name, const AlgebraContext& ctx,
                                 std::initializer_list<int> idx) {
    GeneratorSet gs{std::move(name), {}, nullptr};
    for (int i : idx) gs.gens.push_back(ah_elem(ctx, i));
    return gs;
}

}  // namespace detail

inline const std::vector<std::string>& antihermitian_labels() {
    static const std::vector<std::string> v = [] {
        std::vector<std::string> out;
        for (const auto& e : detail::ah_table()) out.emplace_back(e.label);
        return out;
    }();
    return v;
}

inline std::vector<GammaNumber> antihermitian_basis(
    const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    std::vector<GammaNumber> out;
    for (int i = 0; i < 16; ++i) out.push_back(detail::ah_elem(ctx, i));
    return out;
}

inline std::vector<GammaNumber> gellmann_generators(
    const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r3 = 1.0 / std::sqrt(3.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    const cplx i(0, 1);
    auto s = [&](std::initializer_list<std::pair<BladeMask, cplx>> terms) {
        return GammaNumber::sum_of(ctx, terms);
    };
    return {
        s({{0b1101, r2}, {0b1100, r2}}),                        // (e023 + e23)/sqrt2
        s({{0b1011, -r2}, {0b1010, -r2}}),                      // -(e013 + e13)/sqrt2
        s({{0b0111, r2}, {0b0110, r2}}),                        // (e012 + e12)/sqrt2
        s({{0b1111, r2}, {0b1001, -i * r2}}),                   // (e5 - i e03)/sqrt2
        s({{0b1000, -r2}, {0b1110, -i * r2}}),                  // -(e3 + i e123)/sqrt2
        s({{0b0100, -r2}, {0b0011, -i * r2}}),                  // -(e2 + i e01)/sqrt2
        s({{0b0010, -r2}, {0b0101, i * r2}}),                   // (-e1 + i e02)/sqrt2
        s({{0b0111, r6}, {0b0110, -r6}, {0b0001, -2.0 * i * r6}}),  // (e012 - e12 - 2i e0)/sqrt6
        s({{0b0100, r2}, {0b0011, -i * r2}}),                   // (e2 - i e01)/sqrt2
        s({{0b0010, -r2}, {0b0101, -i * r2}}),                  // -(e1 + i e02)/sqrt2
        s({{0b1111, r2}, {0b1001, i * r2}}),                    // (e5 + i e03)/sqrt2
        s({{0b1000, r2}, {0b1110, -i * r2}}),                   // (e3 - i e123)/sqrt2
        s({{0b1101, -r2}, {0b1100, r2}}),                       // (-e023 + e23)/sqrt2
        s({{0b1011, r2}, {0b1010, -r2}}),                       // (e013 - e13)/sqrt2
        s({{0b0111, -r3}, {0b0110, r3}, {0b0001, -i * r3}}),    // (-e012 + e12 - i e0)/sqrt3
        s({{0b0000, i}}),                                       // ie
    };
}

inline std::vector<GammaNumber> spinorial_generators(
    const AlgebraContext& ctx = AlgebraContext::minkowski()) {
    const cplx i(0, 1);
    auto s = [&](cplx a, cplx b, cplx c, cplx d) {
        return GammaNumber::sum_of(ctx, {{0b0000, a}, {0b0001, b}, {0b0110, c}, {0b0111, d}});
    };
    return {
        s(0.5 * i, 0.5 * i, -0.5, -0.5),
        s(0.5 * i, 0.5 * i, 0.5, 0.5),
        s(0.5 * i, -0.5 * i, -0.5, 0.5),
        s(0.5 * i, -0.5 * i, 0.5, -0.5),
    };
}

inline GeneratorSet builtin_generators(const std::string& name) {
    using detail::from_indices;
    static const AlgebraContext mc = AlgebraContext::minkowski();
    static const AlgebraContext mr = AlgebraContext::minkowski(Field::Real);
    if (name == "antihermitian16")
        return from_indices(name, mc, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
    if (name == "L15")
        return from_indices(name, mc, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
    if (name == "L10_1") return from_indices(name, mc, {1, 2, 3, 7, 8, 9, 10, 11, 12, 14});
    if (name == "L10_2") return from_indices(name, mc, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    if (name == "L10_3") return from_indices(name, mc, {4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
    if (name == "L6_1") return from_indices(name, mc, {7, 8, 9, 10, 11, 12});
    if (name == "L6_2") return from_indices(name, mc, {0, 1, 2, 4, 5, 7});
    if (name == "L6_3") return from_indices(name, mc, {4, 5, 6, 7, 8, 9});
    if (name == "L6p_1") return from_indices(name, mc, {7, 8, 9, 0, 13, 14});
    if (name == "L3_1") return from_indices(name, mc, {7, 8, 9});
    if (name == "L3_2") return from_indices(name, mc, {4, 5, 7});
    if (name == "gellmann8") {
        auto g = gellmann_generators();
        return GeneratorSet{name, {g.begin(), g.begin() + 8}, nullptr};
    }
    if (name == "gellmann15") {
        auto g = gellmann_generators();
        return GeneratorSet{name, {g.begin(), g.begin() + 15}, nullptr};
    }
    if (name == "gellmann16") return GeneratorSet{name, gellmann_generators(), nullptr};
    if (name == "spinorial4") return GeneratorSet{name, spinorial_generators(), nullptr};
    if (name == "real_sp2") return from_indices(name, mr, {1, 2, 3, 7, 8, 9, 10, 11, 12, 14});
    if (name == "real_su2su2") return from_indices(name, mr, {7, 8, 9, 10, 11, 12});
    if (name == "real_su2") return from_indices(name, mr, {7, 8, 9});
    if (name == "real_u1") return from_indices(name, mr, {7});
    throw schema_error("unknown generator set: " + name);
}

inline const std::vector<std::string>& builtin_generator_names() {
    static const std::vector<std::string> v = {
        "antihermitian16", "L15", "L10_1", "L10_2", "L10_3", "L6_1", "L6_2", "L6_3",
        "L6p_1", "L3_1", "L3_2", "gellmann8", "gellmann15", "spinorial4",
        "real_sp2", "real_su2su2", "real_su2", "real_u1",
    };
    return v;
}

// Ten signed bivectors of the euclidean rank-5 algebra whose structure
// constants coincide entry-for-entry with those of L10_1.
inline GeneratorSet gamma5_spin_set() {
    AlgebraContext c5 = AlgebraContext::euclidean(5, Field::Real);
    auto b = [&](BladeMask m, double s) { return GammaNumber::blade(c5, m, s); };
    GeneratorSet gs{"gamma5_spin", {}, nullptr};
    gs.gens = {
        b(0b01001, -1), b(0b01010, -1), b(0b01100, -1),  // -f14 -f24 -f34
        b(0b00011, -1), b(0b00101, -1), b(0b00110, -1),  // -f12 -f13 -f23
        b(0b10100, 1),  b(0b10010, -1), b(0b10001, 1),   //  f35 -f25  f15
        b(0b11000, -1),                                  // -f45
    };
    return gs;
}

// Six signed bivectors of the rank-4 algebra with all-negative signature,
// ordered to match L6_3 through e^k -> f^k (k=1..3), ie^0 -> f^4.
inline GeneratorSet gamma4_spin_set() {
    AlgebraContext c4 = AlgebraContext::make(4, {-1, -1, -1, -1}, Field::Real);
    auto b = [&](BladeMask m, double s) { return GammaNumber::blade(c4, m, s); };
    GeneratorSet gs{"gamma4_spin", {}, nullptr};
    gs.gens = {
        b(0b1001, -1), b(0b1010, -1), b(0b1100, -1),  // -f14 -f24 -f34
        b(0b0011, 1),  b(0b0101, 1),  b(0b0110, 1),   //  f12  f13  f23
    };
    return gs;
}

// Proof map for L3_1 -> L3_2: images (-ie01, -ie02, e12).
inline RMat l3_proof_map() {
    RMat m = RMat::identity(3);
    m(0, 0) = -1;
    m(1, 1) = -1;
    return m;
}

// Proof map for L6p_1 -> L6_3 via the commuting half-sum triples
// t_k = (ie^{0k} + spatial)/2 and their hatted partners.
inline RMat l6p_proof_map() {
    RMat m(6, 6);
    m(0, 0) = 0.5;  m(5, 0) = 0.5;   // e12   -> (ie01 + e23)/2
    m(1, 1) = 0.5;  m(4, 1) = -0.5;  // e13   -> (ie02 - e13)/2
    m(2, 2) = 0.5;  m(3, 2) = 0.5;   // e23   -> (ie03 + e12)/2
    m(2, 3) = -0.5; m(3, 3) = 0.5;   // ie0   -> (-ie03 + e12)/2
    m(1, 4) = -0.5; m(4, 4) = -0.5;  // ie123 -> (-ie02 - e13)/2
    m(0, 5) = -0.5; m(5, 5) = 0.5;   // e5    -> (-ie01 + e23)/2
    return m;
}

// The fifteen 6-dimensional algebras: vectors of the antihermitian basis
// (except ie) commuting with one chosen basis vector.
inline std::vector<GeneratorSet> enumerate_l6_sets() {
    static const AlgebraContext mc = AlgebraContext::minkowski();
    std::vector<GeneratorSet> out;
    for (int v = 0; v < 15; ++v) {
        GammaNumber pivot = detail::ah_elem(mc, v);
        GeneratorSet gs{"L6{" + antihermitian_labels()[std::size_t(v)] + "}", {}, nullptr};
        for (int j = 0; j < 15; ++j) {
            if (j == v) continue;
            GammaNumber t = detail::ah_elem(mc, j);
            if (commutator(t, pivot).approx_zero()) gs.gens.push_back(t);
        }
        out.push_back(std::move(gs));
    }
    return out;
}

// The twenty 3-dimensional algebras: an anticommuting basis pair plus its
// product, deduplicated by the index triple the span touches.
inline std::vector<GeneratorSet> enumerate_l3_sets() {
    static const AlgebraContext mc = AlgebraContext::minkowski();
    std::vector<GammaNumber> basis = antihermitian_basis(mc);
    std::set<std::array<int, 3>> seen;
    std::vector<GeneratorSet> out;
    for (int i = 0; i < 15; ++i) {
        for (int j = i + 1; j < 15; ++j) {
            if (commutator(basis[std::size_t(i)], basis[std::size_t(j)]).approx_zero()) continue;
            GammaNumber p = basis[std::size_t(i)] * basis[std::size_t(j)];
            int prod_idx = -1;
            for (int m = 0; m < 15; ++m) {
                if (max_abs_diff(p, basis[std::size_t(m)]) < kTolAlgebraic ||
                    max_abs_diff(p, -basis[std::size_t(m)]) < kTolAlgebraic) {
                    prod_idx = m;
                    break;
                }
            }
            if (prod_idx < 0)
                throw invariant_error("pair product is not a basis element up to sign");
            std::array<int, 3> key{i, j, prod_idx};
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) continue;
            GeneratorSet gs{"L3{" + antihermitian_labels()[std::size_t(key[0])] + "," +
                                antihermitian_labels()[std::size_t(key[1])] + "," +
                                antihermitian_labels()[std::size_t(key[2])] + "}",
                            {basis[std::size_t(i)], basis[std::size_t(j)], p},
                            nullptr};
            out.push_back(std::move(gs));
        }
    }
    return out;
}

struct L6PrimePairing {
    int first = 0;   // indices into enumerate_l3_sets()
    int second = 0;
    GeneratorSet combined;
};

// Pairings of two 3-dimensional algebras with elementwise-commuting spans.
inline std::vector<L6PrimePairing> enumerate_l6p_pairings() {
    std::vector<GeneratorSet> l3 = enumerate_l3_sets();
    std::vector<L6PrimePairing> out;
    for (int a = 0; a < int(l3.size()); ++a) {
        for (int b = a + 1; b < int(l3.size()); ++b) {
            bool commutes = true;
            for (const auto& u : l3[std::size_t(a)].gens) {
                for (const auto& v : l3[std::size_t(b)].gens)
                    if (!commutator(u, v).approx_zero()) {
                        commutes = false;
                        break;
                    }
                if (!commutes) break;
            }
            if (!commutes) continue;
            L6PrimePairing p;
            p.first = a;
            p.second = b;
            p.combined.name = l3[std::size_t(a)].name + "+" + l3[std::size_t(b)].name;
            p.combined.gens = l3[std::size_t(a)].gens;
            p.combined.gens.insert(p.combined.gens.end(), l3[std::size_t(b)].gens.begin(),
                                   l3[std::size_t(b)].gens.end());
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace gnum
