#include "ihf/involutive.hpp"

#include "ihf/solver.hpp"

namespace ihf {

IotaReport validate_iota_complex(const IotaComplex& c) {
    IotaReport r;
    const auto& C = c.base;
    if (C->mode() != kModeU) {
        r.over_u = false;
        r.issues.push_back("iota-complex must be over F[U], got " + C->mode().name());
        return r;
    }
    for (const auto& g : C->generators())
        if (g.grading.twice[0] % 2) {
            r.over_u = false;
            r.issues.push_back("generator '" + g.name + "' has a non-integral Maslov grading");
        }
    auto cr = validate_complex(*C);
    if (!cr.ok()) {
        r.over_u = false;
        r.issues.insert(r.issues.end(), cr.issues.begin(), cr.issues.end());
        return r;
    }
    r.towers = static_cast<int>(homology(C).towers.size());
    if (r.towers != 1) {
        r.one_tower = false;
        r.issues.push_back("U^-1 H_* has rank " + std::to_string(r.towers) + ", expected 1");
    }
    const auto& iota = c.iota;
    if (!same_complex(iota.source(), C) || !same_complex(iota.target(), C) || iota.skew()) {
        r.iota_chain_map = false;
        r.issues.push_back("iota must be a plain endomorphism of the complex");
        return r;
    }
    if (iota.degree() != Grading::zero(kModeU)) {
        r.iota_degree_zero = false;
        r.issues.push_back("iota has degree " + iota.degree().to_string() + ", expected 0");
    }
    auto mr = validate_chain_map(iota);
    if (!mr.homogeneous) r.iota_degree_zero = false;
    if (!mr.commutes) r.iota_chain_map = false;
    r.issues.insert(r.issues.end(), mr.issues.begin(), mr.issues.end());
    if (!r.iota_degree_zero || !r.iota_chain_map) {
        r.iota_squared_homotopic = false;
        return r;
    }
    r.homotopy = homotopy_solve(compose(iota, iota), ChainMap::identity(iota.source()));
    if (!r.homotopy) {
        r.iota_squared_homotopic = false;
        r.issues.push_back("iota^2 is not chain homotopic to the identity");
    }
    return r;
}

// ---- enhanced morphisms ----------------------------------------------------------

static Grading plus_one(const Grading& d) { return d + Grading::from_halves({2}); }

EnhancedMorphism make_enhanced(IotaPtr source, IotaPtr target, ChainMap F, ChainMap h) {
    auto bad = [](const std::string& w) { return ComplexError("enhanced morphism: " + w); };
    for (const auto* m : {&F, &h}) {
        if (!same_complex(m->source(), source->base) || !same_complex(m->target(), target->base))
            throw bad("maps must go between the underlying complexes");
        if (m->skew()) throw bad("maps must be plain");
    }
    if (h.degree() != plus_one(F.degree())) throw bad("h must have degree deg(F) + 1");
    return EnhancedMorphism{std::move(source), std::move(target), std::move(F), std::move(h)};
}

EnhancedMorphism zero_enhanced(IotaPtr source, IotaPtr target, Grading degree) {
    auto F = ChainMap::zero(source->base, target->base, degree);
    auto h = ChainMap::zero(source->base, target->base, plus_one(degree));
    return make_enhanced(std::move(source), std::move(target), std::move(F), std::move(h));
}

EnhancedMorphism operator+(const EnhancedMorphism& a, const EnhancedMorphism& b) {
    return make_enhanced(a.source, a.target, a.F + b.F, a.h + b.h);
}

bool operator==(const EnhancedMorphism& a, const EnhancedMorphism& b) { return a.F == b.F && a.h == b.h; }

EnhancedMorphism mor_differential(const EnhancedMorphism& m) {
    auto dF = commutator_with_d(m.F);
    auto dh = compose(m.F, m.source->iota) + compose(m.target->iota, m.F) + commutator_with_d(m.h);
    return make_enhanced(m.source, m.target, std::move(dF), std::move(dh));
}

bool is_enhanced_chain_map(const EnhancedMorphism& m) {
    auto d = mor_differential(m);
    return d.F.is_zero() && d.h.is_zero();
}

EnhancedMorphism compose_enhanced(const EnhancedMorphism& second, const EnhancedMorphism& first) {
    if (!same_complex(first.target->base, second.source->base))
        throw ComplexError("enhanced composition: target/source mismatch");
    return make_enhanced(first.source, second.target, compose(second.F, first.F),
                         compose(second.F, first.h) + compose(second.h, first.F));
}

EnhancedMorphism compose_enhanced_alternative(const EnhancedMorphism& second, const EnhancedMorphism& first) {
    if (!same_complex(first.target->base, second.source->base))
        throw ComplexError("enhanced composition: target/source mismatch");
    // F1 ∘ h2 needs target(h2) = source(F1): only possible when everything is one complex.
    return make_enhanced(first.source, second.target, compose(second.F, first.F),
                         compose(first.F, second.h) + compose(first.h, second.F));
}

// ---- CFI --------------------------------------------------------------------------

Coefficient lift_to_uq(const Coefficient& c, bool times_q) {
    if (c.mode() != kModeU) throw RingError("lift_to_uq expects an F[U] coefficient");
    Coefficient out(kModeUQ);
    for (auto m : c.terms()) {
        m.q = times_q ? 1 : 0;
        out.toggle(m);
    }
    return out;
}

Matrix lift_to_uq(const Matrix& m, bool times_q) {
    Matrix out(kModeUQ, m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, x] : m.column(c)) out.add(r, c, lift_to_uq(x, times_q));
    return out;
}

ComplexPtr build_cfi(const IotaComplex& c, bool validate) {
    if (validate) {
        auto r = validate_iota_complex(c);
        if (!r.ok()) throw ComplexError("CFI of an invalid iota-complex: " + (r.issues.empty() ? std::string("?") : r.issues.front()));
    }
    const auto& C = *c.base;
    auto one_plus_iota = c.iota.matrix() + Matrix::identity(kModeU, C.size());
    Matrix d = lift_to_uq(C.differential()) + lift_to_uq(one_plus_iota, true);
    return std::make_shared<const FreeComplex>(kModeUQ, C.generators(), std::move(d));
}

ChainMap to_cfi_map(const EnhancedMorphism& m, const ComplexPtr& cfi_source, const ComplexPtr& cfi_target) {
    Matrix x = lift_to_uq(m.F.matrix()) + lift_to_uq(m.h.matrix(), true);
    return ChainMap(cfi_source, cfi_target, std::move(x), m.F.degree());
}

ChainMap to_cfi_map(const EnhancedMorphism& m) {
    return to_cfi_map(m, build_cfi(*m.source), build_cfi(*m.target));
}

ChainMap twist_automorphism(const IotaComplex& c, const ComplexPtr& cfi) {
    auto ph = phi(c.base);
    Matrix x = Matrix::identity(kModeUQ, c.base->size()) + lift_to_uq(ph.matrix(), true);
    return ChainMap(cfi, cfi, std::move(x), Grading::zero(kModeUQ));
}

TwistReport check_twist(const IotaComplex& c) {
    TwistReport r;
    auto cfi = build_cfi(c);
    auto t = twist_automorphism(c, cfi);
    auto id = ChainMap::identity(cfi);
    r.phi_nonzero = !phi(c.base).is_zero();
    r.chain_map = validate_chain_map(t).ok();
    r.squares_to_identity = compose(t, t) == id;
    r.homotopy = homotopy_solve(t, id);
    r.homotopic_to_identity = r.homotopy.has_value();
    return r;
}

// ---- squares and cubes ---------------------------------------------------------------

Hyperbox enhanced_square_to_cube(const EnhancedSquare& sq) {
    Hyperbox cube(kModeU, {1, 1, 1});
    const IotaPtr* cells[2][2] = {{&sq.A, &sq.C}, {&sq.B, &sq.D}};  // [x][y]
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) cube.set_cell({x, y, z}, (*cells[x][y])->base);
    for (int z = 0; z < 2; ++z) {
        cube.set_arrow({0, 0, z}, {1, 0, z}, sq.I.F.matrix());
        cube.set_arrow({0, 1, z}, {1, 1, z}, sq.F.F.matrix());
        cube.set_arrow({0, 0, z}, {0, 1, z}, sq.G.F.matrix());
        cube.set_arrow({1, 0, z}, {1, 1, z}, sq.H.F.matrix());
        cube.set_arrow({0, 0, z}, {1, 1, z}, sq.J.matrix());
    }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const auto& ic = **cells[x][y];
            cube.set_arrow({x, y, 0}, {x, y, 1}, ic.iota.matrix() + Matrix::identity(kModeU, ic.base->size()));
        }
    cube.set_arrow({0, 0, 0}, {1, 0, 1}, sq.I.h.matrix());
    cube.set_arrow({0, 0, 0}, {0, 1, 1}, sq.G.h.matrix());
    cube.set_arrow({1, 0, 0}, {1, 1, 1}, sq.H.h.matrix());
    cube.set_arrow({0, 1, 0}, {1, 1, 1}, sq.F.h.matrix());
    cube.set_arrow({0, 0, 0}, {1, 1, 1}, sq.j.matrix());
    return cube;
}

SquareReport check_enhanced_square(const EnhancedSquare& sq) {
    SquareReport r;
    const EnhancedMorphism* edges[4] = {&sq.F, &sq.G, &sq.H, &sq.I};
    for (int i = 0; i < 4; ++i) r.edges_enhanced[i] = is_enhanced_chain_map(*edges[i]);
    auto lhs = compose(sq.F.F, sq.G.F) + compose(sq.H.F, sq.I.F);
    r.diagonal_relation = lhs == commutator_with_d(sq.J);
    // The length-three relation, with the identity contributions of 1 + iota cancelling in pairs.
    auto rel = compose(sq.F.F, sq.G.h) + compose(sq.F.h, sq.G.F) + compose(sq.H.F, sq.I.h) + compose(sq.H.h, sq.I.F) +
               compose(sq.D->iota, sq.J) + compose(sq.J, sq.A->iota) + commutator_with_d(sq.j);
    r.top_relation = rel.is_zero();
    auto rep = validate_hyperbox(enhanced_square_to_cube(sq));
    r.cube_valid = rep.ok;
    r.failures = rep.failures;
    bool conditions = r.edges_enhanced[0] && r.edges_enhanced[1] && r.edges_enhanced[2] && r.edges_enhanced[3] &&
                      r.diagonal_relation && r.top_relation;
    r.equivalent = conditions == r.cube_valid;
    return r;
}

EnhancedMorphism square_to_enhanced(const Hyperbox& sq, int q_axis, const Grading& degree) {
    if (sq.dim() != 2 || sq.size() != std::vector<int>{1, 1} || (q_axis != 0 && q_axis != 1))
        throw ComplexError("square_to_enhanced expects a (1,1) hyperbox");
    int f_axis = 1 - q_axis;
    auto pt = [&](int f, int q) {
        Point p(2);
        p[f_axis] = f;
        p[q_axis] = q;
        return p;
    };
    auto iota_at = [&](int f) {
        auto base = sq.cell(pt(f, 0));
        const Matrix* v = sq.arrow(pt(f, 0), pt(f, 1));
        Matrix iota = Matrix::identity(kModeU, base->size());
        if (v) iota += *v;
        return std::make_shared<const IotaComplex>(IotaComplex{base, ChainMap(base, base, iota, Grading::zero(kModeU))});
    };
    auto src = iota_at(0), tgt = iota_at(1);
    auto mat = [&](const Matrix* m) { return m ? *m : Matrix(kModeU, tgt->base->size(), src->base->size()); };
    ChainMap F(src->base, tgt->base, mat(sq.arrow(pt(0, 0), pt(1, 0))), degree);
    ChainMap h(src->base, tgt->base, mat(sq.arrow(pt(0, 0), pt(1, 1))), plus_one(degree));
    return make_enhanced(src, tgt, std::move(F), std::move(h));
}

}  // namespace ihf
