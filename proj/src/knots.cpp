#include "ihf/knots.hpp"

#include <algorithm>

#include "ihf/solver.hpp"

namespace ihf {

ChainMap link_square_target(const ComplexPtr& c) {
    Mode mode = c->mode();
    if (!mode.two_variable()) throw ComplexError("link_square_target needs a two-variable complex");
    auto out = ChainMap::identity(c);
    for (int i = 0; i < mode.components; ++i) {
        auto factor = ChainMap::identity(c) + compose(phi(c, i), psi(c, i));
        out = compose(factor, out);
    }
    return out;
}

IotaKReport validate_iota_k(const KnotComplex& k) {
    IotaKReport r;
    const auto& C = k.base;
    if (!C->mode().two_variable()) {
        r.two_variable = false;
        r.issues.push_back("iota_K needs a two-variable complex, got " + C->mode().name());
        return r;
    }
    auto cr = validate_complex(*C);
    if (!cr.ok()) {
        r.complex_ok = false;
        r.issues = cr.issues;
        return r;
    }
    const auto& iota = k.iota_k;
    if (!iota.skew()) {
        r.skew = false;
        r.issues.push_back("iota_K must be skew-equivariant");
    }
    if (!same_complex(iota.source(), C) || !same_complex(iota.target(), C)) {
        r.chain_map = false;
        r.issues.push_back("iota_K must be an endomorphism of the complex");
        return r;
    }
    if (iota.degree() != Grading::zero(C->mode())) {
        r.swaps_gradings = false;
        r.issues.push_back("iota_K must exchange the two Maslov gradings exactly (degree " + iota.degree().to_string() + ")");
    }
    auto mr = validate_chain_map(iota);
    if (!mr.homogeneous) r.swaps_gradings = false;
    if (!mr.commutes) r.chain_map = false;
    r.issues.insert(r.issues.end(), mr.issues.begin(), mr.issues.end());
    if (!r.ok()) {
        r.squared_homotopic = false;
        return r;
    }
    auto sq = compose(iota, iota);
    auto target = link_square_target(C);
    r.squared_exact = sq == target;
    r.homotopy = homotopy_solve(sq, target);
    if (!r.homotopy) {
        r.squared_homotopic = false;
        r.issues.push_back("iota_K^2 is not homotopic to the product of (id + Phi_i Psi_i)");
    }
    return r;
}

std::vector<std::int64_t> alexander_twice_all(const FreeComplex& c) {
    std::vector<std::int64_t> out;
    for (int i = 0; i < c.size(); ++i) out.push_back(alexander_twice(c.mode(), c.grading(i)));
    return out;
}

std::string flag_name(FlagKind kind) {
    switch (kind) {
        case FlagKind::A: return "A";
        case FlagKind::B: return "B";
        case FlagKind::Btilde: return "B~";
    }
    return "?";
}

FlaggedSubcomplex extract_flagged(const FreeComplex& knot, FlagKind kind, int s, std::string prefix) {
    if (knot.mode() != kModeUV) throw ComplexError("flagged subcomplexes need a knot complex over F[U,V]");
    FlaggedSubcomplex out{kind, s, {}, nullptr};
    std::vector<Generator> gens;
    for (int x = 0; x < knot.size(); ++x) {
        auto at = alexander_twice(knot.mode(), knot.grading(x));
        if (at % 2) throw ComplexError("generator '" + knot.generator(x).name + "' has a half-integral Alexander grading");
        std::int64_t A = at / 2, a = 0, b = 0;
        switch (kind) {
            case FlagKind::A:
                a = std::max<std::int64_t>(0, A - s);
                b = a - A;
                break;
            case FlagKind::B:
                a = 0;
                b = -A;
                break;
            case FlagKind::Btilde:
                a = A - s;
                b = -s;
                break;
        }
        out.offsets.emplace_back(a, b);
        gens.push_back({prefix + knot.generator(x).name, Grading::from_halves({knot.grading(x).twice[0] - 4 * a})});
    }
    Matrix d(kModeU, knot.size(), knot.size());
    for (int x = 0; x < knot.size(); ++x)
        for (const auto& [y, c] : knot.differential().column(x))
            for (const auto& m : c.terms()) {
                auto ea = out.offsets[x].first + m.exp[0] - out.offsets[y].first;
                auto eb = out.offsets[x].second + m.exp[1] - out.offsets[y].second;
                if (ea != eb || ea < 0)
                    throw ComplexError("flagged complex " + flag_name(kind) + "_" + std::to_string(s) +
                                       " is not closed under the differential at " + knot.generator(x).name);
                d.add(y, x, Monomial::u_power(static_cast<std::uint32_t>(ea)));
            }
    out.complex = std::make_shared<const FreeComplex>(kModeU, std::move(gens), std::move(d));
    return out;
}

ChainMap slice_map(const FlaggedSubcomplex& src, const FlaggedSubcomplex& tgt, const ChainMap& uv_map,
                   std::int64_t prefactor) {
    if (uv_map.mode() != kModeUV) throw ComplexError("slice_map needs a map of knot complexes");
    int ns = src.complex->size(), nt = tgt.complex->size();
    if (uv_map.source()->size() != ns || uv_map.target()->size() != nt)
        throw ComplexError("slice_map: flagged complexes do not match the map");
    Matrix out(kModeU, nt, ns);
    bool skew = uv_map.skew();
    for (int x = 0; x < ns; ++x) {
        auto [ax, bx] = src.offsets[x];
        if (skew) std::swap(ax, bx);
        for (const auto& [y, c] : uv_map.matrix().column(x))
            for (const auto& m : c.terms()) {
                auto ea = ax + m.exp[0] + prefactor - tgt.offsets[y].first;
                auto eb = bx + m.exp[1] + prefactor - tgt.offsets[y].second;
                if (ea != eb || ea < 0)
                    throw ComplexError("induced map " + flag_name(src.kind) + "_" + std::to_string(src.s) + " -> " +
                                       flag_name(tgt.kind) + "_" + std::to_string(tgt.s) + " is not defined at " +
                                       uv_map.source()->generator(x).name);
                out.add(y, x, Monomial::u_power(static_cast<std::uint32_t>(ea)));
            }
    }
    Grading deg = Grading::from_halves({uv_map.degree().twice[0] - 4 * prefactor});
    ChainMap f(src.complex, tgt.complex, std::move(out), deg);
    auto issues = homogeneity_issues(f);
    if (!issues.empty()) throw ComplexError("slice_map: " + issues.front());
    return f;
}

ChainMap slice_inclusion(const FlaggedSubcomplex& src, const FlaggedSubcomplex& tgt) {
    int n = src.complex->size();
    Matrix out(kModeU, n, n);
    for (int x = 0; x < n; ++x) {
        auto ea = src.offsets[x].first - tgt.offsets[x].first;
        auto eb = src.offsets[x].second - tgt.offsets[x].second;
        if (ea != eb || ea < 0)
            throw ComplexError("no inclusion " + flag_name(src.kind) + "_" + std::to_string(src.s) + " -> " +
                               flag_name(tgt.kind) + "_" + std::to_string(tgt.s));
        out.add(x, x, Monomial::u_power(static_cast<std::uint32_t>(ea)));
    }
    ChainMap f(src.complex, tgt.complex, std::move(out), Grading::zero(kModeU));
    auto issues = homogeneity_issues(f);
    if (!issues.empty()) throw ComplexError("slice_inclusion: " + issues.front());
    return f;
}

IotaComplex collapse_to_u(const KnotComplex& k) {
    auto A0 = extract_flagged(*k.base, FlagKind::A, 0);
    auto iota = slice_map(A0, A0, k.iota_k, 0);
    return IotaComplex{A0.complex, iota};
}

}  // namespace ihf
