#include "ihf/surgery.hpp"

#include <algorithm>
#include <random>

#include "ihf/involutive.hpp"
#include "ihf/solver.hpp"

namespace ihf {

namespace {

std::int64_t max_abs_alexander(const KnotComplex& k) {
    std::int64_t m = 0;
    for (auto a : alexander_twice_all(*k.base)) m = std::max<std::int64_t>(m, std::abs(a) / 2);
    return m;
}

ChainMap retarget(const ChainMap& f, const ComplexPtr& src, const ComplexPtr& tgt, Grading degree) {
    return ChainMap(src, tgt, f.matrix(), std::move(degree), f.equivariance());
}

}  // namespace

FlipResult build_flip(const KnotComplex& k, std::uint64_t seed) {
    if (k.base->mode() != kModeUV) throw SurgeryError("surgery needs a knot complex over F[U,V]");
    auto bt = extract_flagged(*k.base, FlagKind::Btilde, 0);
    auto b = extract_flagged(*k.base, FlagKind::B, 0);
    if (k.flip) {
        auto f = retarget(*k.flip, bt.complex, b.complex, k.flip->degree());
        if (!same_complex(k.flip->source(), bt.complex) || !same_complex(k.flip->target(), b.complex))
            throw SurgeryError("supplied flip map does not go from B~_0 to B_0");
        auto mr = validate_chain_map(f);
        if (!mr.ok()) throw SurgeryError("supplied flip map is not a chain map: " + mr.issues.front());
        if (!find_homotopy_inverse(f)) throw SurgeryError("supplied flip map is not a homotopy equivalence");
        return {f, true, 1};
    }
    auto hb = homology(b.complex), ht = homology(bt.complex);
    if (hb.towers.size() != 1 || ht.towers.size() != 1)
        throw SurgeryError("flip search: B_0 and B~_0 must each have exactly one tower");
    Grading deg = hb.towers[0] - ht.towers[0];
    auto basis = chain_map_space(bt.complex, b.complex, deg);
    int tried = 0;
    for (const auto& f : basis) {
        ++tried;
        if (find_homotopy_inverse(f)) return {f, false, tried};
    }
    std::mt19937_64 rng(seed);
    auto zero = ChainMap::zero(bt.complex, b.complex, deg);
    for (int attempt = 0; attempt < 256 && basis.size() > 1; ++attempt) {
        auto f = random_combination(basis, zero, rng);
        ++tried;
        if (!f.is_zero() && find_homotopy_inverse(f)) return {f, false, tried};
    }
    throw SurgeryError("flip search: no homotopy equivalence B~_0 -> B_0 found");
}

int default_bound(const KnotComplex& k, int framing) {
    return static_cast<int>(max_abs_alexander(k)) + std::abs(framing) + 1;
}

int SurgeryCone::spin_class(int s) const {
    int M = classes();
    return ((s % M) + M) % M;
}

const ConePiece* SurgeryCone::piece(FlagKind kind, int s) const {
    for (const auto& p : pieces)
        if (p.kind == kind && p.s == s) return &p;
    return nullptr;
}

int SurgeryCone::generator_class(int gen) const {
    for (const auto& p : pieces)
        if (gen >= p.offset && gen < p.offset + p.count) return spin_class(p.s);
    throw SurgeryError("generator outside the cone");
}

ComplexPtr restrict_complex(const ComplexPtr& c, const std::vector<int>& keep) {
    std::vector<int> where(c->size(), -1);
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        where[keep[i]] = static_cast<int>(i);
        gens.push_back(c->generator(keep[i]));
    }
    int n = static_cast<int>(keep.size());
    Matrix d(c->mode(), n, n);
    for (int i = 0; i < n; ++i)
        for (const auto& [y, k] : c->differential().column(keep[i]))
            if (where[y] >= 0) d.add(where[y], i, k);
    return std::make_shared<const FreeComplex>(c->mode(), std::move(gens), std::move(d));
}

namespace {

struct ConeBuilder {
    const KnotComplex& k;
    int m;
    int b;
    std::int64_t deg0;  // degree of the flip (doubled)
    std::map<int, std::int64_t> cB;

    // Doubled grading shift of B_t: c_B(t + m) = c_B(t) - deg(h_t), with deg(h_t) = deg0 - 4t.
    std::int64_t shift_B(int t) {
        int M = std::abs(m);
        int r = ((t % M) + M) % M;
        if (!cB.count(r)) cB[r] = 0;
        int cur = r;
        int step = t > r ? (m > 0 ? m : -m) : -(m > 0 ? m : -m);  // move by ±|m| towards t
        while (cur != t) {
            int nxt = cur + step;
            if (!cB.count(nxt)) {
                if (nxt == cur + m)
                    cB[nxt] = cB[cur] - deg0 + 4 * static_cast<std::int64_t>(cur);
                else  // nxt = cur - m
                    cB[nxt] = cB[cur] + deg0 - 4 * static_cast<std::int64_t>(nxt);
            }
            cur = nxt;
        }
        return cB[t];
    }
    std::int64_t shift_A(int s) { return shift_B(s) + 2; }
};

}  // namespace

static SurgeryCone assemble_cone(KnotPtr k, int m, const SurgeryOptions& opt) {
    if (m == 0) throw SurgeryError("framing 0 is not supported");
    if (k->base->mode() != kModeUV) throw SurgeryError("surgery needs a knot complex over F[U,V]");
    auto maxA = max_abs_alexander(*k);
    int b = opt.bound ? *opt.bound : static_cast<int>(maxA) + std::abs(m) + 1;
    if (b < maxA + 1 || 2 * b + 1 < std::abs(m))
        throw SurgeryError("truncation bound b = " + std::to_string(b) + " too small (need b >= " + std::to_string(maxA + 1) +
                           " and 2b + 1 >= |m|)");
    SurgeryCone x;
    x.knot = k;
    x.framing = m;
    x.bound = b;
    x.flip = build_flip(*k, opt.seed);
    x.flip_degree_twice = x.flip->map.degree().twice[0];
    ConeBuilder cb{*k, m, b, x.flip_degree_twice, {}};

    const auto& K = *k->base;
    int n = K.size();
    std::vector<Generator> gens;
    auto add_piece = [&](FlagKind kind, int s) {
        auto fl = extract_flagged(K, kind, s);
        std::int64_t shift = kind == FlagKind::A ? cb.shift_A(s) : cb.shift_B(s);
        x.pieces.push_back({kind, s, static_cast<int>(gens.size()), n, shift});
        for (const auto& g : fl.complex->generators())
            gens.push_back({flag_name(kind) + "[" + std::to_string(s) + "]:" + g.name,
                            g.grading + Grading::from_halves({shift})});
        return fl;
    };
    std::map<int, FlaggedSubcomplex> A;
    for (int s = -b; s <= b; ++s) A.emplace(s, add_piece(FlagKind::A, s));
    FlaggedSubcomplex Bf = extract_flagged(K, FlagKind::B, 0);
    for (int t = -b + m; t <= b; ++t) add_piece(FlagKind::B, t);

    int N = static_cast<int>(gens.size());
    Matrix d(kModeU, N, N);
    auto place = [&](const ConePiece& from, const ConePiece& to, const Matrix& mat) {
        for (int c = 0; c < mat.cols(); ++c)
            for (const auto& [r, v] : mat.column(c)) d.add(to.offset + r, from.offset + c, v);
    };
    for (const auto& p : x.pieces) {
        if (p.kind == FlagKind::A) {
            const auto& fa = A.at(p.s);
            place(p, p, fa.complex->differential());
            if (const auto* q = x.piece(FlagKind::B, p.s)) place(p, *q, slice_inclusion(fa, Bf).matrix());
            if (const auto* q = x.piece(FlagKind::B, p.s + m)) {
                auto bt = extract_flagged(K, FlagKind::Btilde, p.s);
                place(p, *q, compose(x.flip->map.matrix(), slice_inclusion(fa, bt).matrix()));
            }
        } else {
            place(p, p, Bf.complex->differential());
        }
    }
    x.plain = std::make_shared<const FreeComplex>(kModeU, std::move(gens), std::move(d));
    x.total = x.plain;
    return x;
}

SurgeryCone build_cone(KnotPtr k, int n, const SurgeryOptions& opt) { return assemble_cone(std::move(k), n, opt); }

SurgeryCone build_involutive_cone(KnotPtr k, int n, const SurgeryOptions& opt) {
    if (n == 0) throw SurgeryError("framing 0 is not supported");
    int m = 2 * n;
    auto x = assemble_cone(k, m, opt);
    x.involutive = true;
    if (x.flip_degree_twice != 0)
        throw SurgeryError("involutive cone needs B~_0 and B_0 with matching tower gradings");
    const auto& K = *k->base;
    const auto& F = x.flip->map;
    auto Bf = extract_flagged(K, FlagKind::B, 0);
    int b = x.bound;
    auto flip_at = [&](const FlaggedSubcomplex& bt) {
        // F_s: B~_s -> B, degree -4s (doubled) relative to s = 0.
        return ChainMap(bt.complex, Bf.complex, F.matrix(), Grading::from_halves({x.flip_degree_twice - 4 * bt.s}));
    };
    // iota_B: B_t -> B_{m-t} is F ∘ U^t iota_K.
    for (int t = -b + m; t <= b; ++t) {
        auto bt = extract_flagged(K, FlagKind::Btilde, -t);
        x.iota_B.emplace(t, compose(flip_at(bt), slice_map(Bf, bt, k->iota_k, t)).matrix());
    }
    // H_s: B~_s -> B_{-s} with ∂H + H∂ = U^s iota_K + F U^{s+m} iota_K F.
    for (int s = -b; s <= b; ++s) {
        if (!x.piece(FlagKind::B, -s)) continue;
        auto bts = extract_flagged(K, FlagKind::Btilde, s);
        auto btm = extract_flagged(K, FlagKind::Btilde, -s - m);
        auto f = slice_map(bts, Bf, k->iota_k, s);
        auto g = compose(flip_at(btm), compose(slice_map(Bf, btm, k->iota_k, s + m), flip_at(bts)));
        auto h = homotopy_solve(f, g);
        if (!h) throw SurgeryError("no homotopy H_" + std::to_string(s) + " exists");
        x.H.emplace(s, *h);
    }
    int N = x.plain->size();
    Matrix iota(kModeU, N, N);
    auto place = [&](const ConePiece& from, const ConePiece& to, const Matrix& mat) {
        for (int c = 0; c < mat.cols(); ++c)
            for (const auto& [r, v] : mat.column(c)) iota.add(to.offset + r, from.offset + c, v);
    };
    for (const auto& p : x.pieces) {
        if (p.kind == FlagKind::A) {
            auto as = extract_flagged(K, FlagKind::A, p.s);
            auto am = extract_flagged(K, FlagKind::A, -p.s);
            place(p, *x.piece(FlagKind::A, -p.s), slice_map(as, am, k->iota_k, p.s).matrix());
            if (auto it = x.H.find(p.s); it != x.H.end()) {
                auto bt = extract_flagged(K, FlagKind::Btilde, p.s);
                place(p, *x.piece(FlagKind::B, -p.s), compose(it->second.matrix(), slice_inclusion(as, bt).matrix()));
            }
        } else {
            place(p, *x.piece(FlagKind::B, m - p.s), x.iota_B.at(p.s));
        }
    }
    x.iota = ChainMap(x.plain, x.plain, std::move(iota), Grading::zero(kModeU));
    x.total = build_cfi(IotaComplex{x.plain, *x.iota}, false);
    return x;
}

ConeReport analyze_cone(const SurgeryCone& x) {
    ConeReport r;
    auto cr = validate_complex(*x.total);
    r.d_squared_zero = cr.d_squared_zero;
    r.homogeneous = cr.homogeneous;
    int M = x.classes();
    for (int c = 0; c < M; ++c) {
        std::vector<int> keep;
        for (int g = 0; g < x.plain->size(); ++g)
            if (x.generator_class(g) == c) keep.push_back(g);
        bool self = (2 * c) % M == 0;
        r.classes.push_back({c, self, homology(restrict_complex(x.plain, keep))});
    }
    if (!x.involutive) return r;
    auto mr = validate_chain_map(*x.iota);
    r.iota_chain_map = mr.ok();
    // The length-two relation of the involutive cone: (v + h) ∘ (1 + iota) verticals against
    // (1 + iota) ∘ (v + h), corrected by the H-terms; equivalent to iota_X commuting with ∂.
    r.length_two_relation = commutator_with_d(*x.iota).is_zero();
    r.iota_squared_homotopic = homotopy_solve(compose(*x.iota, *x.iota), ChainMap::identity(x.plain)).has_value();
    std::vector<int> keep;
    for (int g = 0; g < x.plain->size(); ++g)
        if ((2 * x.generator_class(g)) % M == 0) keep.push_back(g);
    auto sector = restrict_complex(x.total, keep);
    auto u = underlying_u_complex(sector);
    int ns = sector->size();
    std::vector<int> lvl0(ns), lvl1(ns);
    for (int i = 0; i < ns; ++i) {
        lvl0[i] = i;
        lvl1[i] = ns + i;
    }
    r.self_conjugate_towers_level0 = static_cast<int>(homology(restrict_complex(u, lvl0)).towers.size());
    r.self_conjugate_towers_level1 = static_cast<int>(homology(restrict_complex(u, lvl1)).towers.size());
    r.self_conjugate_towers_total = static_cast<int>(homology(u).towers.size());
    return r;
}

CobordismMap cobordism_map_J(const SurgeryCone& x) {
    if (!x.involutive) throw SurgeryError("J needs the involutive cone");
    int n = x.framing / 2;
    const auto* an = x.piece(FlagKind::A, n);
    const auto* amn = x.piece(FlagKind::A, -n);
    const auto* bn = x.piece(FlagKind::B, n);
    if (!an || !amn || !bn || !x.H.count(-n)) throw SurgeryError("n = " + std::to_string(n) + " lies outside the truncation");
    const auto& K = *x.knot->base;
    auto Bf = extract_flagged(K, FlagKind::B, 0);
    std::vector<Generator> gens;
    for (const auto& g : Bf.complex->generators()) gens.push_back({"B[" + std::to_string(n) + "]:" + g.name, g.grading});
    auto Bn = std::make_shared<const FreeComplex>(kModeU, std::move(gens), Bf.complex->differential());
    ChainMap iota_bn(Bn, Bn, x.iota_B.at(n), Grading::zero(kModeU));
    auto bi = build_cfi(IotaComplex{Bn, iota_bn}, false);

    Matrix J(kModeUQ, Bn->size(), x.total->size());
    auto place = [&](const ConePiece& from, const Matrix& mat, bool q) {
        auto lifted = lift_to_uq(mat, q);
        for (int c = 0; c < lifted.cols(); ++c)
            for (const auto& [r, v] : lifted.column(c)) J.add(r, from.offset + c, v);
    };
    auto as = extract_flagged(K, FlagKind::A, n);
    place(*an, slice_inclusion(as, Bf).matrix(), false);
    auto am = extract_flagged(K, FlagKind::A, -n);
    auto btm = extract_flagged(K, FlagKind::Btilde, -n);
    place(*amn, compose(x.H.at(-n).matrix(), slice_inclusion(am, btm).matrix()), true);
    place(*bn, x.iota_B.at(n), true);
    Grading deg = Grading::from_halves({-an->shift_twice});
    return {bi, ChainMap(x.total, bi, std::move(J), deg)};
}

std::map<std::int64_t, int> image_profile(const ChainMap& f, int delta) {
    auto src = smith_reduce(f.source());
    auto tgt = smith_reduce(f.target());
    auto entries = induced_map(f, src, tgt);
    auto deg = f.degree().twice[0];
    auto limit = [&](const SmithDecomposition::Summand& s) { return s.order ? std::min(s.order, delta) : delta; };
    // basis elements (summand, j) of H/U^delta grouped by grading
    std::map<std::int64_t, std::vector<std::pair<int, int>>> src_basis, tgt_basis;
    for (int i = 0; i < static_cast<int>(src.summands.size()); ++i)
        for (int j = 0; j < limit(src.summands[i]); ++j)
            src_basis[src.summands[i].anchor.twice[0] - 4 * j].emplace_back(i, j);
    for (int i = 0; i < static_cast<int>(tgt.summands.size()); ++i)
        for (int j = 0; j < limit(tgt.summands[i]); ++j)
            tgt_basis[tgt.summands[i].anchor.twice[0] - 4 * j].emplace_back(i, j);
    std::map<std::int64_t, int> out;
    for (const auto& [g, elems] : src_basis) {
        const auto& targets = tgt_basis[g + deg];
        std::map<std::pair<int, int>, int> tindex;
        for (std::size_t t = 0; t < targets.size(); ++t) tindex[targets[t]] = static_cast<int>(t);
        F2System sys(static_cast<int>(elems.size()));
        for (std::size_t t = 0; t < targets.size(); ++t) sys.add_equation();
        for (std::size_t e = 0; e < elems.size(); ++e) {
            auto [i, j] = elems[e];
            for (const auto& en : entries) {
                if (en.col != i) continue;
                auto it = tindex.find({en.row, j + static_cast<int>(en.u_power)});
                if (it != tindex.end()) sys.set(it->second, static_cast<int>(e));
            }
        }
        out[g] = sys.rank();
    }
    return out;
}

}  // namespace ihf
