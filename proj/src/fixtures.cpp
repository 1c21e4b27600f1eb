#include "ihf/fixtures.hpp"

namespace ihf::fixtures {

namespace {

Grading uv(std::int64_t gu, std::int64_t gv) { return Grading::integral({gu, gv}); }

ChainMap skew_map(const ComplexPtr& c, std::initializer_list<std::tuple<const char*, const char*, const char*>> entries) {
    Matrix m(c->mode(), c->size(), c->size());
    for (const auto& [from, to, coeff] : entries) m.add(c->require(to), c->require(from), parse_coefficient(coeff, c->mode()));
    return ChainMap(c, c, std::move(m), Grading::zero(c->mode()), Equivariance::skew);
}

}  // namespace

KnotComplex unknot() {
    ComplexBuilder b(kModeUV);
    b.add_generator("x", uv(0, 0));
    auto c = b.build();
    return {c, skew_map(c, {{"x", "x", "1"}}), std::nullopt};
}

KnotComplex trefoil() {
    ComplexBuilder b(kModeUV);
    b.add_generator("a", uv(0, -2));
    b.add_generator("b", uv(-1, -1));
    b.add_generator("c", uv(-2, 0));
    b.add_arrow("b", "a", "u");
    b.add_arrow("b", "c", "v");
    auto c = b.build();
    return {c, skew_map(c, {{"a", "c", "1"}, {"b", "b", "1"}, {"c", "a", "1"}}), std::nullopt};
}

KnotComplex figure_eight() {
    ComplexBuilder b(kModeUV);
    b.add_generator("a", uv(0, 0));
    b.add_generator("b", uv(1, -1));
    b.add_generator("c", uv(-1, 1));
    b.add_generator("d", uv(0, 0));
    b.add_generator("e", uv(0, 0));
    b.add_arrow("a", "b", "u");
    b.add_arrow("a", "c", "v");
    b.add_arrow("b", "d", "v");
    b.add_arrow("c", "d", "u");
    auto c = b.build();
    return {c,
            skew_map(c, {{"a", "a", "1"}, {"a", "e", "1"}, {"b", "c", "1"}, {"c", "b", "1"}, {"d", "d", "1"},
                         {"e", "e", "1"}, {"e", "d", "1"}}),
            std::nullopt};
}

namespace {

// Moves a single-component coefficient into component `comp` of a link ring.
Coefficient to_component(const Coefficient& c, Mode link, int comp) {
    Coefficient out(link);
    for (const auto& m : c.terms()) {
        Monomial r;
        r.exp[2 * comp] = m.exp[0];
        r.exp[2 * comp + 1] = m.exp[1];
        out.toggle(r);
    }
    return out;
}

}  // namespace

KnotComplex trefoil_figure_eight_link() {
    auto t = trefoil(), e = figure_eight();
    Mode L = mode_link(2);
    const auto& T = *t.base;
    const auto& E = *e.base;
    int nt = T.size(), ne = E.size();
    std::vector<Generator> gens;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ne; ++j) {
            const auto& gt = T.grading(i).twice;
            const auto& ge = E.grading(j).twice;
            Grading g({gt[0] + ge[0], gt[1] + ge[1], (gt[0] - gt[1]) / 2, (ge[0] - ge[1]) / 2});
            gens.push_back({T.generator(i).name + E.generator(j).name, g});
        }
    auto idx = [&](int i, int j) { return i * ne + j; };
    Matrix d(L, nt * ne, nt * ne);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ne; ++j) {
            for (const auto& [y, k] : T.differential().column(i)) d.add(idx(y, j), idx(i, j), to_component(k, L, 0));
            for (const auto& [y, k] : E.differential().column(j)) d.add(idx(i, y), idx(i, j), to_component(k, L, 1));
        }
    auto c = std::make_shared<const FreeComplex>(L, std::move(gens), std::move(d));
    Matrix iota(L, nt * ne, nt * ne);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < ne; ++j)
            for (const auto& [y1, k1] : t.iota_k.matrix().column(i))
                for (const auto& [y2, k2] : e.iota_k.matrix().column(j))
                    iota.add(idx(y1, y2), idx(i, j), to_component(k1, L, 0) * to_component(k2, L, 1));
    return {c, ChainMap(c, c, std::move(iota), Grading::zero(L), Equivariance::skew), std::nullopt};
}

ComplexPtr hopf_like_link() {
    ComplexBuilder b(mode_link(2));
    b.add_generator("a", Grading::from_halves({0, 0, 0, 0}));
    b.add_generator("b", Grading::from_halves({2, -2, 2, 0}));
    b.add_generator("c", Grading::from_halves({-2, 2, 0, -2}));
    b.add_generator("d", Grading::from_halves({0, 0, 2, -2}));
    b.add_arrow("a", "b", "u1");
    b.add_arrow("a", "c", "v2");
    b.add_arrow("b", "d", "v2");
    b.add_arrow("c", "d", "u1");
    return b.build();
}

IotaComplex s3() {
    ComplexBuilder b(kModeU);
    b.add_generator("x", Grading::integral({0}));
    auto c = b.build();
    return {c, ChainMap::identity(c)};
}

IotaComplex s1xs2() {
    ComplexBuilder b(kModeU);
    b.add_generator("theta+", Grading::integral({0}));
    b.add_generator("theta-", Grading::integral({-1}));
    auto c = b.build();
    return {c, ChainMap::identity(c)};
}

namespace {

Hyperbox half(bool first) {
    auto S3 = s3().base;
    auto S1S2 = s1xs2().base;
    auto down = Grading::integral({-1});
    auto src = first ? S3 : S1S2;
    auto tgt = first ? S1S2 : S3;
    Hyperbox h(kModeU, {1, 1});
    h.set_cell({0, 0}, src);
    h.set_cell({1, 0}, tgt);
    h.set_cell({0, 1}, shifted(src, down));
    h.set_cell({1, 1}, shifted(tgt, down));
    Matrix F(kModeU, tgt->size(), src->size());
    Matrix diag(kModeU, tgt->size(), src->size());
    auto one = Coefficient::one(kModeU);
    if (first) {
        F.add(S1S2->require("theta-"), 0, one);
        diag.add(S1S2->require("theta+"), 0, one);
    } else {
        F.add(0, S1S2->require("theta+"), one);
    }
    h.set_arrow({0, 0}, {1, 0}, F);
    h.set_arrow({0, 1}, {1, 1}, F);
    // Vertical arrows 1 + iota vanish since iota = id on both ends.
    h.set_arrow({0, 0}, {1, 1}, diag);
    return h;
}

}  // namespace

Hyperbox s2xs2_first_half() { return half(true); }
Hyperbox s2xs2_second_half() { return half(false); }

}  // namespace ihf::fixtures
