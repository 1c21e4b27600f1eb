#include "ihf/homology.hpp"

#include <algorithm>
#include <numeric>

namespace ihf {

std::string GradedHomology::to_string() const {
    std::string s;
    for (const auto& t : towers) s += (s.empty() ? "" : " + ") + std::string("F[U]") + t.to_string();
    for (const auto& t : torsion)
        s += (s.empty() ? "" : " + ") + std::string("F[U]/U^") + std::to_string(t.order) + t.anchor.to_string();
    return s.empty() ? "0" : s;
}

namespace {

void require_homogeneous_u(const FreeComplex& c) {
    if (c.mode() != kModeU) throw ComplexError("Smith reduction needs an F[U] complex, got " + c.mode().name());
    auto self = std::make_shared<const FreeComplex>(c);
    auto issues = homogeneity_issues(ChainMap::differential(self));
    if (!issues.empty()) throw ComplexError("non-homogeneous differential: " + issues.front());
}

// U-exponent implied by an entry from grading `from` (after degree) to grading `to`.
std::int64_t implied_power(std::int64_t to, std::int64_t from) {
    auto diff = to - from;
    if (diff % 4) throw ComplexError("internal: grading parity mismatch");
    return diff / 4;
}

}  // namespace

SmithDecomposition smith_reduce(const ComplexPtr& cp, PivotOrder order) {
    const auto& c = *cp;
    require_homogeneous_u(c);
    int n = c.size();
    std::vector<std::int64_t> gr(n);
    for (int i = 0; i < n; ++i) gr[i] = c.grading(i).twice[0];

    // D rows and columns: rows[y] has bit x iff (d x) contains a multiple of y.
    std::vector<BitVec> rows(n, BitVec(n)), cols(n, BitVec(n));
    for (int x = 0; x < n; ++x)
        for (const auto& [y, k] : c.differential().column(x)) {
            rows[y].set(x);
            cols[x].set(y);
        }
    SmithDecomposition out;
    out.complex = cp;
    out.basis.assign(n, BitVec(n));
    out.coords.assign(n, BitVec(n));
    for (int i = 0; i < n; ++i) {
        out.basis[i].set(i);
        out.coords[i].set(i);
    }
    auto toggle = [&](int r, int col) {
        rows[r].flip(col);
        cols[col].flip(r);
    };
    // Replace basis element b by b + U^e a (gr(a) >= gr(b)); conjugates D by an involution.
    auto change = [&](int a, int b) {
        std::vector<int> rs;
        cols[a].for_each([&](int r) { rs.push_back(r); });
        for (int r : rs) toggle(r, b);
        std::vector<int> cs;
        rows[b].for_each([&](int cc) { cs.push_back(cc); });
        for (int cc : cs) toggle(a, cc);
        out.basis[b] ^= out.basis[a];
        out.coords[a] ^= out.coords[b];
    };

    std::vector<char> alive(n, 1);
    while (true) {
        int bx = -1, by = -1;
        std::int64_t bk = 0;
        // Scan for the entry with minimal U-power; ties broken by pivot order.
        for (int x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            for (int y = cols[x].next(0); y >= 0; y = cols[x].next(y + 1)) {
                auto k = implied_power(gr[y] - gr[x] + 2, 0);
                bool better = bx < 0 || k < bk;
                if (!better && k == bk) {
                    better = order == PivotOrder::forward ? std::pair(x, y) < std::pair(bx, by)
                                                          : std::pair(x, y) > std::pair(bx, by);
                }
                if (better) {
                    bx = x;
                    by = y;
                    bk = k;
                }
            }
        }
        if (bx < 0) break;
        std::vector<int> others;
        rows[by].for_each([&](int x2) {
            if (x2 != bx) others.push_back(x2);
        });
        for (int x2 : others) change(bx, x2);
        others.clear();
        cols[bx].for_each([&](int z) {
            if (z != by) others.push_back(z);
        });
        for (int z : others) change(z, by);
        if (rows[bx].any() || cols[by].any() || rows[by].count() != 1 || cols[bx].count() != 1)
            throw ComplexError("Smith reduction: d^2 != 0");
        toggle(by, bx);
        alive[bx] = alive[by] = 0;
        // Unit pivots cancel an acyclic pair and leave no summand.
        if (bk > 0) out.summands.push_back({by, bx, static_cast<int>(bk), c.grading(by)});
    }
    for (int i = 0; i < n; ++i)
        if (alive[i]) out.summands.push_back({i, -1, 0, c.grading(i)});
    std::stable_sort(out.summands.begin(), out.summands.end(), [](const auto& a, const auto& b) {
        bool fa = a.order == 0, fb = b.order == 0;
        if (fa != fb) return fa;
        if (a.anchor != b.anchor) return a.anchor < b.anchor;
        if (a.order != b.order) return a.order < b.order;
        return a.generator < b.generator;
    });
    return out;
}

GradedHomology SmithDecomposition::homology() const {
    GradedHomology h;
    for (const auto& s : summands) {
        if (s.order == 0)
            h.towers.push_back(s.anchor);
        else
            h.torsion.push_back({s.anchor, s.order});
    }
    return h;
}

ComplexPtr underlying_u_complex(const ComplexPtr& uq) {
    if (uq->mode() != kModeUQ) throw ComplexError("underlying_u_complex expects a UQ complex");
    int n = uq->size();
    std::vector<Generator> gens;
    for (const auto& g : uq->generators()) gens.push_back({g.name, g.grading});
    for (const auto& g : uq->generators()) gens.push_back({"Q*" + g.name, g.grading + Grading::from_halves({-2})});
    Matrix d(kModeU, 2 * n, 2 * n);
    for (int x = 0; x < n; ++x)
        for (const auto& [y, k] : uq->differential().column(x))
            for (const auto& m : k.terms()) {
                auto um = Monomial::u_power(m.exp[0]);
                if (m.q) {
                    d.add(n + y, x, um);
                } else {
                    d.add(y, x, um);
                    d.add(n + y, n + x, um);
                }
            }
    return std::make_shared<const FreeComplex>(kModeU, std::move(gens), std::move(d));
}

ChainMap underlying_u_map(const ChainMap& f, const ComplexPtr& src_u, const ComplexPtr& tgt_u) {
    if (f.mode() != kModeUQ || f.skew()) throw ComplexError("underlying_u_map expects a plain UQ map");
    int ns = f.source()->size(), nt = f.target()->size();
    Matrix m(kModeU, 2 * nt, 2 * ns);
    for (int x = 0; x < ns; ++x)
        for (const auto& [y, k] : f.matrix().column(x))
            for (const auto& t : k.terms()) {
                auto um = Monomial::u_power(t.exp[0]);
                if (t.q) {
                    m.add(nt + y, x, um);
                } else {
                    m.add(y, x, um);
                    m.add(nt + y, ns + x, um);
                }
            }
    return ChainMap(src_u, tgt_u, std::move(m), f.degree());
}

ChainMap q_multiplication(const ComplexPtr& u) {
    int n = u->size() / 2;
    Matrix m(kModeU, 2 * n, 2 * n);
    for (int x = 0; x < n; ++x) m.add(n + x, x, Coefficient::one(kModeU));
    return ChainMap(u, u, std::move(m), Grading::from_halves({-2}));
}

std::vector<HomologyEntry> induced_map(const ChainMap& f, const SmithDecomposition& src,
                                       const SmithDecomposition& tgt) {
    if (f.skew() || f.mode() != kModeU) throw ComplexError("induced_map expects a plain F[U] map");
    if (!same_complex(f.source(), src.complex) || !same_complex(f.target(), tgt.complex))
        throw ComplexError("induced_map: decomposition does not match the map");
    auto issues = homogeneity_issues(f);
    if (!issues.empty()) throw ComplexError("induced_map: " + issues.front());
    const auto& S = *f.source();
    const auto& T = *f.target();
    auto deg = f.degree().twice[0];
    std::vector<HomologyEntry> out;
    for (int col = 0; col < static_cast<int>(src.summands.size()); ++col) {
        const auto& s = src.summands[col];
        auto rep_gr = S.grading(s.generator).twice[0];
        BitVec image(T.size());
        src.basis[s.generator].for_each([&](int j) {
            for (const auto& [y, k] : f.matrix().column(j)) {
                (void)k;
                image.flip(y);
            }
        });
        for (int row = 0; row < static_cast<int>(tgt.summands.size()); ++row) {
            const auto& t = tgt.summands[row];
            BitVec prod = tgt.coords[t.generator];
            int parity = 0;
            image.for_each([&](int y) { parity ^= prod.get(y) ? 1 : 0; });
            if (!parity) continue;
            auto e = implied_power(T.grading(t.generator).twice[0] - rep_gr - deg, 0);
            if (e < 0) throw ComplexError("induced_map: negative U-power");
            if (t.order && e >= t.order) continue;
            out.push_back({row, col, static_cast<std::uint32_t>(e)});
        }
    }
    return out;
}

GradedHomology homology(const ComplexPtr& c, PivotOrder order) {
    if (c->mode().two_variable()) throw ComplexError("homology of a two-variable complex: collapse or slice first");
    if (c->mode() == kModeU) return smith_reduce(c, order).homology();
    auto u = underlying_u_complex(c);
    auto dec = smith_reduce(u, order);
    auto h = dec.homology();
    h.q_action = induced_map(q_multiplication(u), dec, dec);
    return h;
}

std::map<std::int64_t, int> truncated_dimensions(const GradedHomology& h, int delta) {
    std::map<std::int64_t, int> out;
    for (const auto& t : h.towers)
        for (int j = 0; j < delta; ++j) ++out[t.twice[0] - 4 * j];
    for (const auto& s : h.torsion) {
        // y survives as U^j y for j < order; x = partner of grading gr(y) - 2 order + 1 survives
        // as U^j x once U^(j + order) y is truncated away.
        std::int64_t y = s.anchor.twice[0];
        std::int64_t x = y - 4 * s.order + 2;
        for (int j = 0; j < std::min(s.order, delta); ++j) ++out[y - 4 * j];
        for (int j = std::max(0, delta - s.order); j < delta; ++j) ++out[x - 4 * j];
    }
    return out;
}

}  // namespace ihf
