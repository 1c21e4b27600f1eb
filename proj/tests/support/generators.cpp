#include "generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ihf/homology.hpp"
#include "ihf/solver.hpp"

namespace ihf::gen {

std::uint64_t test_seed() {
    if (const char* s = std::getenv("IHF_TEST_SEED")) return std::stoull(s, nullptr, 0);
    return kTestSeed;
}

Grading maslov(std::int64_t doubled) { return Grading::from_halves({doubled}); }

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

ComplexPtr random_u_complex(Rng& rng, const ComplexShape& shape) {
    std::vector<std::int64_t> grad;
    std::vector<std::tuple<int, int, int>> arrows;  // x, y, k
    int towers = uniform(rng, shape.min_towers, shape.max_towers);
    if (shape.tower_at_zero) towers = 1;
    for (int t = 0; t < towers && static_cast<int>(grad.size()) < shape.max_generators; ++t)
        grad.push_back(shape.tower_at_zero ? 0 : uniform(rng, -shape.grading_span, shape.grading_span));
    int room = shape.max_generators - static_cast<int>(grad.size());
    int pairs = room >= 2 ? uniform(rng, 0, room / 2) : 0;
    for (int p = 0; p < pairs; ++p) {
        int k = uniform(rng, 0, shape.max_order);
        std::int64_t gy = uniform(rng, -shape.grading_span, shape.grading_span);
        int y = static_cast<int>(grad.size());
        grad.push_back(gy);
        grad.push_back(gy - 2 * k + 1);
        arrows.emplace_back(y + 1, y, k);
    }
    int n = static_cast<int>(grad.size());
    Matrix d(kModeU, n, n);
    for (auto [x, y, k] : arrows) d.add(y, x, Monomial::u_power(k));
    // Scramble: P = id + U^e E_{a,b} sends b to b + U^e a; P is its own inverse.
    int changes = 2 * n;
    for (int c = 0; c < changes && n > 1; ++c) {
        int a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
        if (a == b || grad[a] < grad[b] || (grad[a] - grad[b]) % 2) continue;
        auto e = static_cast<std::uint32_t>((grad[a] - grad[b]) / 2);
        Matrix P = Matrix::identity(kModeU, n);
        P.add(a, b, Monomial::u_power(e));
        d = compose(P, compose(d, P));
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);  // old index i goes to perm[i]
    std::vector<Generator> gens(n);
    for (int i = 0; i < n; ++i) gens[perm[i]] = {"g" + std::to_string(perm[i]), Grading::integral({grad[i]})};
    Matrix pd(kModeU, n, n);
    for (int c = 0; c < n; ++c)
        for (const auto& [r, v] : d.column(c)) pd.add(perm[r], perm[c], v);
    return std::make_shared<const FreeComplex>(kModeU, std::move(gens), std::move(pd));
}

ChainMap random_map(Rng& rng, const ComplexPtr& s, const ComplexPtr& t, const Grading& degree, double density,
                    Equivariance eq) {
    auto slots = enumerate_slots(*s, *t, degree, eq);
    BitVec v(static_cast<int>(slots.size()));
    for (int i = 0; i < v.size(); ++i)
        if (coin(rng, density)) v.set(i);
    return assemble(s, t, degree, eq, slots, v);
}

ChainMap random_chain_map(Rng& rng, const ComplexPtr& s, const ComplexPtr& t, const Grading& degree) {
    auto basis = chain_map_space(s, t, degree);
    return random_combination(basis, ChainMap::zero(s, t, degree), rng);
}

IotaComplex random_iota_complex(Rng& rng, int max_generators) {
    ComplexShape shape;
    shape.max_generators = max_generators;
    shape.min_towers = shape.max_towers = 1;
    shape.grading_span = 3;
    shape.max_order = 3;
    auto c = random_u_complex(rng, shape);
    auto K = random_map(rng, c, c, maslov(2), 0.4);
    auto iota = ChainMap::identity(c) + commutator_with_d(K);
    return {c, iota};
}

EnhancedMorphism random_enhanced(Rng& rng, const IotaPtr& s, const IotaPtr& t, const Grading& degree) {
    auto F = random_map(rng, s->base, t->base, degree, 0.5);
    auto h = random_map(rng, s->base, t->base, degree + maslov(2), 0.5);
    return make_enhanced(s, t, F, h);
}

namespace {

bool tower_iso(const ChainMap& f) {
    auto src = smith_reduce(f.source());
    auto tgt = smith_reduce(f.target());
    for (const auto& e : induced_map(f, src, tgt))
        if (src.summands[e.col].order == 0 && tgt.summands[e.row].order == 0 && e.u_power == 0) return true;
    return false;
}

std::optional<Hyperbox> try_hyperbox(Rng& rng, const std::vector<int>& size, int max_generators) {
    Hyperbox h(kModeU, size);
    ComplexShape shape;
    shape.max_generators = max_generators;
    shape.tower_at_zero = true;
    shape.grading_span = 3;
    shape.max_order = 3;
    for (int i = 0; i < h.num_points(); ++i) h.set_cell(h.point(i), random_u_complex(rng, shape));
    int P = h.num_points();
    auto length = [&](int i, int j) {
        Point a = h.point(i), b = h.point(j);
        int len = 0;
        for (int k = 0; k < h.dim(); ++k) len += b[k] - a[k];
        return len;
    };

    // Each cell retracts onto the tower T: p: C -> T and i: T -> C, both isomorphisms on the
    // tower, so p i = id.  Edges i_b p_a with no longer arrows form a valid box.
    ComplexBuilder tb(kModeU);
    tb.add_generator("t", Grading::integral({0}));
    auto T = tb.build();
    auto pick = [&](const ComplexPtr& s, const ComplexPtr& t) -> std::optional<ChainMap> {
        auto basis = chain_map_space(s, t, maslov(0));
        for (int attempt = 0; attempt < 64; ++attempt) {
            auto f = random_combination(basis, ChainMap::zero(s, t, maslov(0)), rng);
            if (tower_iso(f)) return f;
        }
        return std::nullopt;
    };
    std::vector<ChainMap> proj, incl;
    for (int i = 0; i < P; ++i) {
        auto p = pick(h.cell(i), T), q = pick(T, h.cell(i));
        if (!p || !q) return std::nullopt;
        proj.push_back(*p);
        incl.push_back(*q);
    }

    // Total differential over all points, then conjugation by id + N with N strictly increasing
    // along allowed pairs (degree = length, so the conjugate keeps every arrow's degree).  Within a
    // unit cell every path between two points stays in the cell, so each cell is a conjugate of a
    // valid cube and the relations hold.
    std::vector<int> offset(P + 1, 0);
    for (int i = 0; i < P; ++i) offset[i + 1] = offset[i] + h.cell(i)->size();
    int n = offset[P];
    auto place = [&](Matrix& total, int i, int j, const Matrix& m) {
        for (int c = 0; c < m.cols(); ++c)
            for (const auto& [r, v] : m.column(c)) total.add(offset[j] + r, offset[i] + c, v);
    };
    Matrix D(kModeU, n, n), N(kModeU, n, n);
    for (int i = 0; i < P; ++i) {
        place(D, i, i, h.cell(i)->differential());
        for (int j = 0; j < P; ++j) {
            if (i == j || !arrow_allowed(h.point(i), h.point(j))) continue;
            int len = length(i, j);
            if (len == 1) place(D, i, j, compose(incl[j], proj[i]).matrix());
            place(N, i, j, random_map(rng, h.cell(i), h.cell(j), maslov(2 * len), 0.3).matrix());
        }
    }
    Matrix id = Matrix::identity(kModeU, n);
    Matrix inv = id, power = id;
    for (int k = 0; k < h.dim() * 4 + 1; ++k) {
        power = compose(N, power);
        if (power.is_zero()) break;
        inv += power;
    }
    Matrix conj = compose(id + N, compose(D, inv));
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) {
            if (i == j || !arrow_allowed(h.point(i), h.point(j))) continue;
            Matrix block(kModeU, h.cell(j)->size(), h.cell(i)->size());
            for (int c = 0; c < block.cols(); ++c)
                for (const auto& [r, v] : conj.column(offset[i] + c))
                    if (r >= offset[j] && r < offset[j + 1]) block.add(r - offset[j], c, v);
            if (!block.is_zero()) h.set_arrow(h.point(i), h.point(j), block);
        }
    return h;
}

}  // namespace

Hyperbox random_hyperbox(Rng& rng, const std::vector<int>& size, int max_generators) {
    for (int attempt = 0; attempt < 32; ++attempt)
        if (auto h = try_hyperbox(rng, size, max_generators)) return *h;
    throw std::runtime_error("random_hyperbox: no valid box after 32 attempts");
}

}  // namespace ihf::gen
