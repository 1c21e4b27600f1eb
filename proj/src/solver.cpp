#include "ihf/solver.hpp"

#include <map>
#include <tuple>

namespace ihf {

// ---- F2System ----------------------------------------------------------------

int F2System::add_equation() {
    rows_.emplace_back(n_);
    rhs_.push_back(0);
    return static_cast<int>(rows_.size()) - 1;
}

F2System::Reduced F2System::reduce() const {
    Reduced r{rows_, rhs_, {}, true};
    int m = static_cast<int>(r.rows.size());
    int top = 0;
    for (int col = 0; col < n_ && top < m; ++col) {
        int p = -1;
        for (int i = top; i < m; ++i)
            if (r.rows[i].get(col)) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(r.rows[p], r.rows[top]);
        std::swap(r.rhs[p], r.rhs[top]);
        for (int i = 0; i < m; ++i)
            if (i != top && r.rows[i].get(col)) {
                r.rows[i] ^= r.rows[top];
                r.rhs[i] ^= r.rhs[top];
            }
        r.pivot_col.push_back(col);
        ++top;
    }
    for (int i = top; i < m; ++i)
        if (r.rhs[i]) r.consistent = false;
    r.rows.resize(top);
    r.rhs.resize(top);
    return r;
}

std::optional<BitVec> F2System::solve() const {
    auto r = reduce();
    if (!r.consistent) return std::nullopt;
    BitVec z(n_);
    for (std::size_t i = 0; i < r.pivot_col.size(); ++i)
        if (r.rhs[i]) z.set(r.pivot_col[i]);
    return z;
}

std::vector<BitVec> F2System::nullspace() const {
    auto r = reduce();
    std::vector<char> is_pivot(n_, 0);
    for (int c : r.pivot_col) is_pivot[c] = 1;
    std::vector<BitVec> out;
    for (int f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        BitVec z(n_);
        z.set(f);
        for (std::size_t i = 0; i < r.pivot_col.size(); ++i)
            if (r.rows[i].get(f)) z.set(r.pivot_col[i]);
        out.push_back(std::move(z));
    }
    return out;
}

int F2System::rank() const { return static_cast<int>(reduce().pivot_col.size()); }

// ---- slots ---------------------------------------------------------------------

std::vector<Slot> enumerate_slots(const FreeComplex& S, const FreeComplex& T, const Grading& degree, Equivariance eq) {
    Mode mode = S.mode();
    std::vector<Slot> out;
    for (int x = 0; x < S.size(); ++x) {
        const auto& g = S.grading(x);
        Grading want = (eq == Equivariance::skew ? conj_grading(mode, g) : g) + degree;
        for (int y = 0; y < T.size(); ++y)
            for (const auto& m : monomials_with_shift(mode, want - T.grading(y))) out.push_back({x, y, m});
    }
    return out;
}

ChainMap assemble(const ComplexPtr& S, const ComplexPtr& T, const Grading& degree, Equivariance eq,
                  const std::vector<Slot>& slots, const BitVec& values, int offset) {
    Matrix m(S->mode(), T->size(), S->size());
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (values.get(offset + static_cast<int>(i))) m.add(slots[i].y, slots[i].x, slots[i].m);
    return ChainMap(S, T, std::move(m), degree, eq);
}

namespace {

// Linear system whose unknowns are the coefficients of several maps, and whose equations are
// sums of terms L ∘ X ∘ R (L, R known, possibly identity) set equal to known right-hand sides.
class MapSystem {
  public:
    int add_unknown(ComplexPtr S, ComplexPtr T, Grading degree, Equivariance eq) {
        Unknown u{S, T, degree, eq, enumerate_slots(*S, *T, degree, eq), total_};
        total_ += static_cast<int>(u.slots.size());
        unknowns_.push_back(std::move(u));
        return static_cast<int>(unknowns_.size()) - 1;
    }
    void add_term(int block, int unknown, const ChainMap* left, const ChainMap* right) {
        terms_.push_back({block, unknown, left, right});
    }
    void add_rhs(int block, const ChainMap& f) { rhs_.push_back({block, &f}); }

    F2System build() {
        F2System sys(total_);
        auto row = [&](int block, int w, int z, const Monomial& mu) {
            auto key = std::make_tuple(block, w, z, mu);
            auto it = index_.find(key);
            if (it != index_.end()) return it->second;
            int r = sys.add_equation();
            index_.emplace(key, r);
            return r;
        };
        for (const auto& t : terms_) {
            const auto& u = unknowns_[t.unknown];
            Mode mode = u.S->mode();
            // incoming[x] = list of (w, c) with R(w) containing c x
            std::vector<std::vector<std::pair<int, Coefficient>>> incoming;
            if (t.right) {
                incoming.resize(u.S->size());
                const auto& R = t.right->matrix();
                for (int w = 0; w < R.cols(); ++w)
                    for (const auto& [x, c] : R.column(w)) incoming[x].emplace_back(w, c);
            }
            bool xskew = u.eq == Equivariance::skew;
            for (std::size_t s = 0; s < u.slots.size(); ++s) {
                const auto& sl = u.slots[s];
                int var = u.offset + static_cast<int>(s);
                auto apply_left = [&](int w, const Coefficient& a) {
                    if (!t.left) {
                        for (const auto& mu : a.terms()) sys.set(row(t.block, w, sl.y, mu), var);
                        return;
                    }
                    Coefficient aa = t.left->skew() ? conjugate(a) : a;
                    for (const auto& [z, l] : t.left->matrix().column(sl.y)) {
                        auto prod = l * aa;
                        for (const auto& mu : prod.terms()) sys.set(row(t.block, w, z, mu), var);
                    }
                };
                Coefficient m = Coefficient::of(mode, sl.m);
                if (!t.right) {
                    apply_left(sl.x, m);
                } else {
                    for (const auto& [w, c] : incoming[sl.x]) apply_left(w, (xskew ? conjugate(c) : c) * m);
                }
            }
        }
        for (const auto& [block, f] : rhs_) {
            const auto& M = f->matrix();
            for (int w = 0; w < M.cols(); ++w)
                for (const auto& [z, c] : M.column(w))
                    for (const auto& mu : c.terms()) sys.set_rhs(row(block, w, z, mu));
        }
        return sys;
    }

    ChainMap extract(int unknown, const BitVec& z) const {
        const auto& u = unknowns_[unknown];
        return assemble(u.S, u.T, u.degree, u.eq, u.slots, z, u.offset);
    }

  private:
    struct Unknown {
        ComplexPtr S, T;
        Grading degree;
        Equivariance eq;
        std::vector<Slot> slots;
        int offset;
    };
    struct Term {
        int block;
        int unknown;
        const ChainMap* left;
        const ChainMap* right;
    };
    std::vector<Unknown> unknowns_;
    std::vector<Term> terms_;
    std::vector<std::pair<int, const ChainMap*>> rhs_;
    std::map<std::tuple<int, int, int, Monomial>, int> index_;
    int total_ = 0;
};

}  // namespace

std::optional<ChainMap> homotopy_solve(const ChainMap& f, const ChainMap& g) {
    auto sum = f + g;  // checks shapes
    Mode mode = f.mode();
    auto dS = ChainMap::differential(f.source());
    auto dT = ChainMap::differential(f.target());
    MapSystem ms;
    int h = ms.add_unknown(f.source(), f.target(), f.degree() - differential_degree(mode), f.equivariance());
    ms.add_term(0, h, &dT, nullptr);
    ms.add_term(0, h, nullptr, &dS);
    ms.add_rhs(0, sum);
    auto z = ms.build().solve();
    if (!z) return std::nullopt;
    auto out = ms.extract(h, *z);
    if (!(commutator_with_d(out) == sum)) throw ComplexError("homotopy_solve: internal verification failed");
    return out;
}

std::optional<HomotopyInverse> find_homotopy_inverse(const ChainMap& f) {
    Mode mode = f.mode();
    const auto& S = f.source();
    const auto& T = f.target();
    auto dS = ChainMap::differential(S);
    auto dT = ChainMap::differential(T);
    auto idS = ChainMap::identity(S);
    auto idT = ChainMap::identity(T);
    Grading gdeg = -(f.skew() ? conj_grading(mode, f.degree()) : f.degree());
    Grading hdeg = -differential_degree(mode);
    MapSystem ms;
    int g = ms.add_unknown(T, S, gdeg, f.equivariance());
    int k = ms.add_unknown(S, S, hdeg, Equivariance::plain);
    int kp = ms.add_unknown(T, T, hdeg, Equivariance::plain);
    ms.add_term(0, g, &dS, nullptr);
    ms.add_term(0, g, nullptr, &dT);
    ms.add_term(1, g, nullptr, &f);
    ms.add_term(1, k, &dS, nullptr);
    ms.add_term(1, k, nullptr, &dS);
    ms.add_rhs(1, idS);
    ms.add_term(2, g, &f, nullptr);
    ms.add_term(2, kp, &dT, nullptr);
    ms.add_term(2, kp, nullptr, &dT);
    ms.add_rhs(2, idT);
    auto z = ms.build().solve();
    if (!z) return std::nullopt;
    HomotopyInverse out{ms.extract(g, *z), ms.extract(k, *z), ms.extract(kp, *z)};
    if (!(compose(out.g, f) + idS == commutator_with_d(out.k)) || !(compose(f, out.g) + idT == commutator_with_d(out.kp)))
        throw ComplexError("find_homotopy_inverse: internal verification failed");
    return out;
}

std::vector<ChainMap> chain_map_space(const ComplexPtr& S, const ComplexPtr& T, const Grading& degree, Equivariance eq) {
    auto dS = ChainMap::differential(S);
    auto dT = ChainMap::differential(T);
    MapSystem ms;
    int x = ms.add_unknown(S, T, degree, eq);
    ms.add_term(0, x, &dT, nullptr);
    ms.add_term(0, x, nullptr, &dS);
    std::vector<ChainMap> out;
    for (const auto& z : ms.build().nullspace()) out.push_back(ms.extract(x, z));
    return out;
}

ChainMap random_combination(const std::vector<ChainMap>& basis, const ChainMap& zero, std::mt19937_64& rng) {
    ChainMap out = zero;
    for (const auto& b : basis)
        if (rng() & 1) out = out + b;
    return out;
}

}  // namespace ihf
