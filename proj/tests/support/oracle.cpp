#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ihf::oracle {

DenseF2::DenseF2(int r, int c) : rows(r), cols(c), data(r, std::vector<std::uint64_t>((c + 63) / 64, 0)) {}

void DenseF2::flip(int r, int c) { data[r][c / 64] ^= std::uint64_t{1} << (c % 64); }

bool DenseF2::get(int r, int c) const { return (data[r][c / 64] >> (c % 64)) & 1u; }

int DenseF2::rank() const {
    auto a = data;
    int rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
        int p = rk;
        while (p < rows && !((a[p][c / 64] >> (c % 64)) & 1u)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        for (int r = rk + 1; r < rows; ++r)
            if ((a[r][c / 64] >> (c % 64)) & 1u)
                for (std::size_t w = 0; w < a[r].size(); ++w) a[r][w] ^= a[rk][w];
        ++rk;
    }
    return rk;
}

std::vector<std::vector<char>> DenseF2::kernel() const {
    auto a = data;
    std::vector<int> pivots;
    int rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
        int p = rk;
        while (p < rows && !((a[p][c / 64] >> (c % 64)) & 1u)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        for (int r = 0; r < rows; ++r)
            if (r != rk && ((a[r][c / 64] >> (c % 64)) & 1u))
                for (std::size_t w = 0; w < a[r].size(); ++w) a[r][w] ^= a[rk][w];
        pivots.push_back(c);
        ++rk;
    }
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<char>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<char> z(cols, 0);
        z[f] = 1;
        for (int i = 0; i < rk; ++i)
            if ((a[i][f / 64] >> (f % 64)) & 1u) z[pivots[i]] = 1;
        out.push_back(std::move(z));
    }
    return out;
}

namespace {

// F_2 basis of C / U^delta: Q^q U^j x_i.
struct Elem {
    int gen;
    int q;
    int j;
};

struct Truncation {
    std::map<std::int64_t, std::vector<Elem>> by_grading;
    std::map<std::int64_t, std::map<std::tuple<int, int, int>, int>> index;
};

Truncation truncate(const FreeComplex& c, int delta) {
    if (c.mode().kind == RingKind::UV) throw std::invalid_argument("oracle: one-variable complexes only");
    int qmax = c.mode().has_q() ? 1 : 0;
    Truncation t;
    for (int i = 0; i < c.size(); ++i)
        for (int q = 0; q <= qmax; ++q)
            for (int j = 0; j < delta; ++j) {
                std::int64_t g = c.grading(i).twice[0] - 4 * j - 2 * q;
                t.index[g][{i, q, j}] = static_cast<int>(t.by_grading[g].size());
                t.by_grading[g].push_back({i, q, j});
            }
    return t;
}

// Image of a basis element under a matrix: list of (gen, q, j) with j < delta.
std::vector<std::tuple<int, int, int>> image(const Matrix& m, const Elem& e, int delta) {
    std::vector<std::tuple<int, int, int>> out;
    for (const auto& [row, coeff] : m.column(e.gen))
        for (const auto& mono : coeff.terms()) {
            int q = e.q + mono.q;
            int j = e.j + static_cast<int>(mono.exp[0]);
            if (q > 1 || j >= delta) continue;
            out.emplace_back(row, q, j);
        }
    return out;
}

// Matrix of the restriction C_g -> D_{g + deg}.
DenseF2 block(const Matrix& m, const Truncation& src, const Truncation& tgt, std::int64_t g, std::int64_t deg,
              int delta) {
    static const std::vector<Elem> none;
    auto it = src.by_grading.find(g);
    const auto& cols = it == src.by_grading.end() ? none : it->second;
    auto jt = tgt.index.find(g + deg);
    int nrows = jt == tgt.index.end() ? 0 : static_cast<int>(jt->second.size());
    DenseF2 a(nrows, static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& key : image(m, cols[c], delta)) {
            if (jt == tgt.index.end()) throw std::logic_error("oracle: inhomogeneous entry");
            auto kt = jt->second.find(key);
            if (kt == jt->second.end()) throw std::logic_error("oracle: inhomogeneous entry");
            a.flip(kt->second, static_cast<int>(c));
        }
    return a;
}

}  // namespace

std::map<std::int64_t, int> truncated_dims(const FreeComplex& c, int delta) {
    auto t = truncate(c, delta);
    const auto& d = c.differential();
    std::map<std::int64_t, int> out;
    for (const auto& [g, elems] : t.by_grading) {
        int dim = static_cast<int>(elems.size());
        int out_rank = block(d, t, t, g, -2, delta).rank();
        int in_rank = block(d, t, t, g + 2, -2, delta).rank();
        int h = dim - out_rank - in_rank;
        if (h) out[g] = h;
    }
    return out;
}

std::map<std::int64_t, int> predicted_dims(const GradedHomology& h, int delta) {
    std::map<std::int64_t, int> out;
    for (const auto& t : h.towers)
        for (int j = 0; j < delta; ++j) ++out[t.twice[0] - 4 * j];
    for (const auto& s : h.torsion) {
        std::int64_t y = s.anchor.twice[0];
        std::int64_t x = y - 4 * s.order + 2;
        for (int j = 0; j < std::min(s.order, delta); ++j) ++out[y - 4 * j];
        for (int j = std::max(0, delta - s.order); j < delta; ++j) ++out[x - 4 * j];
    }
    return out;
}

bool induces_nonzero_on_truncation(const ChainMap& f, int delta) {
    const auto& S = *f.source();
    const auto& T = *f.target();
    auto ts = truncate(S, delta), tt = truncate(T, delta);
    std::int64_t deg = f.degree().twice[0];
    for (const auto& [g, elems] : ts.by_grading) {
        auto dg = block(S.differential(), ts, ts, g, -2, delta);
        auto cycles = dg.kernel();
        if (cycles.empty()) continue;
        auto fg = block(f.matrix(), ts, tt, g, deg, delta);
        auto bd = block(T.differential(), tt, tt, g + deg + 2, -2, delta);
        int rows = fg.rows;
        if (rows == 0) continue;
        // [boundaries | f(cycles)]
        DenseF2 all(rows, bd.cols + static_cast<int>(cycles.size()));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < bd.cols; ++c)
                if (bd.get(r, c)) all.flip(r, c);
        for (std::size_t k = 0; k < cycles.size(); ++k)
            for (int r = 0; r < rows; ++r) {
                bool bit = false;
                for (int c = 0; c < fg.cols; ++c)
                    if (cycles[k][c] && fg.get(r, c)) bit = !bit;
                if (bit) all.flip(r, bd.cols + static_cast<int>(k));
            }
        if (all.rank() > bd.rank()) return true;
    }
    return false;
}

int towers_by_truncation(const FreeComplex& c) {
    if (c.size() == 0) return 0;
    std::int64_t lo = c.grading(0).twice[0], hi = lo;
    for (int i = 0; i < c.size(); ++i) {
        lo = std::min(lo, c.grading(i).twice[0]);
        hi = std::max(hi, c.grading(i).twice[0]);
    }
    int delta = static_cast<int>((hi - lo) / 4) + 3;
    auto total = [&](int d) {
        int s = 0;
        for (const auto& [g, n] : truncated_dims(c, d)) s += n;
        return s;
    };
    return total(delta + 1) - total(delta);
}

Matrix multiply(const Matrix& left, const Matrix& right) {
    if (left.cols() != right.rows()) throw std::invalid_argument("oracle multiply: shape mismatch");
    Mode mode = left.mode();
    Matrix out(mode, left.rows(), right.cols());
    for (int c = 0; c < right.cols(); ++c)
        for (const auto& [mid, a] : right.column(c))
            for (const auto& [r, b] : left.column(mid))
                for (const auto& ma : a.terms())
                    for (const auto& mb : b.terms()) {
                        Monomial p;
                        int q = ma.q + mb.q;
                        if (q > 1) continue;
                        p.q = static_cast<std::uint8_t>(q);
                        for (int v = 0; v < Monomial::kMaxVars; ++v) p.exp[v] = ma.exp[v] + mb.exp[v];
                        out.add(r, c, p);
                    }
    return out;
}

namespace {

Matrix zero_like(const Hyperbox& h, const Point& from, const Point& to) {
    return Matrix(h.mode(), h.cell(to)->size(), h.cell(from)->size());
}

Matrix arrow_or_differential(const Hyperbox& h, const Point& from, const Point& to) {
    if (from == to) return h.cell(from)->differential();
    const Matrix* m = h.arrow(from, to);
    return m ? *m : zero_like(h, from, to);
}

void for_each_point_between(const Point& lo, const Point& hi, const std::function<void(const Point&)>& fn) {
    Point p = lo;
    std::function<void(int)> rec = [&](int axis) {
        if (axis == static_cast<int>(p.size())) {
            fn(p);
            return;
        }
        for (int v = lo[axis]; v <= hi[axis]; ++v) {
            p[axis] = v;
            rec(axis + 1);
        }
        p[axis] = lo[axis];
    };
    rec(0);
}

}  // namespace

Matrix box_relation(const Hyperbox& h, const Point& from, const Point& to) {
    Matrix sum = zero_like(h, from, to);
    for_each_point_between(from, to, [&](const Point& mid) {
        sum += multiply(arrow_or_differential(h, mid, to), arrow_or_differential(h, from, mid));
    });
    return sum;
}

std::map<std::pair<Point, Point>, Matrix> compressed_arrows(const Hyperbox& h, int axis) {
    int d = h.size()[axis];
    std::map<std::pair<Point, Point>, Matrix> out;
    auto squash = [&](Point p) {
        p[axis] = p[axis] == 0 ? 0 : 1;
        return p;
    };
    // Arrows inside the two end faces.
    for (const auto& [key, m] : h.arrows()) {
        Point a = h.point(key.first), b = h.point(key.second);
        if (a[axis] != b[axis] || (a[axis] != 0 && a[axis] != d)) continue;
        out.emplace(std::make_pair(squash(a), squash(b)), m);
    }
    // Chains crossing the axis: every arrow advances the axis by exactly one.
    std::function<void(const Point&, const Point&, const Matrix&)> walk = [&](const Point& start, const Point& cur,
                                                                              const Matrix& acc) {
        if (cur[axis] == d) {
            auto key = std::make_pair(squash(start), squash(cur));
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(key, acc);
            else
                it->second += acc;
            return;
        }
        Point hi = cur;
        for (int a = 0; a < h.dim(); ++a)
            if (a != axis) hi[a] = std::min(h.size()[a], cur[a] + 1);
        // Never leave the unit cell of the start point.
        for (int a = 0; a < h.dim(); ++a)
            if (a != axis) hi[a] = std::min(hi[a], start[a] + 1);
        hi[axis] = cur[axis] + 1;
        Point lo = cur;
        lo[axis] = cur[axis] + 1;
        for_each_point_between(lo, hi, [&](const Point& nxt) {
            const Matrix* m = h.arrow(cur, nxt);
            if (!m) return;
            walk(start, nxt, multiply(*m, acc));
        });
    };
    for (int i = 0; i < h.num_points(); ++i) {
        Point p = h.point(i);
        if (p[axis] != 0) continue;
        walk(p, p, Matrix::identity(h.mode(), h.cell(p)->size()));
    }
    // Drop zero sums so the result compares with sparse storage.
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace ihf::oracle
