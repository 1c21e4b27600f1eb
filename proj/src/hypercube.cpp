#include "ihf/hypercube.hpp"

#include <algorithm>
#include <numeric>

namespace ihf {

std::string point_string(const Point& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

Hyperbox::Hyperbox(Mode mode, std::vector<int> size) : mode_(mode), size_(std::move(size)) {
    std::size_t n = 1;
    for (int d : size_) {
        if (d < 0) throw ComplexError("hyperbox size must be non-negative");
        n *= static_cast<std::size_t>(d + 1);
    }
    cells_.resize(n);
}

bool Hyperbox::contains(const Point& e) const {
    if (e.size() != size_.size()) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] < 0 || e[i] > size_[i]) return false;
    return true;
}

int Hyperbox::index(const Point& e) const {
    if (!contains(e)) throw ComplexError("point " + point_string(e) + " outside the hyperbox");
    int idx = 0;
    for (std::size_t i = 0; i < e.size(); ++i) idx = idx * (size_[i] + 1) + e[i];
    return idx;
}

Point Hyperbox::point(int idx) const {
    Point e(size_.size());
    for (int i = dim() - 1; i >= 0; --i) {
        e[i] = idx % (size_[i] + 1);
        idx /= size_[i] + 1;
    }
    return e;
}

void Hyperbox::set_cell(const Point& e, ComplexPtr c) {
    if (!(c->mode() == mode_)) throw ComplexError("hyperbox cell in the wrong ring");
    cells_.at(index(e)) = std::move(c);
}

bool Hyperbox::complete() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const auto& c) { return c != nullptr; });
}

bool arrow_allowed(const Point& from, const Point& to) {
    if (from.size() != to.size() || from == to) return false;
    for (std::size_t i = 0; i < from.size(); ++i)
        if (to[i] < from[i] || to[i] - from[i] > 1) return false;
    return true;
}

void Hyperbox::set_arrow(const Point& from, const Point& to, Matrix m) {
    if (!arrow_allowed(from, to))
        throw ComplexError("no arrow allowed from " + point_string(from) + " to " + point_string(to));
    int a = index(from), b = index(to);
    if (!cells_[a] || !cells_[b]) throw ComplexError("arrow between unassigned cells");
    if (m.cols() != cells_[a]->size() || m.rows() != cells_[b]->size())
        throw ComplexError("arrow " + point_string(from) + " -> " + point_string(to) + " has the wrong shape");
    if (m.is_zero())
        arrows_.erase({a, b});
    else
        arrows_[{a, b}] = std::move(m);
}

void Hyperbox::add_to_arrow(const Point& from, const Point& to, const Matrix& m) {
    const Matrix* cur = arrow(from, to);
    set_arrow(from, to, cur ? *cur + m : m);
}

const Matrix* Hyperbox::arrow(int from, int to) const {
    auto it = arrows_.find({from, to});
    return it == arrows_.end() ? nullptr : &it->second;
}

const Matrix* Hyperbox::arrow(const Point& from, const Point& to) const { return arrow(index(from), index(to)); }

namespace {

// Calls f on every lattice point in the box [lo, hi].
template <class F>
void for_each_between(const Point& lo, const Point& hi, F&& f) {
    Point e = lo;
    while (true) {
        f(e);
        int i = static_cast<int>(e.size()) - 1;
        while (i >= 0 && e[i] == hi[i]) {
            e[i] = lo[i];
            --i;
        }
        if (i < 0) return;
        ++e[i];
    }
}

Point upper_neighbour(const Hyperbox& h, const Point& e) {
    Point hi = e;
    for (int i = 0; i < h.dim(); ++i) hi[i] = std::min(e[i] + 1, h.size()[i]);
    return hi;
}

}  // namespace

HyperboxReport validate_hyperbox(const Hyperbox& h) {
    HyperboxReport r;
    if (!h.complete()) {
        r.ok = false;
        r.failures.push_back({{}, {}, "hyperbox has unassigned cells"});
        return r;
    }
    for (int a = 0; a < h.num_points(); ++a) {
        Point e = h.point(a);
        for_each_between(e, upper_neighbour(h, e), [&](const Point& e2) {
            int c = h.index(e2);
            Matrix sum(h.mode(), h.cell(c)->size(), h.cell(a)->size());
            for_each_between(e, e2, [&](const Point& mid) {
                int b = h.index(mid);
                const Matrix* first = a == b ? &h.cell(a)->differential() : h.arrow(a, b);
                const Matrix* second = b == c ? &h.cell(c)->differential() : h.arrow(b, c);
                if (first && second) sum += compose(*second, *first);
            });
            ++r.relations_checked;
            if (!sum.is_zero()) {
                r.ok = false;
                r.failures.push_back({e, e2, "structure relation fails (" + std::to_string(sum.nnz()) + " nonzero entries)"});
            }
        });
    }
    return r;
}

Hyperbox stack(const Hyperbox& a, const Hyperbox& b, int axis) {
    if (a.dim() != b.dim() || axis < 0 || axis >= a.dim()) throw ComplexError("stack: dimension mismatch");
    if (!(a.mode() == b.mode())) throw ComplexError("stack: ring mismatch");
    for (int i = 0; i < a.dim(); ++i)
        if (i != axis && a.size()[i] != b.size()[i]) throw ComplexError("stack: sizes differ off the stacking axis");
    int sa = a.size()[axis];
    auto size = a.size();
    size[axis] += b.size()[axis];
    Hyperbox out(a.mode(), size);
    // Faces must agree.
    for (int i = 0; i < a.num_points(); ++i) {
        Point e = a.point(i);
        if (e[axis] != sa) continue;
        Point f = e;
        f[axis] = 0;
        if (!same_complex(a.cell(e), b.cell(f)))
            throw ComplexError("stack: faces differ at cell " + point_string(e));
    }
    for (const auto& [key, m] : a.arrows()) {
        Point e = a.point(key.first), e2 = a.point(key.second);
        if (e[axis] != sa || e2[axis] != sa) continue;
        Point f = e, f2 = e2;
        f[axis] = f2[axis] = 0;
        const Matrix* other = b.arrow(f, f2);
        if (!other || !(*other == m))
            throw ComplexError("stack: faces differ at arrow " + point_string(e) + " -> " + point_string(e2));
    }
    for (const auto& [key, m] : b.arrows()) {
        Point f = b.point(key.first), f2 = b.point(key.second);
        if (f[axis] != 0 || f2[axis] != 0) continue;
        Point e = f, e2 = f2;
        e[axis] = e2[axis] = sa;
        if (!a.arrow(e, e2)) throw ComplexError("stack: faces differ at arrow " + point_string(e) + " -> " + point_string(e2));
    }
    for (int i = 0; i < a.num_points(); ++i) out.set_cell(a.point(i), a.cell(i));
    for (int i = 0; i < b.num_points(); ++i) {
        Point f = b.point(i);
        f[axis] += sa;
        out.set_cell(f, b.cell(i));
    }
    for (const auto& [key, m] : a.arrows()) out.set_arrow(a.point(key.first), a.point(key.second), m);
    for (const auto& [key, m] : b.arrows()) {
        Point f = b.point(key.first), f2 = b.point(key.second);
        if (f[axis] == 0 && f2[axis] == 0) continue;
        f[axis] += sa;
        f2[axis] += sa;
        out.set_arrow(f, f2, m);
    }
    return out;
}

Hyperbox compress_axis(const Hyperbox& h, int axis) {
    if (axis < 0 || axis >= h.dim()) throw ComplexError("compress: axis out of range");
    if (!h.complete()) throw ComplexError("compress: hyperbox has unassigned cells");
    int d = h.size()[axis];
    auto size = h.size();
    size[axis] = std::min(d, 1);
    Hyperbox out(h.mode(), size);
    auto old_point = [&](Point p) {
        p[axis] *= d;
        return p;
    };
    for (int i = 0; i < out.num_points(); ++i) out.set_cell(out.point(i), h.cell(old_point(out.point(i))));
    if (d == 0) {
        for (const auto& [key, m] : h.arrows()) out.set_arrow(h.point(key.first), h.point(key.second), m);
        return out;
    }
    // Arrows inside the two faces are kept.
    for (const auto& [key, m] : h.arrows()) {
        Point e = h.point(key.first), e2 = h.point(key.second);
        if (e[axis] != e2[axis] || (e[axis] != 0 && e[axis] != d)) continue;
        Point p = e, p2 = e2;
        p[axis] = p2[axis] = e[axis] / d;
        out.set_arrow(p, p2, m);
    }
    // Arrows across: sum over monotone chains, one step along the axis at a time.
    for (int i = 0; i < out.num_points(); ++i) {
        Point p = out.point(i);
        if (p[axis] != 0) continue;
        Point hi = upper_neighbour(out, p);
        hi[axis] = 0;
        std::map<Point, Matrix> cur;  // keyed by full old point at the current slice
        for_each_between(p, hi, [&](const Point& q) {
            Point to = q;
            to[axis] = 1;
            if (const Matrix* m = h.arrow(p, to)) cur.emplace(to, *m);
        });
        for (int slice = 1; slice < d; ++slice) {
            std::map<Point, Matrix> next;
            for (const auto& [from, m] : cur) {
                Point lo2 = from;
                lo2[axis] = slice;
                Point hi2 = hi;
                hi2[axis] = slice;
                for_each_between(lo2, hi2, [&](const Point& q) {
                    Point to = q;
                    to[axis] = slice + 1;
                    const Matrix* step = h.arrow(from, to);
                    if (!step) return;
                    auto prod = compose(*step, m);
                    auto it = next.find(to);
                    if (it == next.end())
                        next.emplace(to, std::move(prod));
                    else
                        it->second += prod;
                });
            }
            cur = std::move(next);
        }
        for (const auto& [to, m] : cur) {
            Point p2 = to;
            p2[axis] = 1;
            out.set_arrow(p, p2, m);
        }
    }
    return out;
}

Hyperbox compress(const Hyperbox& h, std::vector<int> axis_order) {
    if (axis_order.empty()) {
        axis_order.resize(h.dim());
        std::iota(axis_order.rbegin(), axis_order.rend(), 0);
    }
    std::vector<int> seen = axis_order;
    std::sort(seen.begin(), seen.end());
    std::vector<int> all(h.dim());
    std::iota(all.begin(), all.end(), 0);
    if (seen != all) throw ComplexError("compress: axis order must be a permutation of the axes");
    Hyperbox cur = h;
    for (int a : axis_order) cur = compress_axis(cur, a);
    cur.axis_order = axis_order;
    return cur;
}

}  // namespace ihf
