#include "ihf/complex.hpp"

#include <sstream>

namespace ihf {

// ---- Matrix ----------------------------------------------------------------

Matrix Matrix::identity(Mode mode, int n) {
    Matrix m(mode, n, n);
    for (int i = 0; i < n; ++i) m.add(i, i, Coefficient::one(mode));
    return m;
}

const Matrix::Column& Matrix::column(int c) const {
    static const Column empty;
    auto it = data_.find(c);
    return it == data_.end() ? empty : it->second;
}

Coefficient Matrix::at(int r, int c) const {
    const auto& col = column(c);
    auto it = col.find(r);
    return it == col.end() ? Coefficient(mode_) : it->second;
}

void Matrix::add(int r, int c, const Coefficient& x) {
    if (x.is_zero()) return;
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw ComplexError("matrix index out of range");
    if (x.mode() != mode_) throw RingError("matrix entry in ring " + x.mode().name() + ", expected " + mode_.name());
    auto& col = data_[c];
    auto [it, fresh] = col.try_emplace(r, x);
    if (!fresh) {
        it->second += x;
        if (it->second.is_zero()) col.erase(it);
    }
    if (col.empty()) data_.erase(c);
}

void Matrix::add(int r, int c, const Monomial& m) { add(r, c, Coefficient::of(mode_, m)); }

bool Matrix::is_zero() const { return data_.empty(); }

std::size_t Matrix::nnz() const {
    std::size_t n = 0;
    for (const auto& [c, col] : data_) n += col.size();
    return n;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw ComplexError("matrix shape mismatch in sum");
    for (const auto& [c, col] : o.data_)
        for (const auto& [r, x] : col) add(r, c, x);
    return *this;
}

bool Matrix::operator==(const Matrix& o) const {
    return mode_ == o.mode_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix compose(const Matrix& left, const Matrix& right, bool left_skew) {
    if (left.cols() != right.rows()) throw ComplexError("matrix shape mismatch in composition");
    Matrix out(left.mode(), left.rows(), right.cols());
    for (int c = 0; c < right.cols(); ++c)
        for (const auto& [mid, x] : right.column(c)) {
            const auto& lcol = left.column(mid);
            if (lcol.empty()) continue;
            Coefficient xx = left_skew ? conjugate(x) : x;
            for (const auto& [r, y] : lcol) out.add(r, c, y * xx);
        }
    return out;
}

Matrix conjugate_entries(const Matrix& m) {
    Matrix out(m.mode(), m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, x] : m.column(c)) out.add(r, c, conjugate(x));
    return out;
}

Matrix scale(const Coefficient& s, const Matrix& m) {
    Matrix out(m.mode(), m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, x] : m.column(c)) out.add(r, c, s * x);
    return out;
}

// ---- FreeComplex -------------------------------------------------------------

FreeComplex::FreeComplex(Mode mode, std::vector<Generator> generators, Matrix differential)
    : mode_(mode), gens_(std::move(generators)), d_(std::move(differential)) {
    int n = size();
    if (d_.rows() != n || d_.cols() != n) throw ComplexError("differential has wrong shape");
    if (!(d_.mode() == mode_)) throw ComplexError("differential in wrong ring");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(gens_[i].grading.size()) != grading_dim(mode_))
            throw ComplexError("generator '" + gens_[i].name + "' has a grading of the wrong dimension");
        if (!index_.emplace(gens_[i].name, i).second)
            throw ComplexError("duplicate generator name '" + gens_[i].name + "'");
    }
}

std::optional<int> FreeComplex::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int FreeComplex::require(std::string_view name) const {
    auto i = index_of(name);
    if (!i) throw ComplexError("unknown generator '" + std::string(name) + "'");
    return *i;
}

bool FreeComplex::operator==(const FreeComplex& o) const {
    return mode_ == o.mode_ && gens_ == o.gens_ && d_ == o.d_;
}

bool same_complex(const ComplexPtr& a, const ComplexPtr& b) { return a == b || (a && b && *a == *b); }

int ComplexBuilder::add_generator(std::string name, Grading g) {
    for (const auto& existing : gens_)
        if (existing.name == name) throw ComplexError("duplicate generator name '" + name + "'");
    gens_.push_back({std::move(name), std::move(g)});
    return static_cast<int>(gens_.size()) - 1;
}

int ComplexBuilder::find(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    throw ComplexError("unknown generator '" + std::string(name) + "'");
}

void ComplexBuilder::add_arrow(std::string_view from, std::string_view to, const Coefficient& c) {
    arrows_.emplace_back(find(from), find(to), c);
}

void ComplexBuilder::add_arrow(std::string_view from, std::string_view to, std::string_view coeff) {
    add_arrow(from, to, parse_coefficient(coeff, mode_));
}

void ComplexBuilder::add_arrow(int from, int to, const Coefficient& c) { arrows_.emplace_back(from, to, c); }

ComplexPtr ComplexBuilder::build() const {
    int n = static_cast<int>(gens_.size());
    Matrix d(mode_, n, n);
    for (const auto& [from, to, c] : arrows_) d.add(to, from, c);
    return std::make_shared<const FreeComplex>(mode_, gens_, std::move(d));
}

ComplexPtr shifted(const ComplexPtr& c, const Grading& delta, std::string prefix) {
    auto gens = c->generators();
    for (auto& g : gens) {
        g.grading += delta;
        g.name = prefix + g.name;
    }
    return std::make_shared<const FreeComplex>(c->mode(), std::move(gens), c->differential());
}

// ---- ChainMap ----------------------------------------------------------------

ChainMap::ChainMap(ComplexPtr source, ComplexPtr target, Matrix matrix, Grading degree, Equivariance eq)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)), degree_(std::move(degree)), eq_(eq) {
    if (!src_ || !tgt_) throw ComplexError("chain map without source or target");
    if (!(src_->mode() == tgt_->mode())) throw ComplexError("chain map between different rings");
    if (m_.rows() != tgt_->size() || m_.cols() != src_->size()) throw ComplexError("map matrix has wrong shape");
    if (static_cast<int>(degree_.size()) != grading_dim(src_->mode())) throw ComplexError("map degree has wrong dimension");
}

ChainMap ChainMap::identity(const ComplexPtr& c) {
    return ChainMap(c, c, Matrix::identity(c->mode(), c->size()), Grading::zero(c->mode()));
}

ChainMap ChainMap::zero(const ComplexPtr& source, const ComplexPtr& target, Grading degree, Equivariance eq) {
    return ChainMap(source, target, Matrix(source->mode(), target->size(), source->size()), std::move(degree), eq);
}

ChainMap ChainMap::differential(const ComplexPtr& c) {
    return ChainMap(c, c, c->differential(), differential_degree(c->mode()));
}

Grading ChainMap::image_grading(int x) const {
    const auto& g = src_->grading(x);
    return (skew() ? conj_grading(mode(), g) : g) + degree_;
}

static void check_parallel(const ChainMap& a, const ChainMap& b) {
    if (!same_complex(a.source(), b.source()) || !same_complex(a.target(), b.target()))
        throw ComplexError("sum of maps with different source or target");
    if (a.equivariance() != b.equivariance()) throw ComplexError("sum of plain and skew maps");
    if (a.degree() != b.degree())
        throw ComplexError("sum of maps of different degrees " + a.degree().to_string() + " and " + b.degree().to_string());
}

ChainMap operator+(const ChainMap& a, const ChainMap& b) {
    check_parallel(a, b);
    return ChainMap(a.source(), a.target(), a.matrix() + b.matrix(), a.degree(), a.equivariance());
}

bool operator==(const ChainMap& a, const ChainMap& b) {
    return same_complex(a.source(), b.source()) && same_complex(a.target(), b.target()) &&
           a.equivariance() == b.equivariance() && a.degree() == b.degree() && a.matrix() == b.matrix();
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (!same_complex(g.target(), f.source())) throw ComplexError("composition: target/source mismatch");
    Mode mode = f.mode();
    Grading deg = f.degree() + (f.skew() ? conj_grading(mode, g.degree()) : g.degree());
    auto eq = (f.skew() != g.skew()) ? Equivariance::skew : Equivariance::plain;
    return ChainMap(g.source(), f.target(), compose(f.matrix(), g.matrix(), f.skew()), deg, eq);
}

ChainMap commutator_with_d(const ChainMap& h) {
    auto a = compose(ChainMap::differential(h.target()), h);
    auto b = compose(h, ChainMap::differential(h.source()));
    return a + b;
}

std::string describe_entry(const FreeComplex& src, const FreeComplex& tgt, int x, int y, const Coefficient& c) {
    return src.generator(x).name + " -> (" + to_string(c) + ") " + tgt.generator(y).name;
}

std::vector<std::string> homogeneity_issues(const ChainMap& f) {
    std::vector<std::string> out;
    const auto& S = *f.source();
    const auto& T = *f.target();
    Mode mode = f.mode();
    for (int x = 0; x < S.size(); ++x) {
        Grading want = f.image_grading(x);
        for (const auto& [y, c] : f.matrix().column(x))
            for (const auto& m : c.terms())
                if (T.grading(y) + shift_of(mode, m) != want) {
                    out.push_back("inhomogeneous entry " + describe_entry(S, T, x, y, Coefficient::of(mode, m)) +
                                  ": lands in " + (T.grading(y) + shift_of(mode, m)).to_string() + ", expected " +
                                  want.to_string());
                }
    }
    return out;
}

ComplexReport validate_complex(const FreeComplex& c) {
    ComplexReport r;
    const auto& d = c.differential();
    auto dd = compose(d, d);
    for (int x = 0; x < c.size(); ++x)
        for (const auto& [y, k] : dd.column(x)) {
            r.d_squared_zero = false;
            r.issues.push_back("d^2 != 0: " + describe_entry(c, c, x, y, k));
        }
    auto self = std::make_shared<const FreeComplex>(c);
    auto h = homogeneity_issues(ChainMap::differential(self));
    if (!h.empty()) r.homogeneous = false;
    r.issues.insert(r.issues.end(), h.begin(), h.end());
    return r;
}

MapReport validate_chain_map(const ChainMap& f) {
    MapReport r;
    auto h = homogeneity_issues(f);
    if (!h.empty()) r.homogeneous = false;
    r.issues = h;
    auto comm = commutator_with_d(f);
    const auto& S = *f.source();
    const auto& T = *f.target();
    for (int x = 0; x < S.size(); ++x)
        for (const auto& [y, k] : comm.matrix().column(x)) {
            r.commutes = false;
            r.issues.push_back("f d + d f != 0: " + describe_entry(S, T, x, y, k));
        }
    return r;
}

// ---- derivatives ---------------------------------------------------------------

static ChainMap derivative_map(const ComplexPtr& c, int var) {
    Mode mode = c->mode();
    const auto& d = c->differential();
    Matrix m(mode, c->size(), c->size());
    for (int x = 0; x < c->size(); ++x)
        for (const auto& [y, k] : d.column(x)) m.add(y, x, derivative(k, var));
    Monomial v;
    v.exp[var] = 1;
    Grading deg = differential_degree(mode) - shift_of(mode, v);
    return ChainMap(c, c, std::move(m), deg);
}

ChainMap phi(const ComplexPtr& c, int component) {
    Mode mode = c->mode();
    if (component < 0 || (mode.two_variable() ? component >= mode.components : component != 0))
        throw ComplexError("phi: component out of range");
    return derivative_map(c, mode.two_variable() ? 2 * component : 0);
}

ChainMap psi(const ComplexPtr& c, int component) {
    Mode mode = c->mode();
    if (!mode.two_variable()) throw ComplexError("psi needs a two-variable complex");
    if (component < 0 || component >= mode.components) throw ComplexError("psi: component out of range");
    return derivative_map(c, 2 * component + 1);
}

ChainMap mixed_derivative(const ComplexPtr& c, int i, int j) {
    Mode mode = c->mode();
    if (!mode.two_variable()) throw ComplexError("mixed derivative needs a two-variable complex");
    const auto& d = c->differential();
    Matrix m(mode, c->size(), c->size());
    for (int x = 0; x < c->size(); ++x)
        for (const auto& [y, k] : d.column(x)) m.add(y, x, derivative(derivative(k, 2 * i), 2 * j + 1));
    Monomial uv;
    uv.exp[2 * i] = 1;
    uv.exp[2 * j + 1] += 1;
    Grading deg = differential_degree(mode) - shift_of(mode, uv);
    return ChainMap(c, c, std::move(m), deg);
}

// ---- cone and tensor -------------------------------------------------------------

ComplexPtr mapping_cone(const ChainMap& f) {
    if (f.skew()) throw ComplexError("mapping cone of a skew map");
    const auto& S = *f.source();
    const auto& T = *f.target();
    Mode mode = S.mode();
    // Put target generators at grading gr - deg(f) + d_deg so that f has degree d_deg in the cone.
    Grading tshift = differential_degree(mode) - f.degree();
    std::vector<Generator> gens;
    for (const auto& g : S.generators()) gens.push_back({"src:" + g.name, g.grading});
    for (const auto& g : T.generators()) gens.push_back({"tgt:" + g.name, g.grading + tshift});
    int ns = S.size(), n = ns + T.size();
    Matrix d(mode, n, n);
    for (int x = 0; x < ns; ++x) {
        for (const auto& [y, k] : S.differential().column(x)) d.add(y, x, k);
        for (const auto& [y, k] : f.matrix().column(x)) d.add(ns + y, x, k);
    }
    for (int x = 0; x < T.size(); ++x)
        for (const auto& [y, k] : T.differential().column(x)) d.add(ns + y, ns + x, k);
    return std::make_shared<const FreeComplex>(mode, std::move(gens), std::move(d));
}

ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b) {
    Mode mode = a->mode();
    if (!(b->mode() == mode)) throw ComplexError("tensor of complexes over different rings");
    int na = a->size(), nb = b->size();
    std::vector<Generator> gens;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            gens.push_back({a->generator(i).name + "|" + b->generator(j).name, a->grading(i) + b->grading(j)});
    Matrix d(mode, na * nb, na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            for (const auto& [y, k] : a->differential().column(i)) d.add(y * nb + j, i * nb + j, k);
            for (const auto& [y, k] : b->differential().column(j)) d.add(i * nb + y, i * nb + j, k);
        }
    return std::make_shared<const FreeComplex>(mode, std::move(gens), std::move(d));
}

ChainMap tensor(const ChainMap& f, const ChainMap& g, const ComplexPtr& src, const ComplexPtr& tgt) {
    if (f.skew() || g.skew()) throw ComplexError("tensor of skew maps");
    Mode mode = f.mode();
    int nb = g.source()->size(), tb = g.target()->size();
    Matrix m(mode, tgt->size(), src->size());
    for (int i = 0; i < f.source()->size(); ++i)
        for (int j = 0; j < nb; ++j)
            for (const auto& [y1, k1] : f.matrix().column(i))
                for (const auto& [y2, k2] : g.matrix().column(j)) m.add(y1 * tb + y2, i * nb + j, k1 * k2);
    return ChainMap(src, tgt, std::move(m), f.degree() + g.degree());
}

}  // namespace ihf
