#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ihf/grading.hpp"
#include "ihf/ring.hpp"

namespace ihf {

class ComplexError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Sparse matrix over the ring, stored by column: column j is the image of basis element j.
class Matrix {
  public:
    using Column = std::map<int, Coefficient>;

    Matrix() = default;
    Matrix(Mode mode, int rows, int cols) : mode_(mode), rows_(rows), cols_(cols) {}
    static Matrix identity(Mode mode, int n);

    Mode mode() const { return mode_; }
    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(cols_); }
    const Column& column(int c) const;
    Coefficient at(int r, int c) const;
    void add(int r, int c, const Coefficient& x);
    void add(int r, int c, const Monomial& m);
    bool is_zero() const;
    std::size_t nnz() const;

    Matrix& operator+=(const Matrix& o);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    bool operator==(const Matrix& o) const;

  private:
    Mode mode_{};
    int rows_ = 0;
    int cols_ = 0;
    std::map<int, Column> data_;  // only non-empty columns
};

// left ∘ right.  If left is skew-equivariant, the coefficients of right are conjugated first.
Matrix compose(const Matrix& left, const Matrix& right, bool left_skew = false);
Matrix conjugate_entries(const Matrix& m);
// Entry-wise ring scalar multiple (scalar on the left).
Matrix scale(const Coefficient& c, const Matrix& m);

struct Generator {
    std::string name;
    Grading grading;
    bool operator==(const Generator&) const = default;
};

class FreeComplex {
  public:
    FreeComplex(Mode mode, std::vector<Generator> generators, Matrix differential);

    Mode mode() const { return mode_; }
    int size() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& generator(int i) const { return gens_.at(i); }
    const Grading& grading(int i) const { return gens_.at(i).grading; }
    std::optional<int> index_of(std::string_view name) const;
    int require(std::string_view name) const;
    const Matrix& differential() const { return d_; }

    bool operator==(const FreeComplex& o) const;

  private:
    Mode mode_;
    std::vector<Generator> gens_;
    Matrix d_;
    std::unordered_map<std::string, int> index_;
};

using ComplexPtr = std::shared_ptr<const FreeComplex>;

bool same_complex(const ComplexPtr& a, const ComplexPtr& b);

class ComplexBuilder {
  public:
    explicit ComplexBuilder(Mode mode) : mode_(mode) {}
    int add_generator(std::string name, Grading g);
    void add_arrow(std::string_view from, std::string_view to, const Coefficient& c);
    void add_arrow(std::string_view from, std::string_view to, std::string_view coeff);
    void add_arrow(int from, int to, const Coefficient& c);
    ComplexPtr build() const;

  private:
    Mode mode_;
    std::vector<Generator> gens_;
    std::vector<std::tuple<int, int, Coefficient>> arrows_;
    int find(std::string_view name) const;
};

// Same complex with every grading shifted by delta.
ComplexPtr shifted(const ComplexPtr& c, const Grading& delta, std::string prefix = {});

enum class Equivariance { plain, skew };

class ChainMap {
  public:
    ChainMap(ComplexPtr source, ComplexPtr target, Matrix matrix, Grading degree,
             Equivariance eq = Equivariance::plain);

    static ChainMap identity(const ComplexPtr& c);
    static ChainMap zero(const ComplexPtr& source, const ComplexPtr& target, Grading degree,
                         Equivariance eq = Equivariance::plain);
    static ChainMap differential(const ComplexPtr& c);

    const ComplexPtr& source() const { return src_; }
    const ComplexPtr& target() const { return tgt_; }
    const Matrix& matrix() const { return m_; }
    Matrix& matrix() { return m_; }
    const Grading& degree() const { return degree_; }
    Equivariance equivariance() const { return eq_; }
    bool skew() const { return eq_ == Equivariance::skew; }
    Mode mode() const { return src_->mode(); }

    // Expected grading of f(x) for a generator x of the source.
    Grading image_grading(int x) const;
    bool is_zero() const { return m_.is_zero(); }

  private:
    ComplexPtr src_, tgt_;
    Matrix m_;
    Grading degree_;
    Equivariance eq_;
};

ChainMap operator+(const ChainMap& a, const ChainMap& b);
ChainMap compose(const ChainMap& f, const ChainMap& g);  // f ∘ g
ChainMap commutator_with_d(const ChainMap& h);             // ∂h + h∂
bool operator==(const ChainMap& a, const ChainMap& b);

struct ComplexReport {
    bool d_squared_zero = true;
    bool homogeneous = true;
    std::vector<std::string> issues;
    bool ok() const { return d_squared_zero && homogeneous; }
};
ComplexReport validate_complex(const FreeComplex& c);

struct MapReport {
    bool homogeneous = true;
    bool commutes = true;
    std::vector<std::string> issues;
    bool ok() const { return homogeneous && commutes; }
};
MapReport validate_chain_map(const ChainMap& f);
std::vector<std::string> homogeneity_issues(const ChainMap& f);

// Formal derivatives of the differential.  In U mode phi is d/dU; in UV modes phi is d/dU_i
// and psi is d/dV_i.
ChainMap phi(const ComplexPtr& c, int component = 0);
ChainMap psi(const ComplexPtr& c, int component = 0);
// d^2 ∂ / dU_i dV_j, used as the homotopy between phi_i psi_j and psi_j phi_i.
ChainMap mixed_derivative(const ComplexPtr& c, int i, int j);

// Cone of a plain chain map f: generators source ⊔ target, target shifted so the
// differential has degree -1.
ComplexPtr mapping_cone(const ChainMap& f);

ComplexPtr tensor(const ComplexPtr& a, const ComplexPtr& b);
ChainMap tensor(const ChainMap& f, const ChainMap& g, const ComplexPtr& src, const ComplexPtr& tgt);

std::string describe_entry(const FreeComplex& src, const FreeComplex& tgt, int x, int y,
                           const Coefficient& c);

}  // namespace ihf
