#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ihf/complex.hpp"

namespace ihf {

using Point = std::vector<int>;

// Hyperbox of chain complexes of size d = (d_1, ..., d_n): a complex C^ε at every lattice point
// ε in E(d), and maps D^{ε,ε'} for ε < ε' with |ε' - ε|_∞ <= 1.  The internal differential
// D^{ε,ε} is the differential of C^ε.  Arrows carry no grading check.
class Hyperbox {
  public:
    Hyperbox(Mode mode, std::vector<int> size);

    Mode mode() const { return mode_; }
    const std::vector<int>& size() const { return size_; }
    int dim() const { return static_cast<int>(size_.size()); }
    int num_points() const { return static_cast<int>(cells_.size()); }
    int index(const Point& e) const;
    Point point(int idx) const;
    bool contains(const Point& e) const;

    void set_cell(const Point& e, ComplexPtr c);
    const ComplexPtr& cell(const Point& e) const { return cells_.at(index(e)); }
    const ComplexPtr& cell(int idx) const { return cells_.at(idx); }

    void set_arrow(const Point& from, const Point& to, Matrix m);
    void add_to_arrow(const Point& from, const Point& to, const Matrix& m);
    // nullptr when the arrow is zero / absent.
    const Matrix* arrow(const Point& from, const Point& to) const;
    const Matrix* arrow(int from, int to) const;
    const std::map<std::pair<int, int>, Matrix>& arrows() const { return arrows_; }

    // Processing order used by the compression that produced this box, if any.
    std::vector<int> axis_order;

    bool complete() const;  // every cell assigned

  private:
    Mode mode_;
    std::vector<int> size_;
    std::vector<ComplexPtr> cells_;
    std::map<std::pair<int, int>, Matrix> arrows_;
};

bool arrow_allowed(const Point& from, const Point& to);

struct BoxFailure {
    Point from;
    Point to;
    std::string what;
};

struct HyperboxReport {
    bool ok = true;
    int relations_checked = 0;
    std::vector<BoxFailure> failures;
};

// Checks Σ_{ε <= ε' <= ε''} D^{ε',ε''} ∘ D^{ε,ε'} = 0 for all ε <= ε'' with |ε'' - ε|_∞ <= 1.
HyperboxReport validate_hyperbox(const Hyperbox& h);

// Glue b after a along an axis; the shared faces must agree exactly.
Hyperbox stack(const Hyperbox& a, const Hyperbox& b, int axis);

Hyperbox compress_axis(const Hyperbox& h, int axis);
// Compress along the axes in the given processing order (default: last axis first).
Hyperbox compress(const Hyperbox& h, std::vector<int> axis_order = {});

std::string point_string(const Point& e);

}  // namespace ihf
