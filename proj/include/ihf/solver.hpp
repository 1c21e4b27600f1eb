#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ihf/bits.hpp"
#include "ihf/complex.hpp"

namespace ihf {

// Dense F_2 system A z = b solved by Gaussian elimination.  Free variables are set to zero,
// so the particular solution is deterministic.
class F2System {
  public:
    explicit F2System(int unknowns) : n_(unknowns) {}
    int unknowns() const { return n_; }
    int equations() const { return static_cast<int>(rows_.size()); }
    // Returns the row index; rhs bit starts at zero.
    int add_equation();
    void set(int eq, int var) { rows_[eq].flip(var); }
    void set_rhs(int eq) { rhs_[eq] = !rhs_[eq]; }

    std::optional<BitVec> solve() const;
    std::vector<BitVec> nullspace() const;
    int rank() const;

  private:
    int n_;
    std::vector<BitVec> rows_;
    std::vector<char> rhs_;
    struct Reduced {
        std::vector<BitVec> rows;
        std::vector<char> rhs;
        std::vector<int> pivot_col;
        bool consistent = true;
    };
    Reduced reduce() const;
};

// One unknown coefficient: the monomial m in the entry source x -> target y of an unknown map.
struct Slot {
    int x;
    int y;
    Monomial m;
};

// All slots allowed by homogeneity for a map S -> T of the given degree.
std::vector<Slot> enumerate_slots(const FreeComplex& S, const FreeComplex& T, const Grading& degree, Equivariance eq);

ChainMap assemble(const ComplexPtr& S, const ComplexPtr& T, const Grading& degree, Equivariance eq,
                  const std::vector<Slot>& slots, const BitVec& values, int offset = 0);

// h with ∂h + h∂ = f + g, if one exists.
std::optional<ChainMap> homotopy_solve(const ChainMap& f, const ChainMap& g);

struct HomotopyInverse {
    ChainMap g;   // T -> S
    ChainMap k;   // g f + id = ∂k + k∂ on S
    ChainMap kp;  // f g + id = ∂k' + k'∂ on T
};
std::optional<HomotopyInverse> find_homotopy_inverse(const ChainMap& f);

// Basis of the F_2-space of chain maps S -> T of the given degree.
std::vector<ChainMap> chain_map_space(const ComplexPtr& S, const ComplexPtr& T, const Grading& degree,
                                      Equivariance eq = Equivariance::plain);

ChainMap random_combination(const std::vector<ChainMap>& basis, const ChainMap& zero, std::mt19937_64& rng);

}  // namespace ihf
