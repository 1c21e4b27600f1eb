#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihf/bits.hpp"
#include "ihf/complex.hpp"

namespace ihf {

struct TorsionSummand {
    Grading anchor;  // grading of the generator y with d x = U^order y
    int order = 0;
    auto operator<=>(const TorsionSummand&) const = default;
    bool operator==(const TorsionSummand&) const = default;
};

// Entry of a map between homology modules: summand col -> U^u_power * summand row.
struct HomologyEntry {
    int row = 0;
    int col = 0;
    std::uint32_t u_power = 0;
    auto operator<=>(const HomologyEntry&) const = default;
    bool operator==(const HomologyEntry&) const = default;
};

// H_*(C) over F[U] as a sum of towers F[U] and torsion F[U]/U^k.  Summands are numbered
// towers first, then torsion, both in sorted order.
struct GradedHomology {
    std::vector<Grading> towers;
    std::vector<TorsionSummand> torsion;
    std::optional<std::vector<HomologyEntry>> q_action;  // only for UQ complexes

    int rank() const { return static_cast<int>(towers.size() + torsion.size()); }
    bool operator==(const GradedHomology&) const = default;
    std::string to_string() const;
};

// dim over F_2 of H_*(C / U^delta) per doubled grading, read off from the decomposition.
std::map<std::int64_t, int> truncated_dimensions(const GradedHomology& h, int delta);

enum class PivotOrder { forward, reverse };

// Result of the graded Smith reduction of an F[U] complex.  Because every entry of a
// homogeneous F[U] matrix is 0 or a single power of U fixed by the gradings, basis changes
// are tracked as F_2 bit matrices with implied exponents.
struct SmithDecomposition {
    struct Summand {
        int generator = -1;  // basis element carrying the class (tower or y)
        int partner = -1;    // x with d x = U^order y; -1 for towers
        int order = 0;       // 0 for towers
        Grading anchor;
    };
    ComplexPtr complex;
    std::vector<Summand> summands;
    std::vector<BitVec> basis;   // basis[i]: new basis element i in old generators
    std::vector<BitVec> coords;  // coords[i]: coordinate i of a chain, as a functional on old generators

    GradedHomology homology() const;
};

SmithDecomposition smith_reduce(const ComplexPtr& c, PivotOrder order = PivotOrder::forward);

// Homology of a U or UQ complex.  UV complexes are rejected: collapse or slice first.
GradedHomology homology(const ComplexPtr& c, PivotOrder order = PivotOrder::forward);

// Map induced on homology by a plain homogeneous F[U] chain map.
std::vector<HomologyEntry> induced_map(const ChainMap& f, const SmithDecomposition& src,
                                       const SmithDecomposition& tgt);

// F[U,Q]/Q^2 complex viewed as an F[U] complex on generators x and Q*x.
ComplexPtr underlying_u_complex(const ComplexPtr& uq);
ChainMap underlying_u_map(const ChainMap& f, const ComplexPtr& src_u, const ComplexPtr& tgt_u);
ChainMap q_multiplication(const ComplexPtr& underlying);

}  // namespace ihf
