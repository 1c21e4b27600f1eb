#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ihf/complex.hpp"
#include "ihf/homology.hpp"
#include "ihf/hypercube.hpp"

namespace ihf {

// Free F[U] complex with a grading-preserving chain map iota, homotopy involutive.
struct IotaComplex {
    ComplexPtr base;
    ChainMap iota;
};
using IotaPtr = std::shared_ptr<const IotaComplex>;

struct IotaReport {
    bool over_u = true;           // F[U] ring, integer Maslov gradings
    bool one_tower = true;
    bool iota_degree_zero = true;
    bool iota_chain_map = true;
    bool iota_squared_homotopic = true;
    int towers = 0;
    std::optional<ChainMap> homotopy;  // iota^2 + id = ∂h + h∂
    std::vector<std::string> issues;
    bool ok() const { return over_u && one_tower && iota_degree_zero && iota_chain_map && iota_squared_homotopic; }
};
IotaReport validate_iota_complex(const IotaComplex& c);

// Pair (F, h): F: C -> C' of degree d and h of degree d + 1.
struct EnhancedMorphism {
    IotaPtr source;
    IotaPtr target;
    ChainMap F;
    ChainMap h;
};

EnhancedMorphism make_enhanced(IotaPtr source, IotaPtr target, ChainMap F, ChainMap h);
// Zero morphism with F of the given degree.
EnhancedMorphism zero_enhanced(IotaPtr source, IotaPtr target, Grading degree);
EnhancedMorphism operator+(const EnhancedMorphism& a, const EnhancedMorphism& b);
bool operator==(const EnhancedMorphism& a, const EnhancedMorphism& b);

// ∂(F, h) = (∂F + F∂, Fι + ι'F + ∂h + h∂).
EnhancedMorphism mor_differential(const EnhancedMorphism& m);
bool is_enhanced_chain_map(const EnhancedMorphism& m);

// second ∘ first = (F2 F1, F2 h1 + h2 F1).
EnhancedMorphism compose_enhanced(const EnhancedMorphism& second, const EnhancedMorphism& first);
// The alternative formula (F2 F1, F1 h2 + h1 F2).  It only typechecks for endomorphisms of a
// single complex; anything else raises.
EnhancedMorphism compose_enhanced_alternative(const EnhancedMorphism& second, const EnhancedMorphism& first);

// CFI(C) = C ⊗ F[Q]/Q^2 with differential ∂ + Q(1 + ι).
ComplexPtr build_cfi(const IotaComplex& c, bool validate = true);
// (F, h) ↦ F + Q h between the CFI complexes.
ChainMap to_cfi_map(const EnhancedMorphism& m, const ComplexPtr& cfi_source, const ComplexPtr& cfi_target);
ChainMap to_cfi_map(const EnhancedMorphism& m);

Coefficient lift_to_uq(const Coefficient& c, bool times_q = false);
Matrix lift_to_uq(const Matrix& m, bool times_q = false);

// Id + Q Φ on CFI(C), Φ the formal U-derivative of the differential of C.
ChainMap twist_automorphism(const IotaComplex& c, const ComplexPtr& cfi);

struct TwistReport {
    bool chain_map = false;
    bool squares_to_identity = false;
    bool homotopic_to_identity = false;
    bool phi_nonzero = false;
    std::optional<ChainMap> homotopy;
};
TwistReport check_twist(const IotaComplex& c);

// Commutative square of iota-complexes with enhanced edges
//     A --I--> B
//     |G       |H
//     v        v
//     C --F--> D
// and enhanced diagonal (J, j).
struct EnhancedSquare {
    IotaPtr A, B, C, D;
    EnhancedMorphism F, G, H, I;
    ChainMap J;
    ChainMap j;
};

struct SquareReport {
    std::array<bool, 4> edges_enhanced{};  // F, G, H, I
    bool diagonal_relation = false;          // FG + HI = ∂J + J∂
    bool top_relation = false;               // the length-three relation
    bool cube_valid = false;
    bool equivalent = false;
    std::vector<BoxFailure> failures;
};

// 3-cube: axis 0 is I/F, axis 1 is G/H, axis 2 is the iota direction.
Hyperbox enhanced_square_to_cube(const EnhancedSquare& sq);
SquareReport check_enhanced_square(const EnhancedSquare& sq);

// Reads a 2-dimensional hyperbox of size (1,1) with the given axis as the (1 + iota) direction
// as an enhanced morphism between the iota-complexes at the 0-level.
EnhancedMorphism square_to_enhanced(const Hyperbox& sq, int q_axis, const Grading& degree);

}  // namespace ihf
