#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihf/complex.hpp"
#include "ihf/homology.hpp"
#include "ihf/knots.hpp"

namespace ihf {

class SurgeryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSeed = 0x1f2e3d4c5b6a7988ULL;

struct FlipResult {
    ChainMap map;        // B~_0 -> B_0, a homotopy equivalence
    bool from_input;     // taken from the knot data rather than searched
    int candidates_tried;
};

// The identification B~ -> B of the two copies of CF(S^3).
FlipResult build_flip(const KnotComplex& k, std::uint64_t seed = kDefaultSeed);

struct ConePiece {
    FlagKind kind;  // A or B
    int s;
    int offset;                // first generator index in the cone
    int count;
    std::int64_t shift_twice;  // grading shift of this piece
};

struct SurgeryOptions {
    std::optional<int> bound;
    std::uint64_t seed = kDefaultSeed;
};

struct SurgeryCone {
    KnotPtr knot;
    int framing = 0;  // m
    int bound = 0;    // b
    bool involutive = false;
    std::optional<FlipResult> flip;
    std::int64_t flip_degree_twice = 0;
    std::vector<ConePiece> pieces;
    ComplexPtr plain;                  // X over F[U]
    std::optional<ChainMap> iota;      // iota_X on X
    std::map<int, ChainMap> H;         // H_s: B~_s -> B_{-s}
    std::map<int, Matrix> iota_B;      // iota_B: B_t -> B_{m-t}
    ComplexPtr total;                  // XI over F[U,Q]/Q^2 (involutive) or X

    int classes() const { return framing < 0 ? -framing : framing; }
    int spin_class(int s) const;
    int generator_class(int gen) const;
    const ConePiece* piece(FlagKind kind, int s) const;
};

int default_bound(const KnotComplex& k, int framing);

// Truncated cone X for framing n.
SurgeryCone build_cone(KnotPtr k, int n, const SurgeryOptions& opt = {});
// Involutive cone XI for framing 2n.
SurgeryCone build_involutive_cone(KnotPtr k, int n, const SurgeryOptions& opt = {});

struct ClassHomology {
    int spin_class;
    bool self_conjugate;
    GradedHomology homology;
};

struct ConeReport {
    bool d_squared_zero = false;
    bool homogeneous = false;
    std::vector<ClassHomology> classes;
    // involutive only
    bool iota_chain_map = false;
    bool iota_squared_homotopic = false;
    bool length_two_relation = false;
    int self_conjugate_towers_level0 = 0;
    int self_conjugate_towers_level1 = 0;
    int self_conjugate_towers_total = 0;
};
ConeReport analyze_cone(const SurgeryCone& x);

// Generators of a complex kept by index; the caller guarantees the result is a sub-, quotient or
// summand complex.
ComplexPtr restrict_complex(const ComplexPtr& c, const std::vector<int>& keep);

struct CobordismMap {
    ComplexPtr bi;  // BI_n
    ChainMap J;     // XI -> BI_n
};
CobordismMap cobordism_map_J(const SurgeryCone& x);

// Rank of the induced map in each grading of H/U^delta.
std::map<std::int64_t, int> image_profile(const ChainMap& f_u, int delta);

}  // namespace ihf
