#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ihf/complex.hpp"
#include "ihf/involutive.hpp"

namespace ihf {

// Knot or link Floer complex over F[U_i, V_i] with its skew-equivariant involution.
struct KnotComplex {
    ComplexPtr base;
    ChainMap iota_k;
    std::optional<ChainMap> flip;  // optional B~_0 -> B_0 equivalence supplied with the input
};
using KnotPtr = std::shared_ptr<const KnotComplex>;

struct IotaKReport {
    bool two_variable = true;
    bool complex_ok = true;
    bool skew = true;
    bool swaps_gradings = true;  // homogeneous of degree zero as a skew map
    bool chain_map = true;
    bool squared_homotopic = true;
    bool squared_exact = false;  // iota_K^2 equals the target on the nose
    std::optional<ChainMap> homotopy;
    std::vector<std::string> issues;
    bool ok() const { return two_variable && complex_ok && skew && swaps_gradings && chain_map && squared_homotopic; }
};

// (id + Φ_l Ψ_l) ... (id + Φ_1 Ψ_1).
ChainMap link_square_target(const ComplexPtr& c);
IotaKReport validate_iota_k(const KnotComplex& k);

// Alexander gradings of all generators (doubled), for a knot (one component).
std::vector<std::int64_t> alexander_twice_all(const FreeComplex& c);

enum class FlagKind { A, B, Btilde };

// F[U] complex obtained from a knot complex: generator x stands for U_1^a V_1^b x in the
// Alexander-zero slice, with (a, b) the recorded offsets (b may be negative).
struct FlaggedSubcomplex {
    FlagKind kind;
    int s = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> offsets;
    ComplexPtr complex;
};

FlaggedSubcomplex extract_flagged(const FreeComplex& knot, FlagKind kind, int s = 0, std::string prefix = {});

// Map between flagged complexes induced by a two-variable map (plain or skew), multiplied by
// U^prefactor (prefactor may be negative).
ChainMap slice_map(const FlaggedSubcomplex& src, const FlaggedSubcomplex& tgt, const ChainMap& uv_map,
                   std::int64_t prefactor);
// The map A_s -> B_s, A_s -> B~_s, ... induced by the identity.
ChainMap slice_inclusion(const FlaggedSubcomplex& src, const FlaggedSubcomplex& tgt);

// A_0 with iota_A = iota_K restricted.
IotaComplex collapse_to_u(const KnotComplex& k);

std::string flag_name(FlagKind kind);

}  // namespace ihf
