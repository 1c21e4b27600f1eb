#pragma once

#include "ihf/complex.hpp"
#include "ihf/hypercube.hpp"
#include "ihf/involutive.hpp"
#include "ihf/knots.hpp"

namespace ihf::fixtures {

KnotComplex unknot();
KnotComplex trefoil();       // right-handed trefoil
KnotComplex figure_eight();
// Trefoil ⊗ figure-eight as a two-component complex with iota_L = iota_T ⊗ iota_E.
KnotComplex trefoil_figure_eight_link();
// A small two-component complex with U_1 and V_2 arrows only.
ComplexPtr hopf_like_link();

IotaComplex s3();
IotaComplex s1xs2();  // two towers: not a valid iota-complex

// Squares for the two halves of the S^2 x S^2 cobordism: axis 0 is the cobordism direction,
// axis 1 the (1 + iota) direction, whose far copies are shifted down by one.
Hyperbox s2xs2_first_half();
Hyperbox s2xs2_second_half();

}  // namespace ihf::fixtures
