#pragma once

#include "x0iso/group.hpp"

// Invariants of the modular curves X_0(n) and of modular curves attached to
// subgroups of GL2(Z/nZ).

namespace x0iso {

struct CurveInvariants {
  u64 n = 1;
  u64 psi = 1;    // [SL2(Z) : Gamma_0(n)]
  u64 nu2 = 0;    // elliptic points of order 2
  u64 nu3 = 0;    // elliptic points of order 3
  u64 nuinf = 0;  // cusps
  u64 genus = 0;
};

CurveInvariants x0_invariants(u64 n);
u64 genus_x0(u64 n);

// Degree of the natural projection X_0(a*b) -> X_0(a):
//   b * prod_{p | b, p not | a} (1 + 1/p).
u64 degree_projection(u64 a, u64 b);

// Genus of the modular curve X_H for H <= GL2(Z/nZ) with surjective
// determinant: take +-(H meet SL2), enumerate right cosets in SL2(Z/nZ)
// (components under left multiplication by the intersection generators),
// act by S = (0,-1;1,0) and T = (1,1;0,1) on the right, and read mu,
// eps2, eps3, epsinf off the two coset permutations.
//
// Throws ResourceCapError when |SL2(Z/n)| exceeds the enumeration cap and
// std::invalid_argument when det is not surjective.
u64 genus_of_image(const GL2Subgroup& h,
                   u64 cap = GL2Subgroup::kDefaultEnumerationCap);

}  // namespace x0iso
