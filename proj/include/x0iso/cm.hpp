#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "x0iso/rational.hpp"
#include "x0iso/zmod.hpp"

namespace x0iso {

// Imaginary quadratic order of discriminant f^2 * field_discriminant.
struct CMOrder {
  i64 discriminant;
  i64 conductor;
  i64 field_discriminant;
  u64 class_number;
};

// Split prime past the class-number bound, certifying an isolated point of
// degree <= degree_bound on X0(ell).
struct CMWitness {
  u64 ell;
  u64 degree_bound;  // 2 h
};

// The 13 rational j-invariants with complex multiplication.
const std::vector<std::pair<Rational, CMOrder>>& cm_j_table();
std::optional<CMOrder> is_cm_j(const Rational& j);

int kronecker(i64 a, i64 n);
bool is_prime_u64(u64 n);

// Count of reduced primitive binary quadratic forms of discriminant d;
// d < 0 and d = 0 or 1 mod 4.
u64 class_number(i64 d);

// Class numbers of every valid discriminant d with lo <= d <= hi < 0,
// ordered by decreasing d.
std::vector<u64> class_number_range(i64 lo, i64 hi);
std::vector<u64> class_number_range_serial(i64 lo, i64 hi);

// Smallest prime ell with kronecker(disc, ell) = 1 and
// 119 (ell + 1) > 48000 h, evaluated in exact rational arithmetic.
CMWitness cm_witness(const CMOrder& order);

}  // namespace x0iso
