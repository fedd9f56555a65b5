#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "x0iso/zmod.hpp"

// Subgroups of GL2(Z/nZ) with a Schreier-Sims stabilizer chain.
//
// The chain acts on (Z/nZ)^2 through its prime-power CRT components; base
// points are the standard basis vectors of each component, so orbit tables
// stay below q^2 entries and the chain depth is at most twice the number of
// prime factors.  Fixing e1 and e2 in every component pins the matrix, so
// the base is faithful.  Among the remaining candidate base vectors the
// next one is picked greedily by largest orbit.

namespace x0iso {

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u64 gl2_order(u64 n);  // prod over p^k || n of p^{4k} (1-1/p)(1-1/p^2)
u64 sl2_order(u64 n);

class GL2Subgroup {
 public:
  // Generators are validated (invertible mod n) and reduced.
  GL2Subgroup(u32 n, std::vector<Mat2> gens);

  u32 modulus() const { return n_; }
  const std::vector<Mat2>& generators() const { return gens_; }

  u64 order() const { return order_; }
  u64 index() const;  // [GL2(Z/n) : G]
  bool contains(const Mat2& m) const;

  // Reduction to a divisor modulus; image group of the projection.
  GL2Subgroup project(u32 d) const;

  // Order of det(G) inside (Z/n)^*; det is surjective iff this equals phi(n).
  u64 det_image_order() const;
  bool det_surjective() const;

  // Generators of G meet SL2, from Schreier generators of the det map.
  std::vector<Mat2> sl2_intersection_gens() const;

  // Full element enumeration (oracle route; throws ResourceCapError beyond cap).
  std::vector<Mat2> closure(u64 cap = kDefaultEnumerationCap) const;

  static constexpr u64 kDefaultEnumerationCap = 2'000'000;

 private:
  struct Level {
    u64 q = 0;              // prime-power CRT component
    P1Point base;           // base vector in (Z/q)^2 (coordinates, not P^1)
    std::unordered_map<u64, Mat2> orbit;  // packed (x + q*y) -> transversal
  };

  u64 base_image(const Mat2& m, const Level& lv) const;
  // Sift m through levels [from, end); returns the first level whose orbit
  // misses the base image (m then holds the residue), or levels_.size().
  std::size_t sift(Mat2& m, std::size_t from) const;
  void build_chain();

  u32 n_;
  std::vector<Mat2> gens_;
  std::vector<Level> levels_;
  u64 order_ = 1;
};

// Same subgroup test: equal moduli, equal order, mutual generator membership.
bool same_subgroup(const GL2Subgroup& a, const GL2Subgroup& b);

// Primes p | N with |G mod p| != |GL2(F_p)|.  Primes not dividing N are
// surjective by convention.
std::vector<u64> nonsurjective_primes(const GL2Subgroup& g, u64 N);

struct ReducedLevelData {
  std::vector<u64> bad_primes;  // {2,3} union nonsurjective primes
  u64 m = 0;                    // 6 * prod of nonsurjective primes > 3
  u64 n_m = 0;                  // largest divisor of N supported on m's primes
  u64 m0 = 0;                   // level of the m-adic image
  bool preimage_warning = false;  // G(N) is the full preimage of a proper level
};

// Smallest divisor m0 of N_m at which the index of the projected image
// equals the index at N_m (divisors scanned ascending, first hit wins).
ReducedLevelData reduced_level(const GL2Subgroup& g, u64 N);

}  // namespace x0iso
