#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

// 2x2 matrices over Z/nZ and the projective line P^1(Z/nZ).
//
// A matrix is stored row-major without its modulus; every operation takes
// the modulus explicitly.  Moduli are capped at 65535 so a matrix packs
// into a 64-bit hash key.

namespace x0iso {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr u32 kMaxModulus = 65535;

struct Mat2 {
  std::array<u32, 4> e{1, 0, 0, 1};  // a b / c d

  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

inline u64 pack(const Mat2& m) {
  return (u64(m.e[0]) << 48) | (u64(m.e[1]) << 32) | (u64(m.e[2]) << 16) |
         u64(m.e[3]);
}

Mat2 identity(u32 n);
Mat2 reduce(const Mat2& m, u32 n);       // entrywise reduction to a divisor modulus
Mat2 mat_mul(const Mat2& x, const Mat2& y, u32 n);
u32 det(const Mat2& m, u32 n);
bool is_invertible(const Mat2& m, u32 n);
Mat2 mat_inv(const Mat2& m, u32 n);      // throws std::domain_error if det not a unit
Mat2 mat_pow(Mat2 m, u64 k, u32 n);

u32 mod_inv(u32 a, u32 n);               // throws std::domain_error if gcd(a,n) != 1

// P^1(Z/aZ): primitive vectors (x,y), gcd(x,y,a) = 1, up to unit scaling.
// Canonical representative: lexicographically smallest unit multiple.
struct P1Point {
  u32 x = 0, y = 0;

  friend bool operator==(const P1Point&, const P1Point&) = default;
  friend auto operator<=>(const P1Point&, const P1Point&) = default;
};

// Point count psi(a) = a * prod_{p | a} (1 + 1/p); also [SL2(Z):Gamma_0(a)].
u64 psi(u64 a);

P1Point p1_normalize(i64 x, i64 y, u32 a);
std::vector<P1Point> p1_points(u32 a);           // sorted canonical reps
P1Point p1_apply(const Mat2& m, P1Point v, u32 a);  // v -> M v (column action)

std::vector<u32> units_mod(u32 a);

// Factorization helpers shared across modules.
std::vector<std::pair<u64, int>> factorize(u64 n);
std::vector<u64> divisors(u64 n);                // ascending
std::vector<u64> prime_powers(u64 n);            // p^k exactly dividing n, ascending p
u64 euler_phi(u64 n);

}  // namespace x0iso
