#include "x0iso/zmod.hpp"

#include <algorithm>
#include <numeric>

namespace x0iso {

namespace {

u64 gcd3(u64 a, u64 b, u64 c) { return std::gcd(std::gcd(a, b), c); }

void check_modulus(u32 n) {
  if (n == 0 || n > kMaxModulus)
    throw std::invalid_argument("modulus out of range: " + std::to_string(n));
}

}  // namespace

Mat2 identity(u32 n) {
  check_modulus(n);
  u32 one = 1 % n;
  return Mat2{{one, 0, 0, one}};
}

Mat2 reduce(const Mat2& m, u32 n) {
  check_modulus(n);
  return Mat2{{m.e[0] % n, m.e[1] % n, m.e[2] % n, m.e[3] % n}};
}

Mat2 mat_mul(const Mat2& x, const Mat2& y, u32 n) {
  u64 a = u64(x.e[0]) * y.e[0] + u64(x.e[1]) * y.e[2];
  u64 b = u64(x.e[0]) * y.e[1] + u64(x.e[1]) * y.e[3];
  u64 c = u64(x.e[2]) * y.e[0] + u64(x.e[3]) * y.e[2];
  u64 d = u64(x.e[2]) * y.e[1] + u64(x.e[3]) * y.e[3];
  return Mat2{{u32(a % n), u32(b % n), u32(c % n), u32(d % n)}};
}

u32 det(const Mat2& m, u32 n) {
  u64 ad = u64(m.e[0]) * m.e[3] % n;
  u64 bc = u64(m.e[1]) * m.e[2] % n;
  return u32((ad + n - bc) % n);
}

bool is_invertible(const Mat2& m, u32 n) {
  return std::gcd<u64, u64>(det(m, n), n) == 1;
}

u32 mod_inv(u32 a, u32 n) {
  i64 t = 0, nt = 1, r = n, nr = a % n;
  while (nr != 0) {
    i64 q = r / nr;
    i64 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1)
    throw std::domain_error("not a unit mod " + std::to_string(n) + ": " +
                            std::to_string(a));
  return u32((t % i64(n) + n) % n);
}

Mat2 mat_inv(const Mat2& m, u32 n) {
  u32 di = mod_inv(det(m, n), n);
  u64 a = m.e[0], b = m.e[1], c = m.e[2], d = m.e[3];
  return Mat2{{u32(d * di % n), u32((n - b % n) * di % n),
               u32((n - c % n) * di % n), u32(a * di % n)}};
}

Mat2 mat_pow(Mat2 m, u64 k, u32 n) {
  Mat2 r = identity(n);
  while (k) {
    if (k & 1) r = mat_mul(r, m, n);
    m = mat_mul(m, m, n);
    k >>= 1;
  }
  return r;
}

u64 psi(u64 a) {
  u64 r = a;
  for (auto [p, k] : factorize(a)) r = r / p * (p + 1);
  return r;
}

std::vector<u32> units_mod(u32 a) {
  std::vector<u32> u;
  for (u32 x = 1; x < a; ++x)
    if (std::gcd(x, a) == 1) u.push_back(x);
  return u;
}

P1Point p1_normalize(i64 x, i64 y, u32 a) {
  check_modulus(a);
  if (a == 1) return {0, 0};
  u32 xm = u32(((x % a) + a) % a), ym = u32(((y % a) + a) % a);
  if (gcd3(xm, ym, a) != 1)
    throw std::invalid_argument("vector not primitive mod " +
                                std::to_string(a));
  // smallest unit multiple in lexicographic order
  P1Point best{xm, ym};
  for (u32 u = 2; u < a; ++u) {
    if (std::gcd(u, a) != 1) continue;
    P1Point c{u32(u64(u) * xm % a), u32(u64(u) * ym % a)};
    if (c < best) best = c;
  }
  return best;
}

std::vector<P1Point> p1_points(u32 a) {
  check_modulus(a);
  if (a == 1) return {P1Point{0, 0}};
  std::vector<P1Point> pts;
  for (u32 x = 0; x < a; ++x)
    for (u32 y = 0; y < a; ++y) {
      if (gcd3(x, y, a) != 1) continue;
      P1Point c = p1_normalize(x, y, a);
      if (c.x == x && c.y == y) pts.push_back(c);
    }
  // enumeration order is already lexicographic
  return pts;
}

P1Point p1_apply(const Mat2& m, P1Point v, u32 a) {
  if (a == 1) return {0, 0};
  i64 x = i64(u64(m.e[0]) * v.x % a + u64(m.e[1]) * v.y % a);
  i64 y = i64(u64(m.e[2]) * v.x % a + u64(m.e[3]) * v.y % a);
  return p1_normalize(x, y, a);
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> f;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    int k = 0;
    while (n % d == 0) n /= d, ++k;
    f.emplace_back(d, k);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, k] : factorize(n)) {
    std::size_t m = ds.size();
    u64 pe = 1;
    for (int i = 1; i <= k; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pe);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<u64> prime_powers(u64 n) {
  std::vector<u64> qs;
  for (auto [p, k] : factorize(n)) {
    u64 q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    qs.push_back(q);
  }
  return qs;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
  return r;
}

}  // namespace x0iso
