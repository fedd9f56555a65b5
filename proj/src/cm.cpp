#include "x0iso/cm.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace x0iso {

const std::vector<std::pair<Rational, CMOrder>>& cm_j_table() {
  static const std::vector<std::pair<Rational, CMOrder>> table = [] {
    // (j, discriminant, conductor, field discriminant)
    const std::pair<i64, std::array<i64, 3>> raw[] = {
        {0, {-3, 1, -3}},
        {1728, {-4, 1, -4}},
        {-3375, {-7, 1, -7}},
        {8000, {-8, 1, -8}},
        {-32768, {-11, 1, -11}},
        {54000, {-12, 2, -3}},
        {287496, {-16, 2, -4}},
        {-884736, {-19, 1, -19}},
        {-12288000, {-27, 3, -3}},
        {16581375, {-28, 2, -7}},
        {-884736000, {-43, 1, -43}},
        {-147197952000, {-67, 1, -67}},
        {-262537412640768000, {-163, 1, -163}},
    };
    std::vector<std::pair<Rational, CMOrder>> t;
    for (const auto& [j, o] : raw) {
      if (o[0] != o[1] * o[1] * o[2])
        throw std::logic_error("CM table discriminant mismatch");
      t.emplace_back(Rational(j),
                     CMOrder{o[0], o[1], o[2], class_number(o[0])});
    }
    return t;
  }();
  return table;
}

std::optional<CMOrder> is_cm_j(const Rational& j) {
  for (const auto& [cj, order] : cm_j_table())
    if (cj == j) return order;
  return std::nullopt;
}

int kronecker(i64 a, i64 n) {
  static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (2|x) by x mod 8
  auto mod8 = [](i64 x) { return int(((x % 8) + 8) % 8); };
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) k = tab2[mod8(a)];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  while (a != 0) {
    if (a < 0) {
      a = -a;
      if (n % 4 == 3) k = -k;
    }
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) k *= tab2[mod8(n)];
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    i64 r = a;
    a = n % r;
    n = r;
  }
  return n == 1 ? k : 0;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  auto mulmod = [n](u64 a, u64 b) { return u64((unsigned __int128)a * b % n); };
  auto powmod = [&](u64 a, u64 e) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 class_number(i64 d) {
  if (d >= 0 || ((d % 4) + 4) % 4 > 1)
    throw std::invalid_argument("discriminant must be negative, 0 or 1 mod 4");
  u64 h = 0;
  for (i64 b = (d % 2 == 0) ? 0 : 1; 3 * b * b <= -d; b += 2) {
    i64 rem = (b * b - d) / 4;
    for (i64 a = std::max<i64>(b, 1); a * a <= rem; ++a) {
      if (rem % a != 0) continue;
      i64 c = rem / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      h += (b == 0 || b == a || a == c) ? 1 : 2;
    }
  }
  return h;
}

namespace {

std::vector<i64> valid_discs(i64 lo, i64 hi) {
  if (lo > hi || hi >= 0)
    throw std::invalid_argument("discriminant range must be negative");
  std::vector<i64> discs;
  for (i64 d = hi; d >= lo; --d)
    if (((d % 4) + 4) % 4 <= 1) discs.push_back(d);
  return discs;
}

}  // namespace

std::vector<u64> class_number_range(i64 lo, i64 hi) {
  std::vector<i64> discs = valid_discs(lo, hi);
  std::vector<u64> h(discs.size());
  const std::ptrdiff_t cnt = std::ptrdiff_t(discs.size());
#if defined(X0ISO_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 64)
#endif
  for (std::ptrdiff_t i = 0; i < cnt; ++i)
    h[std::size_t(i)] = class_number(discs[std::size_t(i)]);
  return h;
}

std::vector<u64> class_number_range_serial(i64 lo, i64 hi) {
  std::vector<i64> discs = valid_discs(lo, hi);
  std::vector<u64> h(discs.size());
  for (std::size_t i = 0; i < discs.size(); ++i) h[i] = class_number(discs[i]);
  return h;
}

CMWitness cm_witness(const CMOrder& order) {
  const Rational bound =
      Rational(48000, 119) * Rational(i64(order.class_number)) - Rational(1);
  for (u64 ell = 2;; ++ell) {
    if (!is_prime_u64(ell) || Rational(i64(ell)) <= bound) continue;
    if (kronecker(order.discriminant, i64(ell)) != 1) continue;
    u64 deg = 2 * order.class_number;
    if (!(Rational(i64(deg)) < Rational(119, 24000) * Rational(i64(ell + 1))))
      throw std::logic_error("witness degree bound violated");
    return {ell, deg};
  }
}

}  // namespace x0iso
