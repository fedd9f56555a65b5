#include "x0iso/curves.hpp"

#include <numeric>

namespace x0iso {

CurveInvariants x0_invariants(u64 n) {
  CurveInvariants ci;
  ci.n = n;
  ci.psi = psi(n);
  // nu2: 0 if 4 | n, else product over p | n of (1 + (-1|p)), where the
  // factor at p = 2 is 1; nu3: 0 if 9 | n, else product of (1 + (-3|p)),
  // factor 1 at p = 3 and 0 at any p = 2 mod 3 (including p = 2).
  if (n % 4 == 0) {
    ci.nu2 = 0;
  } else {
    ci.nu2 = 1;
    for (auto [p, k] : factorize(n)) {
      if (p == 2) continue;
      ci.nu2 *= (p % 4 == 1) ? 2 : 0;
    }
  }
  if (n % 9 == 0) {
    ci.nu3 = 0;
  } else {
    ci.nu3 = 1;
    for (auto [p, k] : factorize(n)) {
      if (p == 3) continue;
      ci.nu3 *= (p % 3 == 1) ? 2 : 0;
    }
  }
  ci.nuinf = 0;
  for (u64 d : divisors(n)) ci.nuinf += euler_phi(std::gcd(d, n / d));
  u64 g12 = 12 + ci.psi - 3 * ci.nu2 - 4 * ci.nu3 - 6 * ci.nuinf;
  if (g12 % 12 != 0) throw std::logic_error("non-integral genus");
  ci.genus = g12 / 12;
  return ci;
}

u64 genus_x0(u64 n) { return x0_invariants(n).genus; }

u64 degree_projection(u64 a, u64 b) {
  u64 num = b, den = 1;
  for (auto [p, k] : factorize(b)) {
    if (a % p != 0) {
      num *= p + 1;
      den *= p;
    }
  }
  if (num % den != 0) throw std::logic_error("projection degree not integral");
  return num / den;
}

u64 genus_of_image(const GL2Subgroup& h, u64 cap) {
  u32 n = h.modulus();
  if (n == 1) return 0;
  if (!h.det_surjective())
    throw std::invalid_argument("genus_of_image needs surjective determinant");
  if (sl2_order(n) > cap)
    throw ResourceCapError("SL2 enumeration exceeds cap " + std::to_string(cap));

  std::vector<Mat2> hgens = h.sl2_intersection_gens();
  Mat2 mi = reduce(Mat2{{n - 1u, 0, 0, n - 1u}}, n);
  if (mi != identity(n)) hgens.push_back(mi);  // adjoin -I

  Mat2 S{{0, n - 1u, 1 % n, 0}};
  Mat2 T{{1 % n, 1 % n, 0, 1 % n}};
  GL2Subgroup sl2(n, {S, T});
  std::vector<Mat2> elems = sl2.closure(cap);
  if (elems.size() != sl2_order(n)) throw std::logic_error("SL2 closure short");
  std::sort(elems.begin(), elems.end());
  std::unordered_map<u64, u32> index;
  index.reserve(elems.size() * 2);
  for (u32 i = 0; i < elems.size(); ++i) index.emplace(pack(elems[i]), i);

  // components under left multiplication by +-(H meet SL2) = right cosets
  std::vector<u32> comp(elems.size(), ~u32{0});
  std::vector<u32> rep;
  std::vector<u32> stack;
  for (u32 i = 0; i < elems.size(); ++i) {
    if (comp[i] != ~u32{0}) continue;
    u32 cid = u32(rep.size());
    rep.push_back(i);
    comp[i] = cid;
    stack.assign(1, i);
    while (!stack.empty()) {
      u32 x = stack.back();
      stack.pop_back();
      for (const Mat2& g : hgens) {
        u32 k = index.at(pack(mat_mul(g, elems[x], n)));
        if (comp[k] == ~u32{0}) {
          comp[k] = cid;
          stack.push_back(k);
        }
      }
    }
  }
  u64 mu = rep.size();

  auto coset_perm = [&](const Mat2& m) {
    std::vector<u32> perm(mu);
    for (u64 c = 0; c < mu; ++c)
      perm[c] = comp[index.at(pack(mat_mul(elems[rep[c]], m, n)))];
    return perm;
  };
  std::vector<u32> pS = coset_perm(S);
  std::vector<u32> pST = coset_perm(mat_mul(S, T, n));
  std::vector<u32> pT = coset_perm(T);

  u64 e2 = 0, e3 = 0, einf = 0;
  for (u64 c = 0; c < mu; ++c) {
    e2 += pS[c] == c;
    e3 += pST[c] == c;
  }
  std::vector<bool> seen(mu, false);
  for (u64 c = 0; c < mu; ++c) {
    if (seen[c]) continue;
    ++einf;
    for (u64 x = c; !seen[x]; x = pT[x]) seen[x] = true;
  }
  u64 g12 = 12 + mu - 3 * e2 - 4 * e3 - 6 * einf;
  if (g12 % 12 != 0) throw std::logic_error("non-integral image genus");
  return g12 / 12;
}

}  // namespace x0iso
