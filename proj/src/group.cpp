#include "x0iso/group.hpp"

#include <algorithm>
#include <numeric>

namespace x0iso {

u64 gl2_order(u64 n) {
  if (n == 1) return 1;
  unsigned __int128 r = 1;
  for (auto [p, k] : factorize(n)) {
    unsigned __int128 term = 1;
    for (int i = 0; i < 4 * (k - 1); ++i) term *= p;
    term *= (p * p - p);
    term *= (p * p - 1);
    r *= term;
    if (r > ~u64{0}) throw std::overflow_error("gl2_order overflow");
  }
  return u64(r);
}

u64 sl2_order(u64 n) {
  if (n == 1) return 1;
  unsigned __int128 r = 1;
  for (auto [p, k] : factorize(n)) {
    unsigned __int128 term = 1;
    for (int i = 0; i < 3 * (k - 1); ++i) term *= p;
    term *= p;
    term *= (p * p - 1);
    r *= term;
    if (r > ~u64{0}) throw std::overflow_error("sl2_order overflow");
  }
  return u64(r);
}

GL2Subgroup::GL2Subgroup(u32 n, std::vector<Mat2> gens) : n_(n) {
  if (n == 0 || n > kMaxModulus)
    throw std::invalid_argument("level out of range: " + std::to_string(n));
  Mat2 id = identity(n);
  for (const Mat2& g : gens) {
    Mat2 r = reduce(g, n);
    if (!is_invertible(r, n))
      throw std::invalid_argument("generator not invertible mod " +
                                  std::to_string(n));
    if (n > 1 && r != id) gens_.push_back(r);
  }
  build_chain();
}

u64 GL2Subgroup::base_image(const Mat2& m, const Level& lv) const {
  u64 q = lv.q;
  u64 x = (u64(m.e[0]) * lv.base.x + u64(m.e[1]) * lv.base.y) % q;
  u64 y = (u64(m.e[2]) * lv.base.x + u64(m.e[3]) * lv.base.y) % q;
  return x + q * y;
}

std::size_t GL2Subgroup::sift(Mat2& m, std::size_t from) const {
  for (std::size_t j = from; j < levels_.size(); ++j) {
    auto it = levels_[j].orbit.find(base_image(m, levels_[j]));
    if (it == levels_[j].orbit.end()) return j;
    m = mat_mul(mat_inv(it->second, n_), m, n_);
  }
  return levels_.size();
}

void GL2Subgroup::build_chain() {
  if (n_ == 1) {
    order_ = 1;
    return;
  }
  // Candidate base points: basis vectors of each prime-power component,
  // ordered greedily by orbit size under the full generator set.
  struct Cand {
    u64 q;
    P1Point v;
    std::size_t orb;
  };
  std::vector<Cand> cands;
  for (u64 q : prime_powers(n_)) {
    for (P1Point v : {P1Point{1, 0}, P1Point{0, 1}}) {
      std::unordered_set<u64> orb;
      std::vector<P1Point> stack{v};
      orb.insert(v.x + q * v.y);
      while (!stack.empty()) {
        P1Point w = stack.back();
        stack.pop_back();
        for (const Mat2& g : gens_) {
          u64 x = (u64(g.e[0]) * w.x + u64(g.e[1]) * w.y) % q;
          u64 y = (u64(g.e[2]) * w.x + u64(g.e[3]) * w.y) % q;
          if (orb.insert(x + q * y).second)
            stack.push_back(P1Point{u32(x), u32(y)});
        }
      }
      cands.push_back({q, v, orb.size()});
    }
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Cand& a, const Cand& b) { return a.orb > b.orb; });
  for (const Cand& c : cands) {
    Level lv;
    lv.q = c.q;
    lv.base = c.v;
    levels_.push_back(std::move(lv));
  }

  // Incremental Schreier-Sims.  strong[j]: generators whose first moved
  // base point is levels_[j]; generators available at level i are
  // strong[j] for j >= i plus the input generators at i == 0.
  std::vector<std::vector<Mat2>> strong(levels_.size());
  Mat2 id = identity(n_);
  for (auto& lv : levels_) lv.orbit.emplace(base_image(id, lv), id);
  for (Mat2 g : gens_) {
    std::size_t j = sift(g, 0);
    if (j < levels_.size()) strong[j].push_back(g);
  }

  std::vector<std::unordered_set<u64>> done(levels_.size());
  auto avail = [&](std::size_t i) {
    std::vector<Mat2> out;
    for (std::size_t j = levels_.size(); j-- > i;)
      out.insert(out.end(), strong[j].begin(), strong[j].end());
    return out;
  };

  std::size_t i = levels_.size();
  while (i-- > 0) {
    std::vector<Mat2> gens_i = avail(i);
    Level& lv = levels_[i];
    // rebuild orbit at level i under the current generator set
    lv.orbit.clear();
    lv.orbit.emplace(base_image(id, lv), id);
    std::vector<Mat2> frontier{id};
    while (!frontier.empty()) {
      std::vector<Mat2> next;
      for (const Mat2& u : frontier) {
        for (const Mat2& s : gens_i) {
          Mat2 su = mat_mul(s, u, n_);
          if (lv.orbit.emplace(base_image(su, lv), su).second)
            next.push_back(su);
        }
      }
      frontier = std::move(next);
    }
    // sift Schreier generators; on a new strong generator at level j > i,
    // jump back down to j (deeper levels are unaffected)
    bool jumped = false;
    for (const auto& [pt, u] : lv.orbit) {
      for (const Mat2& s : gens_i) {
        Mat2 su = mat_mul(s, u, n_);
        const Mat2& uw = lv.orbit.at(base_image(su, lv));
        Mat2 sch = mat_mul(mat_inv(uw, n_), su, n_);
        if (sch == id || !done[i].insert(pack(sch)).second) continue;
        Mat2 h = sch;
        std::size_t j = sift(h, i + 1);
        if (j < levels_.size()) {
          strong[j].push_back(h);
          i = j + 1;  // loop decrement re-enters at level j
          jumped = true;
          break;
        }
      }
      if (jumped) break;
    }
    if (jumped) continue;
  }

  order_ = 1;
  for (const Level& lv : levels_) order_ *= lv.orbit.size();
}

u64 GL2Subgroup::index() const {
  u64 full = gl2_order(n_);
  if (full % order_ != 0) throw std::logic_error("order does not divide GL2");
  return full / order_;
}

bool GL2Subgroup::contains(const Mat2& m) const {
  if (n_ == 1) return true;
  Mat2 r = reduce(m, n_);
  if (!is_invertible(r, n_)) return false;
  return sift(r, 0) == levels_.size() && r == identity(n_);
}

GL2Subgroup GL2Subgroup::project(u32 d) const {
  if (d == 0 || n_ % d != 0)
    throw std::invalid_argument("projection target must divide the modulus");
  std::vector<Mat2> gens;
  gens.reserve(gens_.size());
  for (const Mat2& g : gens_) gens.push_back(reduce(g, d));
  return GL2Subgroup(d, std::move(gens));
}

u64 GL2Subgroup::det_image_order() const {
  if (n_ == 1) return 1;
  std::vector<u64> dets;
  for (const Mat2& g : gens_) dets.push_back(det(g, n_));
  std::unordered_set<u64> seen{1};
  std::vector<u64> stack{1};
  while (!stack.empty()) {
    u64 u = stack.back();
    stack.pop_back();
    for (u64 d : dets) {
      u64 w = u * d % n_;
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size();
}

bool GL2Subgroup::det_surjective() const {
  return det_image_order() == euler_phi(n_);
}

std::vector<Mat2> GL2Subgroup::sl2_intersection_gens() const {
  if (n_ == 1) return {};
  // transversal of det over its image, then Schreier generators of ker(det)
  std::unordered_map<u64, Mat2> trans;
  trans.emplace(1, identity(n_));
  std::vector<u64> stack{1};
  while (!stack.empty()) {
    u64 u = stack.back();
    stack.pop_back();
    for (const Mat2& g : gens_) {
      u64 d = u * det(g, n_) % n_;
      if (trans.find(d) == trans.end()) {
        trans.emplace(d, mat_mul(g, trans.at(u), n_));
        stack.push_back(d);
      }
    }
  }
  std::unordered_set<u64> seen;
  std::vector<Mat2> out;
  Mat2 id = identity(n_);
  for (const auto& [u, t] : trans) {
    for (const Mat2& g : gens_) {
      Mat2 gt = mat_mul(g, t, n_);
      Mat2 k = mat_mul(mat_inv(trans.at(det(gt, n_)), n_), gt, n_);
      if (det(k, n_) != 1 % n_) throw std::logic_error("kernel gen has det != 1");
      if (k != id && seen.insert(pack(k)).second) out.push_back(k);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Mat2> GL2Subgroup::closure(u64 cap) const {
  std::unordered_set<u64> seen;
  std::vector<Mat2> elems{identity(n_)};
  seen.insert(pack(elems[0]));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    Mat2 m = elems[head];
    for (const Mat2& g : gens_) {
      Mat2 gm = mat_mul(g, m, n_);
      if (seen.insert(pack(gm)).second) {
        if (elems.size() + 1 > cap)
          throw ResourceCapError("closure enumeration exceeds cap " +
                                 std::to_string(cap));
        elems.push_back(gm);
      }
    }
  }
  return elems;
}

bool same_subgroup(const GL2Subgroup& a, const GL2Subgroup& b) {
  if (a.modulus() != b.modulus()) return false;
  if (a.order() != b.order()) return false;
  for (const Mat2& g : b.generators())
    if (!a.contains(g)) return false;
  return true;
}

std::vector<u64> nonsurjective_primes(const GL2Subgroup& g, u64 N) {
  if (g.modulus() != N)
    throw std::invalid_argument("group modulus must equal N");
  std::vector<u64> out;
  for (auto [p, k] : factorize(N))
    if (g.project(u32(p)).order() != gl2_order(p)) out.push_back(p);
  return out;
}

ReducedLevelData reduced_level(const GL2Subgroup& g, u64 N) {
  ReducedLevelData out;
  std::vector<u64> ns = nonsurjective_primes(g, N);
  out.bad_primes = {2, 3};
  for (u64 p : ns)
    if (p > 3) out.bad_primes.push_back(p);
  out.m = 6;
  for (u64 p : ns)
    if (p > 3) out.m *= p;
  out.n_m = 1;
  for (auto [p, k] : factorize(N)) {
    if (out.m % p == 0) {
      for (int i = 0; i < k; ++i) out.n_m *= p;
    }
  }
  GL2Subgroup gm = g.project(u32(out.n_m));
  u64 target = gl2_order(out.n_m) / gm.order();
  for (u64 d : divisors(out.n_m)) {
    GL2Subgroup gd = gm.project(u32(d));
    if (gl2_order(d) / gd.order() == target) {
      out.m0 = d;
      break;
    }
  }
  // staleness check: is G the full preimage of its image at some N/p?
  for (auto [p, k] : factorize(N)) {
    u64 d = N / p;
    if (d == 0) continue;
    u64 ker = gl2_order(N) / gl2_order(d);
    if (g.order() == g.project(u32(d)).order() * ker) {
      out.preimage_warning = true;
      break;
    }
  }
  return out;
}

}  // namespace x0iso
