#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "x0iso/curves.hpp"
#include "x0iso/io.hpp"

using namespace x0iso;

namespace {

GL2Subgroup load_group(const std::string& file) {
  auto doc = load_input_file(std::string(X0ISO_FIXTURES_DIR "/") + file);
  return GL2Subgroup(doc.input.level, doc.input.generators);
}

std::vector<Mat2> borel_gens(u32 n) {
  std::vector<Mat2> g{{{1 % n, 1 % n, 0, 1 % n}}};
  for (u32 u : units_mod(n)) {
    if (u == 1) continue;
    g.push_back(Mat2{{u, 0, 0, 1}});
    g.push_back(Mat2{{1, 0, 0, u}});
  }
  return g;
}

}  // namespace

TEST_CASE("genus of X_0(n)") {
  // n -> genus, spanning genus 0, the first positive strips and larger n
  const std::map<u64, u64> expected{
      {1, 0},  {2, 0},  {3, 0},   {4, 0},   {5, 0},   {6, 0},  {7, 0},
      {8, 0},  {9, 0},  {10, 0},  {11, 1},  {12, 0},  {13, 0}, {14, 1},
      {15, 1}, {16, 0}, {17, 1},  {18, 0},  {19, 1},  {20, 1}, {21, 1},
      {22, 2}, {23, 2}, {24, 1},  {25, 0},  {26, 2},  {27, 1}, {28, 2},
      {30, 3}, {32, 1}, {36, 1},  {37, 2},  {49, 1},  {50, 2}, {60, 7},
      {64, 3}, {96, 9}, {120, 17}, {168, 25}, {389, 32}};
  for (auto [n, g] : expected) {
    CAPTURE(n);
    CHECK(genus_x0(n) == g);
  }
}

TEST_CASE("X_0(n) invariant breakdown") {
  CurveInvariants v4 = x0_invariants(4);
  CHECK(v4.psi == 6);
  CHECK(v4.nu2 == 0);
  CHECK(v4.nu3 == 0);
  CHECK(v4.nuinf == 3);
  CHECK(v4.genus == 0);

  CurveInvariants v11 = x0_invariants(11);
  CHECK(v11.psi == 12);
  CHECK(v11.nu2 == 0);
  CHECK(v11.nu3 == 0);
  CHECK(v11.nuinf == 2);
  CHECK(v11.genus == 1);

  CurveInvariants v13 = x0_invariants(13);
  CHECK(v13.nu2 == 2);
  CHECK(v13.nu3 == 2);
  CHECK(v13.nuinf == 2);
  CHECK(v13.genus == 0);

  // cusp count is sum over d | n of phi(gcd(d, n/d))
  for (u64 n : {12u, 36u, 120u}) {
    u64 s = 0;
    for (u64 d : divisors(n)) s += euler_phi(std::gcd(d, n / d));
    CHECK(x0_invariants(n).nuinf == s);
  }
}

TEST_CASE("projection degrees between X_0 levels") {
  CHECK(degree_projection(1, 1) == 1);
  CHECK(degree_projection(1, 2) == 3);
  CHECK(degree_projection(2, 2) == 2);
  CHECK(degree_projection(1, 4) == 6);
  CHECK(degree_projection(4, 7) == 8);
  CHECK(degree_projection(7, 4) == 6);
  CHECK(degree_projection(5, 3) == 4);
  // degree of X_0(ab) -> X_0(1) equals psi(ab)
  for (u64 n : {6u, 28u, 120u}) CHECK(degree_projection(1, n) == psi(n));
  // tower multiplicativity: X_0(abc) -> X_0(ab) -> X_0(a)
  for (u64 a : {1u, 2u, 5u, 12u})
    for (u64 b : {1u, 2u, 3u, 7u})
      for (u64 c : {1u, 2u, 5u, 9u})
        CHECK(degree_projection(a, b * c) ==
              degree_projection(a * b, c) * degree_projection(a, b));
}

TEST_CASE("genus of the curve attached to an upper-triangular image") {
  // the full upper-triangular subgroup mod n cuts out X_0(n) itself
  for (u32 n = 2; n <= 60; ++n) {
    CAPTURE(n);
    GL2Subgroup b(n, borel_gens(n));
    CHECK(genus_of_image(b, 3'000'000) == genus_x0(n));
  }
}

TEST_CASE("genus of the mod-15 rank-one image is positive") {
  GL2Subgroup g = load_group("50a3.json");
  CHECK(genus_of_image(g.project(15)) == 1);
  CHECK(genus_of_image(g.project(1)) == 0);  // trivial level
  CHECK(genus_of_image(g.project(3)) == 0);
  CHECK(genus_of_image(g.project(5)) == 0);
}

TEST_CASE("genus_of_image rejects non-surjective determinant") {
  // SL2(Z/5) has determinant image {1}
  GL2Subgroup s(5, {Mat2{{0, 4, 1, 0}}, Mat2{{1, 1, 0, 1}}});
  CHECK(s.order() == sl2_order(5));
  CHECK_FALSE(s.det_surjective());
  CHECK_THROWS_AS(genus_of_image(s), std::invalid_argument);
}

TEST_CASE("genus_of_image respects the enumeration cap") {
  GL2Subgroup b(60, borel_gens(60));
  CHECK_THROWS_AS(genus_of_image(b, 1000), ResourceCapError);
}
