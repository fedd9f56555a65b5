#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "x0iso/io.hpp"
#include "x0iso/pipeline.hpp"

using namespace x0iso;

namespace {

InputDocument load_doc(const std::string& file) {
  return load_input_file(std::string(X0ISO_FIXTURES_DIR "/") + file);
}

std::vector<LevelDegreePair> pairs_of(const nlohmann::json& arr) {
  std::vector<LevelDegreePair> out;
  for (const auto& p : arr) out.push_back({p.at(0).get<u64>(), p.at(1).get<u64>()});
  return out;
}

std::vector<Mat2> full_gl2_gens(u32 n) {
  std::vector<Mat2> g{{{0, n - 1, 1 % n, 0}}, {{1 % n, 1 % n, 0, 1 % n}}};
  for (u32 u : units_mod(n)) g.push_back(Mat2{{u, 0, 0, 1}});
  return g;
}

}  // namespace

TEST_CASE("end-to-end runs match frozen fixture expectations") {
  for (const char* f :
       {"50a3.json", "726a1.json", "338c2.json", "table1_11.json",
        "table1_11b.json", "table1_21.json", "table1_37.json"}) {
    CAPTURE(f);
    InputDocument doc = load_doc(f);
    Report rep = run(doc.input);
    const auto& exp = doc.expected;
    CHECK(rep.verdict == exp.at("verdict").get<std::string>());
    CHECK(rep.reduced.order == exp.at("order").get<u64>());
    CHECK(rep.reduced.index == exp.at("index").get<u64>());
    CHECK(rep.reduced.bad_primes == exp.at("bad_primes").get<std::vector<u64>>());
    CHECK(rep.reduced.m == exp.at("m").get<u64>());
    CHECK(rep.reduced.n_m == exp.at("n_m").get<u64>());
    CHECK(rep.reduced.m0 == exp.at("m0").get<u64>());
    CHECK(rep.primitive.pairs == pairs_of(exp.at("primitive_pairs")));
    std::vector<LevelDegreePair> after_rr = rep.primitive.pairs;
    for (const RemovedPair& r : rep.removed_riemann_roch)
      std::erase(after_rr, r.pair);
    CHECK(after_rr == pairs_of(exp.at("after_riemann_roch")));
    CHECK(rep.final_pairs == pairs_of(exp.at("final_pairs")));
    CHECK_FALSE(rep.cm_order.has_value());
    CHECK(rep.warnings.empty());
    CHECK(rep.timings_ms.count("total") == 1);
  }
}

TEST_CASE("removal reasons are recomputable") {
  Report rep = run(load_doc("338c2.json").input);
  // every removed pair either exceeds the genus or lands on a genus-0 image
  for (const RemovedPair& r : rep.removed_riemann_roch) {
    CHECK(r.pair.degree > genus_x0(r.pair.level));
    CHECK(r.reason.find("genus") != std::string::npos);
  }
  GL2Subgroup g(rep.input.level, rep.input.generators);
  GL2Subgroup gm0 = g.project(u32(rep.reduced.m0));
  for (const RemovedPair& r : rep.removed_genus0) {
    CHECK(r.pair.degree <= genus_x0(r.pair.level));  // survived the first filter
    CHECK(genus_of_image(gm0.project(u32(r.pair.level))) == 0);
    CHECK(r.reason.find("genus 0") != std::string::npos);
  }
  // kept pairs pass both filters
  for (const LevelDegreePair& p : rep.final_pairs) {
    CHECK(p.degree <= genus_x0(p.level));
    CHECK(genus_of_image(gm0.project(u32(p.level))) > 0);
  }
  // partition: primitive = final + removed_rr + removed_genus0
  CHECK(rep.primitive.pairs.size() == rep.final_pairs.size() +
                                          rep.removed_riemann_roch.size() +
                                          rep.removed_genus0.size());
}

TEST_CASE("filters are order-insensitive on surviving pairs") {
  Report rep = run(load_doc("50a3.json").input);
  GL2Subgroup g(rep.input.level, rep.input.generators);
  GL2Subgroup gm0 = g.project(u32(rep.reduced.m0));
  // applying genus-0 first and Riemann-Roch second keeps the same pairs
  auto a = filter_riemann_roch(filter_genus0(rep.primitive.pairs, gm0));
  auto b = filter_genus0(filter_riemann_roch(rep.primitive.pairs), gm0);
  CHECK(a == b);
  CHECK(a == rep.final_pairs);
}

TEST_CASE("riemann-roch boundary") {
  auto kept = filter_riemann_roch({{11, 1}});
  CHECK(kept == std::vector<LevelDegreePair>{{11, 1}});  // genus X0(11) = 1
  std::vector<RemovedPair> removed;
  kept = filter_riemann_roch({{11, 2}}, &removed);
  CHECK(kept.empty());  // degree 2 > genus 1
  REQUIRE(removed.size() == 1);
  CHECK(removed[0].pair == LevelDegreePair{11, 2});
  // degree = genus stays: (22, 2) with genus X0(22) = 2
  CHECK(filter_riemann_roch({{22, 2}}) ==
        std::vector<LevelDegreePair>{{22, 2}});
  CHECK(filter_riemann_roch({{22, 3}}).empty());
  // (1, 1) always dies: genus X0(1) = 0
  CHECK(filter_riemann_roch({{1, 1}}).empty());
}

TEST_CASE("genus-0 filter in isolation") {
  // a fully surjective mod-11 image cuts out a rational curve, so even a
  // pair that clears the genus bound of X0(11) dies here
  GL2Subgroup full11(11, full_gl2_gens(11));
  std::vector<RemovedPair> removed;
  auto kept = filter_genus0({{11, 1}, {1, 1}}, full11,
                            GL2Subgroup::kDefaultEnumerationCap, &removed);
  CHECK(kept.empty());
  REQUIRE(removed.size() == 2);
  CHECK(removed[0].pair == LevelDegreePair{11, 1});
  CHECK(removed[0].reason.find("genus 0") != std::string::npos);
  // a positive-genus image survives
  GL2Subgroup g15 =
      GL2Subgroup(load_doc("50a3.json").input.level,
                  load_doc("50a3.json").input.generators)
          .project(15);
  CHECK(filter_genus0({{15, 1}}, g15) ==
        std::vector<LevelDegreePair>{{15, 1}});
}

TEST_CASE("final pairs are a subset of primitive pairs") {
  for (const char* f : {"50a3.json", "338c2.json", "table1_21.json"}) {
    Report rep = run(load_doc(f).input);
    for (const LevelDegreePair& p : rep.final_pairs)
      CHECK(std::count(rep.primitive.pairs.begin(), rep.primitive.pairs.end(),
                       p) == 1);
  }
}

TEST_CASE("runs are deterministic") {
  InputDocument doc = load_doc("50a3.json");
  Report a = run(doc.input);
  Report b = run(doc.input);
  CHECK(report_fingerprint(a) == report_fingerprint(b));
  RunOptions serial;
  serial.parallel = false;
  Report c = run(doc.input, serial);
  CHECK(report_fingerprint(a) == report_fingerprint(c));
}

TEST_CASE("CM branch") {
  InputDocument doc = load_doc("cm_1728.json");
  Report rep = run(doc.input);
  CHECK(rep.verdict == kVerdictCM);
  REQUIRE(rep.cm_order.has_value());
  CHECK(rep.cm_order->discriminant == -4);
  REQUIRE(rep.cm_witness.has_value());
  CHECK(rep.cm_witness->ell == 409);
  CHECK(rep.cm_witness->degree_bound == 2);
  CHECK(rep.final_pairs.empty());
  CHECK(rep.primitive.pairs.empty());

  GaloisImageInput in;
  in.j = Rational(287496);  // discriminant -16
  Report rep2 = run(in);
  CHECK(rep2.verdict == kVerdictCM);
  CHECK(rep2.cm_order->discriminant == -16);
  CHECK(rep2.cm_witness->ell == 409);

  // generator data plus a CM j-invariant is contradictory input
  GaloisImageInput bad;
  bad.j = Rational(1728);
  bad.level = 2;
  bad.generators = {Mat2{{0, 1, 1, 0}}};
  CHECK_THROWS_AS(run(bad), std::invalid_argument);
}

TEST_CASE("level that is a full preimage warns") {
  GaloisImageInput in;
  in.j = Rational(5);  // any non-CM value
  in.level = 4;
  in.generators = full_gl2_gens(4);
  Report rep = run(in);
  REQUIRE(rep.warnings.size() == 1);
  CHECK(rep.warnings[0].find("full preimage") != std::string::npos);
  CHECK(rep.reduced.m0 == 1);
  CHECK(rep.verdict == kVerdictNotIsolated);  // (1,1) dies in the filters
}

TEST_CASE("run rejects out-of-range levels and bad generators") {
  GaloisImageInput in;
  in.j = Rational(5);
  in.level = 0;
  CHECK_THROWS_AS(run(in), std::invalid_argument);
  in.level = 70000;
  CHECK_THROWS_AS(run(in), std::invalid_argument);
  in.level = 4;
  in.generators = {Mat2{{2, 0, 0, 2}}};  // det 0 mod 4
  CHECK_THROWS_AS(run(in), std::invalid_argument);
}

TEST_CASE("enumeration cap propagates") {
  InputDocument doc = load_doc("50a3.json");
  RunOptions opts;
  opts.max_enumeration = 100;  // far below |SL2(Z/15)|
  CHECK_THROWS_AS(run(doc.input, opts), ResourceCapError);
}
