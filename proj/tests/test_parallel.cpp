#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "x0iso/io.hpp"
#include "x0iso/pipeline.hpp"

// The parallel kernels must be bit-for-bit interchangeable with their serial
// references; work splitting may not leak into results.

using namespace x0iso;

namespace {

GL2Subgroup load_group(const std::string& file) {
  auto doc = load_input_file(std::string(X0ISO_FIXTURES_DIR "/") + file);
  return GL2Subgroup(doc.input.level, doc.input.generators);
}

const char* kFixtureFiles[] = {"50a3.json",      "726a1.json",
                               "338c2.json",     "table1_11.json",
                               "table1_21.json", "table1_37.json"};

}  // namespace

TEST_CASE("orbit tables agree between serial and parallel runs") {
  for (const char* f : kFixtureFiles) {
    CAPTURE(f);
    GL2Subgroup g = load_group(f);
    u64 m0 = reduced_level(g, g.modulus()).m0;
    GL2Subgroup gm = g.project(u32(m0));
    auto par = orbit_tables(gm, m0, true);
    auto ser = orbit_tables(gm, m0, false);
    REQUIRE(par.size() == ser.size());
    for (const auto& [a, t] : par) {
      CAPTURE(a);
      CHECK(t.orbits == ser.at(a).orbits);
    }
  }
}

TEST_CASE("primitive sets agree between serial and parallel runs") {
  for (const char* f : kFixtureFiles) {
    CAPTURE(f);
    GL2Subgroup g = load_group(f);
    PrimitiveSet par = primitive_set(g);
    PrimitiveSet ser = primitive_set_serial(g);
    CHECK(par.entries == ser.entries);
    CHECK(par.pairs == ser.pairs);
  }
}

TEST_CASE("class number sweep agrees between serial and parallel runs") {
  CHECK(class_number_range(-20000, -3) == class_number_range_serial(-20000, -3));
  CHECK(class_number_range(-3, -3) == class_number_range_serial(-3, -3));
  CHECK(class_number_range(-4, -4) == class_number_range_serial(-4, -4));
}

TEST_CASE("pipeline reports agree between serial and parallel runs") {
  RunOptions par, ser;
  ser.parallel = false;
  for (const char* f : kFixtureFiles) {
    CAPTURE(f);
    auto doc = load_input_file(std::string(X0ISO_FIXTURES_DIR "/") + f);
    CHECK(report_fingerprint(run(doc.input, par)) ==
          report_fingerprint(run(doc.input, ser)));
  }
}
