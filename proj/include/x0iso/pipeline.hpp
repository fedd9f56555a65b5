#pragma once

#include <map>
#include <optional>
#include <string>

#include "x0iso/cm.hpp"
#include "x0iso/primitive.hpp"

namespace x0iso {

struct GaloisImageInput {
  Rational j;
  u32 level = 1;
  std::vector<Mat2> generators;
  std::string label;  // source metadata, may be empty
  friend bool operator==(const GaloisImageInput&,
                         const GaloisImageInput&) = default;
};

struct RemovedPair {
  LevelDegreePair pair;
  std::string reason;
};

struct ReducedLevelReport {
  u64 order = 1;  // |image at the input level|
  u64 index = 1;
  std::vector<u64> bad_primes;
  u64 m = 6;
  u64 n_m = 1;
  u64 m0 = 1;
};

inline constexpr const char* kVerdictCM = "isolated (CM)";
inline constexpr const char* kVerdictNotIsolated = "not isolated";
inline constexpr const char* kVerdictUndetermined =
    "undetermined: isolated iff some listed pair is an isolated point";

struct Report {
  GaloisImageInput input;
  std::string verdict;
  std::optional<CMOrder> cm_order;
  std::optional<CMWitness> cm_witness;
  ReducedLevelReport reduced;
  PrimitiveSet primitive;
  std::vector<RemovedPair> removed_riemann_roch;
  std::vector<RemovedPair> removed_genus0;
  std::vector<LevelDegreePair> final_pairs;
  std::map<std::string, bool> graph_checks;  // filled on request by the CLI
  std::vector<std::string> warnings;
  std::map<std::string, double> timings_ms;
};

struct RunOptions {
  u64 max_enumeration = GL2Subgroup::kDefaultEnumerationCap;
  bool parallel = true;
};

// Keep (a, d) iff d <= genus of X0(a); removed pairs are P1-parameterized.
std::vector<LevelDegreePair> filter_riemann_roch(
    const std::vector<LevelDegreePair>& pairs,
    std::vector<RemovedPair>* removed = nullptr);

// Keep (a, d) iff the mod-a image has positive genus.
std::vector<LevelDegreePair> filter_genus0(
    const std::vector<LevelDegreePair>& pairs, const GL2Subgroup& g_m0,
    u64 cap = GL2Subgroup::kDefaultEnumerationCap,
    std::vector<RemovedPair>* removed = nullptr);

// CM j: class-number witness and verdict "isolated (CM)".  Otherwise reduced
// level, primitive set, Riemann-Roch and genus-0 filters; empty final list
// means "not isolated", anything else stays undetermined.
Report run(const GaloisImageInput& input, const RunOptions& opts = {});

}  // namespace x0iso
