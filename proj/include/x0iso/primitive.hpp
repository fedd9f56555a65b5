#pragma once

#include <map>

#include "x0iso/curves.hpp"

namespace x0iso {

// Closed point on X0(level): an orbit of the mod-level image on P1(Z/level).
// rep is the smallest point of the orbit; degree is the orbit size.
struct ClosedPointOrbit {
  u64 level = 1;
  P1Point rep{};
  u64 degree = 1;
  friend auto operator<=>(const ClosedPointOrbit&, const ClosedPointOrbit&) = default;
};

struct LevelDegreePair {
  u64 level = 1;
  u64 degree = 1;
  friend auto operator<=>(const LevelDegreePair&, const LevelDegreePair&) = default;
};

// Orbit partition of P1(Z/level); orbit sizes sum to psi(level).
struct OrbitTable {
  u64 level = 1;
  std::vector<ClosedPointOrbit> orbits;      // sorted by rep
  std::unordered_map<u64, u32> orbit_index;  // packed point -> index into orbits
  u32 index_of(P1Point v) const;             // v canonical at this level
};

OrbitTable orbit_table(const GL2Subgroup& g, u64 a);  // a | g.modulus()

// Tables for every divisor of m; m | g.modulus().
std::map<u64, OrbitTable> orbit_tables(const GL2Subgroup& g, u64 m,
                                       bool parallel = true);

// Orbit size of the reduced representative at level ai; ai | orb.level.
u64 point_degree_at_level(const ClosedPointOrbit& orb, u64 ai,
                          const std::map<u64, OrbitTable>& tables);

// Smallest divisor ai of orb.level where degree = deg(X0(level)->X0(ai)) times
// the image orbit size, returned with that image size; (level, degree) itself
// when no proper divisor qualifies.
LevelDegreePair primitive_of(const ClosedPointOrbit& orb,
                             const std::map<u64, OrbitTable>& tables);

struct PrimitiveEntry {
  ClosedPointOrbit from;
  LevelDegreePair pair;
  friend auto operator<=>(const PrimitiveEntry&, const PrimitiveEntry&) = default;
};

struct PrimitiveSet {
  std::vector<PrimitiveEntry> entries;  // one per orbit, sorted by (level, rep)
  std::vector<LevelDegreePair> pairs;   // deduplicated on (level, degree), sorted
};

// Union of primitive_of over all orbits at all divisors of g.modulus().
PrimitiveSet primitive_set(const GL2Subgroup& g);
PrimitiveSet primitive_set_serial(const GL2Subgroup& g);

// Divisor-lattice graph on closed points: vertices (orbit, n, d) for n | m;
// edge to the image orbit at n' whenever n' | n, n' != n and d = d' deg(f).
struct PrimitiveGraph {
  u64 m = 1;
  std::vector<ClosedPointOrbit> vertices;
  std::vector<std::vector<u32>> out;
  std::map<u64, OrbitTable> tables;
  std::map<u64, u32> level_offset;
  u32 vertex_at(u64 level, P1Point canonical_rep) const;
  u32 image_vertex(u32 v, u64 lower_level) const;
  bool edge_between(u32 v, u32 w) const;
};

PrimitiveGraph build_graph(const GL2Subgroup& g, u64 m);  // m | g.modulus()

// Each vertex's descendant subgraph has exactly one sink, and that sink is the
// image orbit carrying primitive_of of the vertex.
bool verify_sink_uniqueness(const PrimitiveGraph& g);

// For every chain n2 | n1 | n of distinct levels, the direct edge exists iff
// both intermediate edges do.
bool verify_transitivity(const PrimitiveGraph& g);

// Edges toward n1 and n2 with lcm(n1, n2) = n force edges from the vertex and
// from both intermediate images down to gcd(n1, n2).
bool verify_gcd_closure(const PrimitiveGraph& g);

}  // namespace x0iso
