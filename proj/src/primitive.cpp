#include "x0iso/primitive.hpp"

#include <numeric>
#include <set>

namespace x0iso {

namespace {

u64 p1_key(P1Point p) { return (u64(p.x) << 32) | p.y; }

}  // namespace

u32 OrbitTable::index_of(P1Point v) const {
  auto it = orbit_index.find(p1_key(v));
  if (it == orbit_index.end())
    throw std::logic_error("point not in P1 orbit table");
  return it->second;
}

OrbitTable orbit_table(const GL2Subgroup& g, u64 a) {
  if (a == 0 || g.modulus() % a != 0)
    throw std::invalid_argument("orbit level must divide the group modulus");
  u32 n = u32(a);
  std::vector<Mat2> gens;
  gens.reserve(g.generators().size());
  for (const Mat2& m : g.generators()) gens.push_back(reduce(m, n));

  OrbitTable t;
  t.level = a;
  std::vector<P1Point> pts = p1_points(n);
  t.orbit_index.reserve(pts.size() * 2);
  std::vector<P1Point> stack;
  for (const P1Point& start : pts) {  // ascending, so reps are orbit minima
    if (t.orbit_index.count(p1_key(start))) continue;
    u32 id = u32(t.orbits.size());
    t.orbit_index.emplace(p1_key(start), id);
    u64 size = 1;
    stack.assign(1, start);
    while (!stack.empty()) {
      P1Point v = stack.back();
      stack.pop_back();
      for (const Mat2& m : gens) {
        P1Point w = p1_apply(m, v, n);
        if (t.orbit_index.emplace(p1_key(w), id).second) {
          ++size;
          stack.push_back(w);
        }
      }
    }
    t.orbits.push_back({a, start, size});
  }
  return t;
}

std::map<u64, OrbitTable> orbit_tables(const GL2Subgroup& g, u64 m,
                                       bool parallel) {
  if (m == 0 || g.modulus() % m != 0)
    throw std::invalid_argument("orbit level must divide the group modulus");
  std::vector<u64> divs = divisors(m);
  std::vector<OrbitTable> built(divs.size());
  const std::ptrdiff_t cnt = std::ptrdiff_t(divs.size());
#if defined(X0ISO_HAVE_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < cnt; ++i)
      built[std::size_t(i)] = orbit_table(g, divs[std::size_t(i)]);
  } else
#endif
  {
    (void)parallel;
    for (std::ptrdiff_t i = 0; i < cnt; ++i)
      built[std::size_t(i)] = orbit_table(g, divs[std::size_t(i)]);
  }
  std::map<u64, OrbitTable> tables;
  for (std::size_t i = 0; i < divs.size(); ++i)
    tables.emplace(divs[i], std::move(built[i]));
  return tables;
}

u64 point_degree_at_level(const ClosedPointOrbit& orb, u64 ai,
                          const std::map<u64, OrbitTable>& tables) {
  if (ai == 0 || orb.level % ai != 0)
    throw std::invalid_argument("target level must divide the orbit level");
  const OrbitTable& t = tables.at(ai);
  P1Point r = p1_normalize(i64(orb.rep.x), i64(orb.rep.y), u32(ai));
  return t.orbits[t.index_of(r)].degree;
}

LevelDegreePair primitive_of(const ClosedPointOrbit& orb,
                             const std::map<u64, OrbitTable>& tables) {
  for (u64 ai : divisors(orb.level)) {
    u64 di = point_degree_at_level(orb, ai, tables);
    if (orb.degree == degree_projection(ai, orb.level / ai) * di)
      return {ai, di};
  }
  return {orb.level, orb.degree};  // unreachable: ai = level always matches
}

namespace {

PrimitiveSet primitive_set_impl(const GL2Subgroup& g, bool parallel) {
  const std::map<u64, OrbitTable> tables =
      orbit_tables(g, g.modulus(), parallel);
  std::vector<u64> divs = divisors(g.modulus());
  std::vector<std::vector<PrimitiveEntry>> per(divs.size());
  const std::ptrdiff_t cnt = std::ptrdiff_t(divs.size());
#if defined(X0ISO_HAVE_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < cnt; ++i)
      for (const ClosedPointOrbit& orb : tables.at(divs[std::size_t(i)]).orbits)
        per[std::size_t(i)].push_back({orb, primitive_of(orb, tables)});
  } else
#endif
  {
    for (std::ptrdiff_t i = 0; i < cnt; ++i)
      for (const ClosedPointOrbit& orb : tables.at(divs[std::size_t(i)]).orbits)
        per[std::size_t(i)].push_back({orb, primitive_of(orb, tables)});
  }
  PrimitiveSet ps;
  std::set<LevelDegreePair> uniq;
  for (std::size_t i = 0; i < per.size(); ++i)
    for (const PrimitiveEntry& e : per[i]) {
      uniq.insert(e.pair);
      ps.entries.push_back(e);
    }
  ps.pairs.assign(uniq.begin(), uniq.end());
  return ps;
}

}  // namespace

PrimitiveSet primitive_set(const GL2Subgroup& g) {
  return primitive_set_impl(g, true);
}

PrimitiveSet primitive_set_serial(const GL2Subgroup& g) {
  return primitive_set_impl(g, false);
}

u32 PrimitiveGraph::vertex_at(u64 level, P1Point canonical_rep) const {
  const OrbitTable& t = tables.at(level);
  return level_offset.at(level) + t.index_of(canonical_rep);
}

u32 PrimitiveGraph::image_vertex(u32 v, u64 lower_level) const {
  const ClosedPointOrbit& o = vertices[v];
  if (lower_level == 0 || o.level % lower_level != 0)
    throw std::invalid_argument("image level must divide the vertex level");
  P1Point r = p1_normalize(i64(o.rep.x), i64(o.rep.y), u32(lower_level));
  return vertex_at(lower_level, r);
}

bool PrimitiveGraph::edge_between(u32 v, u32 w) const {
  const std::vector<u32>& o = out[v];
  return std::find(o.begin(), o.end(), w) != o.end();
}

PrimitiveGraph build_graph(const GL2Subgroup& g, u64 m) {
  PrimitiveGraph gr;
  gr.m = m;
  gr.tables = orbit_tables(g, m, false);
  for (const auto& [lvl, tab] : gr.tables) {
    gr.level_offset.emplace(lvl, u32(gr.vertices.size()));
    for (const ClosedPointOrbit& o : tab.orbits) gr.vertices.push_back(o);
  }
  gr.out.resize(gr.vertices.size());
  for (u32 v = 0; v < gr.vertices.size(); ++v) {
    u64 n = gr.vertices[v].level;
    for (u64 np : divisors(n)) {
      if (np == n) continue;
      u32 w = gr.image_vertex(v, np);
      if (gr.vertices[v].degree ==
          gr.vertices[w].degree * degree_projection(np, n / np))
        gr.out[v].push_back(w);
    }
  }
  return gr;
}

bool verify_sink_uniqueness(const PrimitiveGraph& g) {
  for (u32 v = 0; v < g.vertices.size(); ++v) {
    std::set<u32> desc{v};
    std::vector<u32> stack{v};
    while (!stack.empty()) {
      u32 x = stack.back();
      stack.pop_back();
      for (u32 w : g.out[x])
        if (desc.insert(w).second) stack.push_back(w);
    }
    std::vector<u32> sinks;
    for (u32 x : desc)
      if (g.out[x].empty()) sinks.push_back(x);
    if (sinks.size() != 1) return false;
    const ClosedPointOrbit& s = g.vertices[sinks[0]];
    if (LevelDegreePair{s.level, s.degree} !=
        primitive_of(g.vertices[v], g.tables))
      return false;
    if (g.image_vertex(v, s.level) != sinks[0]) return false;
  }
  return true;
}

bool verify_transitivity(const PrimitiveGraph& g) {
  for (u32 v = 0; v < g.vertices.size(); ++v) {
    u64 n = g.vertices[v].level;
    for (u64 n1 : divisors(n)) {
      if (n1 == n) continue;
      u32 x1 = g.image_vertex(v, n1);
      for (u64 n2 : divisors(n1)) {
        if (n2 == n1) continue;
        u32 x2 = g.image_vertex(v, n2);
        bool direct = g.edge_between(v, x2);
        bool chained = g.edge_between(v, x1) && g.edge_between(x1, x2);
        if (direct != chained) return false;
      }
    }
  }
  return true;
}

bool verify_gcd_closure(const PrimitiveGraph& g) {
  for (u32 v = 0; v < g.vertices.size(); ++v) {
    u64 n = g.vertices[v].level;
    std::vector<u64> divs = divisors(n);
    for (u64 n1 : divs) {
      if (n1 == n) continue;
      for (u64 n2 : divs) {
        if (n2 == n || n2 <= n1 || std::lcm(n1, n2) != n) continue;
        u32 x1 = g.image_vertex(v, n1);
        u32 x2 = g.image_vertex(v, n2);
        if (!g.edge_between(v, x1) || !g.edge_between(v, x2)) continue;
        u64 d0 = std::gcd(n1, n2);
        u32 xg = g.image_vertex(v, d0);
        if (!g.edge_between(v, xg)) return false;
        if (!g.edge_between(x1, xg) || !g.edge_between(x2, xg)) return false;
      }
    }
  }
  return true;
}

}  // namespace x0iso
