#include "x0iso/pipeline.hpp"

#include <chrono>

namespace x0iso {

namespace {

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

std::vector<LevelDegreePair> filter_riemann_roch(
    const std::vector<LevelDegreePair>& pairs,
    std::vector<RemovedPair>* removed) {
  std::vector<LevelDegreePair> kept;
  for (const LevelDegreePair& p : pairs) {
    u64 g = genus_x0(p.level);
    if (p.degree <= g) {
      kept.push_back(p);
    } else if (removed) {
      removed->push_back(
          {p, "degree " + std::to_string(p.degree) + " > genus " +
                  std::to_string(g) + " of X0(" + std::to_string(p.level) +
                  ")"});
    }
  }
  return kept;
}

std::vector<LevelDegreePair> filter_genus0(
    const std::vector<LevelDegreePair>& pairs, const GL2Subgroup& g_m0,
    u64 cap, std::vector<RemovedPair>* removed) {
  std::vector<LevelDegreePair> kept;
  std::map<u64, u64> genus_at;  // level -> image genus, computed once
  for (const LevelDegreePair& p : pairs) {
    auto it = genus_at.find(p.level);
    if (it == genus_at.end())
      it = genus_at
               .emplace(p.level,
                        genus_of_image(g_m0.project(u32(p.level)), cap))
               .first;
    if (it->second > 0) {
      kept.push_back(p);
    } else if (removed) {
      removed->push_back(
          {p, "mod-" + std::to_string(p.level) + " image has genus 0"});
    }
  }
  return kept;
}

Report run(const GaloisImageInput& input, const RunOptions& opts) {
  Report rep;
  rep.input = input;
  Stopwatch total;
  Stopwatch step;

  if (std::optional<CMOrder> order = is_cm_j(input.j)) {
    if (input.level != 1 || !input.generators.empty())
      throw std::invalid_argument(
          "CM j-invariant " + input.j.str() +
          " with mod-" + std::to_string(input.level) +
          " generator data: Galois-image input applies to non-CM curves only");
    rep.cm_order = order;
    rep.cm_witness = cm_witness(*order);
    rep.verdict = kVerdictCM;
    rep.timings_ms["cm_witness"] = step.lap();
    rep.timings_ms["total"] = total.lap();
    return rep;
  }

  GL2Subgroup g(input.level, input.generators);
  rep.reduced.order = g.order();
  rep.reduced.index = g.index();
  rep.timings_ms["chain"] = step.lap();

  ReducedLevelData rl = reduced_level(g, input.level);
  rep.reduced.bad_primes = rl.bad_primes;
  rep.reduced.m = rl.m;
  rep.reduced.n_m = rl.n_m;
  rep.reduced.m0 = rl.m0;
  if (rl.preimage_warning)
    rep.warnings.push_back(
        "image is the full preimage of a proper divisor level; the supplied "
        "level may overstate the adelic level");
  rep.timings_ms["reduced_level"] = step.lap();

  GL2Subgroup g_m0 = g.project(u32(rl.m0));
  rep.primitive =
      opts.parallel ? primitive_set(g_m0) : primitive_set_serial(g_m0);
  rep.timings_ms["primitive_set"] = step.lap();

  std::vector<LevelDegreePair> survivors =
      filter_riemann_roch(rep.primitive.pairs, &rep.removed_riemann_roch);
  rep.timings_ms["filter_riemann_roch"] = step.lap();

  rep.final_pairs = filter_genus0(survivors, g_m0, opts.max_enumeration,
                                  &rep.removed_genus0);
  rep.timings_ms["filter_genus0"] = step.lap();

  rep.verdict = rep.final_pairs.empty() ? kVerdictNotIsolated
                                        : kVerdictUndetermined;
  rep.timings_ms["total"] = total.lap();
  return rep;
}

}  // namespace x0iso
