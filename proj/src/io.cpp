#include "x0iso/io.hpp"

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#if defined(CPPHTTPLIB_OPENSSL_SUPPORT)
#include <httplib.h>
#endif

namespace x0iso {

namespace {

using ojson = nlohmann::ordered_json;
using njson = nlohmann::json;

std::string pair_str(const LevelDegreePair& p) {
  return "(" + std::to_string(p.level) + ", " + std::to_string(p.degree) + ")";
}

u64 require_uint(const njson& j, const char* key, u64 lo, u64 hi) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InputError(std::string("missing or non-integer field '") + key + "'");
  i64 v = j[key].get<i64>();
  if (v < i64(lo) || u64(v) > hi)
    throw InputError(std::string("field '") + key + "' = " +
                     std::to_string(v) + " outside [" + std::to_string(lo) +
                     ", " + std::to_string(hi) + "]");
  return u64(v);
}

Mat2 parse_generator(const njson& row, std::size_t idx, u32 level) {
  if (!row.is_array() || row.size() != 4)
    throw InputError("generator #" + std::to_string(idx) +
                     " is not a 4-entry row-major tuple");
  Mat2 m{};
  for (int k = 0; k < 4; ++k) {
    if (!row[std::size_t(k)].is_number_integer())
      throw InputError("generator #" + std::to_string(idx) + " entry " +
                       std::to_string(k) + " is not an integer");
    i64 v = row[std::size_t(k)].get<i64>();
    m.e[std::size_t(k)] = u32(((v % i64(level)) + i64(level)) % i64(level));
  }
  if (!is_invertible(m, level))
    throw InputError("generator #" + std::to_string(idx) + " = [[" +
                     std::to_string(m.e[0]) + ", " + std::to_string(m.e[1]) +
                     "], [" + std::to_string(m.e[2]) + ", " +
                     std::to_string(m.e[3]) + "]] is not invertible mod " +
                     std::to_string(level) + " (det = " +
                     std::to_string(det(m, level)) + ")");
  return m;
}

ojson input_to_json(const InputDocument& doc) {
  ojson j;
  j["schema"] = kInputSchema;
  if (!doc.input.label.empty()) j["label"] = doc.input.label;
  j["j"] = doc.input.j.str();
  j["level"] = doc.input.level;
  ojson gens = ojson::array();
  for (const Mat2& m : doc.input.generators)
    gens.push_back({m.e[0], m.e[1], m.e[2], m.e[3]});
  j["generators"] = std::move(gens);
  if (!doc.comment.empty()) j["comment"] = doc.comment;
  if (!doc.expected.is_null()) j["expected"] = doc.expected;
  return j;
}

ojson report_to_json(const Report& r, bool include_timings) {
  ojson j;
  j["schema"] = kReportSchema;
  if (!r.input.label.empty()) j["label"] = r.input.label;
  j["j"] = r.input.j.str();
  j["level"] = r.input.level;
  ojson gens = ojson::array();
  for (const Mat2& m : r.input.generators)
    gens.push_back({m.e[0], m.e[1], m.e[2], m.e[3]});
  j["generators"] = std::move(gens);
  j["verdict"] = r.verdict;
  if (r.cm_order) {
    ojson cm;
    cm["discriminant"] = r.cm_order->discriminant;
    cm["conductor"] = r.cm_order->conductor;
    cm["field_discriminant"] = r.cm_order->field_discriminant;
    cm["class_number"] = r.cm_order->class_number;
    if (r.cm_witness) {
      cm["witness"] = {{"ell", r.cm_witness->ell},
                       {"degree_bound", r.cm_witness->degree_bound}};
    }
    j["cm"] = std::move(cm);
  } else {
    j["reduced_level"] = {{"order", r.reduced.order},
                          {"index", r.reduced.index},
                          {"bad_primes", r.reduced.bad_primes},
                          {"m", r.reduced.m},
                          {"n_m", r.reduced.n_m},
                          {"m0", r.reduced.m0}};
    ojson pairs = ojson::array();
    for (const LevelDegreePair& p : r.primitive.pairs)
      pairs.push_back({p.level, p.degree});
    ojson orbits = ojson::array();
    for (const PrimitiveEntry& e : r.primitive.entries) {
      orbits.push_back({{"level", e.from.level},
                        {"rep", {e.from.rep.x, e.from.rep.y}},
                        {"degree", e.from.degree},
                        {"primitive", {e.pair.level, e.pair.degree}}});
    }
    j["primitive_set"] = {{"pairs", std::move(pairs)},
                          {"orbits", std::move(orbits)}};
    ojson rr = ojson::array();
    for (const RemovedPair& p : r.removed_riemann_roch)
      rr.push_back({{"pair", {p.pair.level, p.pair.degree}},
                    {"reason", p.reason}});
    ojson g0 = ojson::array();
    for (const RemovedPair& p : r.removed_genus0)
      g0.push_back({{"pair", {p.pair.level, p.pair.degree}},
                    {"reason", p.reason}});
    j["filters"] = {{"riemann_roch_removed", std::move(rr)},
                    {"genus0_removed", std::move(g0)}};
    ojson fin = ojson::array();
    for (const LevelDegreePair& p : r.final_pairs)
      fin.push_back({p.level, p.degree});
    j["final"] = std::move(fin);
  }
  if (!r.graph_checks.empty()) j["graph_checks"] = r.graph_checks;
  j["warnings"] = r.warnings;
  if (include_timings) j["timings_ms"] = r.timings_ms;
  return j;
}

LevelDegreePair pair_from_json(const njson& j) {
  if (!j.is_array() || j.size() != 2)
    throw InputError("pair is not a [level, degree] array");
  return {j[0].get<u64>(), j[1].get<u64>()};
}

std::string getenv_str(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

void atomic_write(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw ResourceError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

bool valid_label(const std::string& label) {
  static const std::regex re("^[0-9]+\\.[a-z]+[0-9]+$");
  return std::regex_match(label, re);
}

InputDocument parse_input(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const njson::parse_error& e) {
    throw InputError(std::string("input is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("input document must be a JSON object");
  if (!j.contains("schema") || !j["schema"].is_string() ||
      j["schema"].get<std::string>() != kInputSchema)
    throw InputError(std::string("expected schema '") + kInputSchema + "'");

  InputDocument doc;
  if (!j.contains("j") || !j["j"].is_string())
    throw InputError("missing string field 'j' (\"num\" or \"num/den\")");
  try {
    doc.input.j = Rational::parse(j["j"].get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  doc.input.level = u32(require_uint(j, "level", 1, kMaxModulus));
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("missing array field 'generators'");
  for (std::size_t i = 0; i < j["generators"].size(); ++i)
    doc.input.generators.push_back(
        parse_generator(j["generators"][i], i + 1, doc.input.level));
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InputError("field 'label' must be a string");
    doc.input.label = j["label"].get<std::string>();
  }
  if (j.contains("comment")) {
    if (!j["comment"].is_string())
      throw InputError("field 'comment' must be a string");
    doc.comment = j["comment"].get<std::string>();
  }
  if (j.contains("expected")) doc.expected = j["expected"];
  return doc;
}

InputDocument load_input_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

std::string emit_input(const InputDocument& doc) {
  return input_to_json(doc).dump(2) + "\n";
}

std::string emit_report_json(const Report& r, bool include_timings,
                             int indent) {
  return report_to_json(r, include_timings).dump(indent) + "\n";
}

std::string report_fingerprint(const Report& r) {
  return report_to_json(r, false).dump();
}

std::string emit_report_text(const Report& r) {
  std::ostringstream o;
  if (!r.input.label.empty()) o << "label: " << r.input.label << "\n";
  o << "j: " << r.input.j.str() << "\n";
  o << "level: " << r.input.level << "\n";
  o << "verdict: " << r.verdict << "\n";
  if (r.cm_order) {
    o << "cm discriminant: " << r.cm_order->discriminant << " (conductor "
      << r.cm_order->conductor << ", field discriminant "
      << r.cm_order->field_discriminant << ")\n";
    o << "class number: " << r.cm_order->class_number << "\n";
    if (r.cm_witness)
      o << "witness: ell = " << r.cm_witness->ell << ", degree bound "
        << r.cm_witness->degree_bound << "\n";
  } else {
    o << "image order: " << r.reduced.order << " (index " << r.reduced.index
      << ")\n";
    o << "bad primes:";
    for (u64 p : r.reduced.bad_primes) o << " " << p;
    o << "\n";
    o << "m: " << r.reduced.m << "\n";
    o << "N_m: " << r.reduced.n_m << "\n";
    o << "reduced level m0: " << r.reduced.m0 << "\n";
    o << "primitive set:";
    for (const LevelDegreePair& p : r.primitive.pairs) o << " " << pair_str(p);
    o << "\n";
    for (const RemovedPair& p : r.removed_riemann_roch)
      o << "removed (Riemann-Roch): " << pair_str(p.pair) << ": " << p.reason
        << "\n";
    for (const RemovedPair& p : r.removed_genus0)
      o << "removed (genus 0): " << pair_str(p.pair) << ": " << p.reason
        << "\n";
    o << "final:";
    if (r.final_pairs.empty()) {
      o << " (none)";
    } else {
      for (std::size_t i = 0; i < r.final_pairs.size(); ++i)
        o << (i ? ", " : " ") << pair_str(r.final_pairs[i]);
    }
    o << "\n";
  }
  if (!r.graph_checks.empty()) {
    o << "graph checks:";
    bool first = true;
    for (const auto& [name, ok] : r.graph_checks) {
      o << (first ? " " : ", ") << name << (ok ? " ok" : " FAILED");
      first = false;
    }
    o << "\n";
  }
  for (const std::string& w : r.warnings) o << "warning: " << w << "\n";
  return o.str();
}

Report parse_report_json(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const njson::parse_error& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") ||
      j["schema"].get<std::string>() != kReportSchema)
    throw InputError(std::string("expected schema '") + kReportSchema + "'");
  Report r;
  if (j.contains("label")) r.input.label = j["label"].get<std::string>();
  r.input.j = Rational::parse(j["j"].get<std::string>());
  r.input.level = u32(require_uint(j, "level", 1, kMaxModulus));
  for (const njson& row : j["generators"]) {
    Mat2 m{};
    for (int k = 0; k < 4; ++k) m.e[std::size_t(k)] = row[std::size_t(k)].get<u32>();
    r.input.generators.push_back(m);
  }
  r.verdict = j["verdict"].get<std::string>();
  if (j.contains("cm")) {
    const njson& cm = j["cm"];
    r.cm_order = CMOrder{cm["discriminant"].get<i64>(),
                         cm["conductor"].get<i64>(),
                         cm["field_discriminant"].get<i64>(),
                         cm["class_number"].get<u64>()};
    if (cm.contains("witness"))
      r.cm_witness = CMWitness{cm["witness"]["ell"].get<u64>(),
                               cm["witness"]["degree_bound"].get<u64>()};
  } else {
    const njson& rl = j["reduced_level"];
    r.reduced.order = rl["order"].get<u64>();
    r.reduced.index = rl["index"].get<u64>();
    r.reduced.bad_primes = rl["bad_primes"].get<std::vector<u64>>();
    r.reduced.m = rl["m"].get<u64>();
    r.reduced.n_m = rl["n_m"].get<u64>();
    r.reduced.m0 = rl["m0"].get<u64>();
    for (const njson& p : j["primitive_set"]["pairs"])
      r.primitive.pairs.push_back(pair_from_json(p));
    for (const njson& e : j["primitive_set"]["orbits"]) {
      PrimitiveEntry pe;
      pe.from.level = e["level"].get<u64>();
      pe.from.rep = {e["rep"][0].get<u32>(), e["rep"][1].get<u32>()};
      pe.from.degree = e["degree"].get<u64>();
      pe.pair = pair_from_json(e["primitive"]);
      r.primitive.entries.push_back(pe);
    }
    for (const njson& p : j["filters"]["riemann_roch_removed"])
      r.removed_riemann_roch.push_back(
          {pair_from_json(p["pair"]), p["reason"].get<std::string>()});
    for (const njson& p : j["filters"]["genus0_removed"])
      r.removed_genus0.push_back(
          {pair_from_json(p["pair"]), p["reason"].get<std::string>()});
    for (const njson& p : j["final"])
      r.final_pairs.push_back(pair_from_json(p));
  }
  if (j.contains("graph_checks"))
    r.graph_checks = j["graph_checks"].get<std::map<std::string, bool>>();
  r.warnings = j["warnings"].get<std::vector<std::string>>();
  if (j.contains("timings_ms"))
    r.timings_ms = j["timings_ms"].get<std::map<std::string, double>>();
  return r;
}

std::filesystem::path default_cache_dir() {
  std::string env = getenv_str("X0ISO_CACHE_DIR");
  if (!env.empty()) return env;
  std::string home = getenv_str("HOME");
  if (home.empty()) home = ".";
  return std::filesystem::path(home) / ".cache" / "x0iso";
}

GaloisImageInput parse_lmfdb_response(const std::string& body,
                                      const std::string& label) {
  njson j;
  try {
    j = njson::parse(body);
  } catch (const njson::parse_error& e) {
    throw InputError("LMFDB response for " + label +
                     " is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("data") || !j["data"].is_array())
    throw InputError("LMFDB response for " + label + " has no 'data' array");
  const njson& data = j["data"];
  if (data.empty())
    throw InputError("LMFDB has no curve with label " + label);
  const njson& rec = data[0];
  for (const char* key : {"jinv", "adelic_level", "adelic_gens"})
    if (!rec.contains(key) || rec[key].is_null())
      throw InputError("LMFDB record for " + label + " lacks field '" + key +
                       "'; upstream schema may have changed");

  GaloisImageInput in;
  in.label = label;
  const njson& jinv = rec["jinv"];
  if (jinv.is_string()) {
    in.j = Rational::parse(jinv.get<std::string>());
  } else if (jinv.is_number_integer()) {
    in.j = Rational(jinv.get<i64>());
  } else if (jinv.is_array() && jinv.size() == 2 &&
             jinv[0].is_number_integer() && jinv[1].is_number_integer()) {
    in.j = Rational(jinv[0].get<i64>(), jinv[1].get<i64>());
  } else if (jinv.is_array() && jinv.size() == 1 &&
             jinv[0].is_number_integer()) {
    in.j = Rational(jinv[0].get<i64>());
  } else {
    throw InputError("LMFDB record for " + label +
                     " has unrecognized 'jinv' shape");
  }
  if (!rec["adelic_level"].is_number_integer())
    throw InputError("LMFDB record for " + label +
                     " has non-integer 'adelic_level'");
  i64 lvl = rec["adelic_level"].get<i64>();
  if (lvl < 1 || lvl > i64(kMaxModulus))
    throw InputError("LMFDB adelic_level " + std::to_string(lvl) +
                     " outside supported range for " + label);
  in.level = u32(lvl);
  if (!rec["adelic_gens"].is_array())
    throw InputError("LMFDB record for " + label +
                     " has non-array 'adelic_gens'");
  std::size_t idx = 1;
  for (const njson& row : rec["adelic_gens"])
    in.generators.push_back(parse_generator(row, idx++, in.level));
  return in;
}

GaloisImageInput fetch_lmfdb(const std::string& label, bool offline,
                             const std::filesystem::path& cache_dir) {
  if (!valid_label(label))
    throw InputError("malformed curve label '" + label +
                     "' (expected e.g. 50.a3)");
  std::filesystem::path cached = cache_dir / (label + ".json");
  if (std::filesystem::exists(cached)) {
    std::ifstream in(cached, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_lmfdb_response(ss.str(), label);
  }
  if (offline)
    throw ResourceError("offline mode and no cached record for " + label +
                        " under " + cache_dir.string());
#if defined(CPPHTTPLIB_OPENSSL_SUPPORT)
  httplib::Client cli("https://www.lmfdb.org");
  cli.set_connection_timeout(10, 0);
  cli.set_read_timeout(30, 0);
  cli.set_follow_location(true);
  std::string path = "/api/ec_curvedata/?label=" + label +
                     "&_format=json&_fields=label,jinv,adelic_level,adelic_gens";
  httplib::Result res = cli.Get(path);
  if (!res)
    throw ResourceError("LMFDB request for " + label +
                        " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw ResourceError("LMFDB returned HTTP " + std::to_string(res->status) +
                        " for " + label);
  GaloisImageInput in = parse_lmfdb_response(res->body, label);
  atomic_write(cached, res->body);
  return in;
#else
  throw ResourceError("built without TLS support; only cached labels work");
#endif
}

}  // namespace x0iso
