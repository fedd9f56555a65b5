#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "x0iso/io.hpp"

namespace {

using namespace x0iso;

struct Options {
  std::string input_file;
  std::string label;
  std::string batch_file;
  bool offline = false;
  std::string format = "text";
  bool verify_graph = false;
  u64 max_enumeration = GL2Subgroup::kDefaultEnumerationCap;
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ResourceError*>(&e)) return 3;
  if (dynamic_cast<const ResourceCapError*>(&e)) return 3;
  return 2;
}

GaloisImageInput load_source(const std::string& source, const Options& opt) {
  if (valid_label(source)) return fetch_lmfdb(source, opt.offline);
  return load_input_file(source).input;
}

// Pipeline run plus optional divisor-graph verification.
Report run_one(const GaloisImageInput& in, const Options& opt) {
  RunOptions ro;
  ro.max_enumeration = opt.max_enumeration;
  Report rep = run(in, ro);
  if (opt.verify_graph && !rep.cm_order) {
    GL2Subgroup g(in.level, in.generators);
    PrimitiveGraph pg = build_graph(g.project(u32(rep.reduced.m0)),
                                    rep.reduced.m0);
    rep.graph_checks["sink_uniqueness"] = verify_sink_uniqueness(pg);
    rep.graph_checks["transitivity"] = verify_transitivity(pg);
    rep.graph_checks["gcd_closure"] = verify_gcd_closure(pg);
  }
  return rep;
}

bool checks_passed(const Report& rep) {
  return std::all_of(rep.graph_checks.begin(), rep.graph_checks.end(),
                     [](const auto& kv) { return kv.second; });
}

int run_single(const GaloisImageInput& in, const Options& opt) {
  Report rep = run_one(in, opt);
  std::cout << (opt.format == "json" ? emit_report_json(rep)
                                     : emit_report_text(rep));
  return checks_passed(rep) ? 0 : 1;
}

int run_batch(const Options& opt) {
  std::ifstream in(opt.batch_file);
  if (!in) throw InputError("cannot open batch file " + opt.batch_file);
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty() && line[0] != '#') items.push_back(line);
  }
  std::vector<std::string> outputs(items.size());
  std::vector<int> codes(items.size(), 0);
  const std::ptrdiff_t cnt = std::ptrdiff_t(items.size());
#if defined(X0ISO_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t i = 0; i < cnt; ++i) {
    std::size_t k = std::size_t(i);
    try {
      Report rep = run_one(load_source(items[k], opt), opt);
      outputs[k] = opt.format == "json"
                       ? emit_report_json(rep, true, -1)
                       : emit_report_text(rep);
      codes[k] = checks_passed(rep) ? 0 : 1;
    } catch (const std::exception& e) {
      outputs[k] = "error: " + items[k] + ": " + e.what() + "\n";
      codes[k] = exit_code_for(e);
    }
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (opt.format != "json" && k > 0) std::cout << "\n";
    if (opt.format != "json") std::cout << "== " << items[k] << " ==\n";
    std::cout << outputs[k];
  }
  return *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isolated-point screening for j-invariants on the X0(n) tower"};
  app.require_subcommand(1);
  Options opt;
  CLI::App* runc = app.add_subcommand("run", "Run the isolation pipeline");
  CLI::Option* oi =
      runc->add_option("--input", opt.input_file, "Input document (JSON)");
  CLI::Option* ol =
      runc->add_option("--label", opt.label, "LMFDB elliptic curve label");
  CLI::Option* ob = runc->add_option(
      "--batch", opt.batch_file, "File with one label or input path per line");
  oi->excludes(ol)->excludes(ob);
  ol->excludes(ob);
  runc->add_flag("--offline", opt.offline,
                 "Serve LMFDB lookups from the disk cache only");
  runc->add_option("--format", opt.format, "Output format (default text)")
      ->check(CLI::IsMember({"json", "text"}));
  runc->add_flag("--verify-graph", opt.verify_graph,
                 "Check sink uniqueness, transitivity and gcd closure of the "
                 "divisor graph");
  runc->add_option("--max-enumeration", opt.max_enumeration,
                   "Cap on element enumeration (SL2 and closure walks)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!opt.batch_file.empty()) return run_batch(opt);
    if (!opt.input_file.empty())
      return run_single(load_input_file(opt.input_file).input, opt);
    if (!opt.label.empty())
      return run_single(fetch_lmfdb(opt.label, opt.offline), opt);
    throw InputError("one of --input, --label or --batch is required");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
