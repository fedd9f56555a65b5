#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#include "x0iso/io.hpp"

using namespace x0iso;

namespace {

double best_ms(const std::function<void()>& f, int reps = 3) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-34s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial, parallel, serial / parallel,
              equal ? "(results equal)" : "(RESULTS DIFFER)");
}

}  // namespace

int main() {
  const std::filesystem::path fixtures = X0ISO_FIXTURES_DIR;

  {
    std::vector<u64> a, b;
    double s = best_ms([&] { a = class_number_range_serial(-60000, -3); });
    double p = best_ms([&] { b = class_number_range(-60000, -3); });
    row("class_number_range [-60000,-3]", s, p, a == b);
  }

  {
    GaloisImageInput in =
        load_input_file(fixtures / "50a3.json").input;
    GL2Subgroup g(in.level, in.generators);
    PrimitiveSet a, b;
    double s = best_ms([&] { a = primitive_set_serial(g); });
    double p = best_ms([&] { b = primitive_set(g); });
    row("primitive_set mod 120", s, p,
        a.pairs == b.pairs && a.entries == b.entries);
  }

  {
    std::vector<GaloisImageInput> inputs;
    for (const char* f : {"50a3.json", "726a1.json", "338c2.json",
                          "table1_11.json", "table1_21.json", "table1_37.json"})
      for (int k = 0; k < 3; ++k)
        inputs.push_back(load_input_file(fixtures / f).input);

    std::vector<std::string> fa(inputs.size()), fb(inputs.size());
    RunOptions serial_opts;
    serial_opts.parallel = false;
    double s = best_ms(
        [&] {
          for (std::size_t i = 0; i < inputs.size(); ++i)
            fa[i] = report_fingerprint(run(inputs[i], serial_opts));
        },
        1);
    double p = best_ms(
        [&] {
          const std::ptrdiff_t cnt = std::ptrdiff_t(inputs.size());
#if defined(X0ISO_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
          for (std::ptrdiff_t i = 0; i < cnt; ++i)
            fb[std::size_t(i)] =
                report_fingerprint(run(inputs[std::size_t(i)], serial_opts));
        },
        1);
    row("pipeline batch, 18 inputs", s, p, fa == fb);
  }
  return 0;
}
