// Serial reference vs OpenMP timings for the three parallel kernels.
//
//   dirshape_bench [workers] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/kernels.hpp"
#include "dirshape/metric.hpp"
#include "dirshape/synthetic.hpp"

using namespace dirshape;

namespace {

template <class F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-12s %10.2f %10.2f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int workers = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("workers %d, best of %d\n", workers, repeats);
  std::printf("%-12s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  const BinaryMask big = synthetic::ring(900, 600, 300);
  std::vector<std::int64_t> a(big.size()), b(big.size());
  const double edt_s = best_ms(repeats, [&] { kernels::edt_serial(big, a); });
  const double edt_p = best_ms(repeats, [&] { kernels::edt_omp(big, b, workers); });
  row("edt", edt_s, edt_p, a == b);

  const MetricConfig config = MetricConfig::defaults();
  const BinaryMask prepared = prepare_shape(synthetic::hand(), config);
  DescriptorGrid ds, dp;
  const double cell_s = best_ms(repeats, [&] { ds = descriptor_of_prepared(prepared, config); });
  const double cell_p =
      best_ms(repeats, [&] { dp = descriptor_of_prepared(prepared, config, Exec{workers}); });
  row("cells", cell_s, cell_p, ds.values == dp.values);

  std::vector<DescriptorGrid> grids;
  for (const auto& s : synthetic::toy_corpus()) grids.push_back(compute_descriptor(s.mask, config));
  // Repeat the corpus to get a matrix closer to dataset size.
  while (grids.size() < 150) grids.push_back(grids[grids.size() % 15]);
  const std::size_t n = grids.size();
  auto pair = [&](std::size_t i, std::size_t j) {
    return descriptor_distance(grids[i], grids[j], config).value;
  };
  std::vector<double> ms(n * n), mp(n * n);
  const double pw_s = best_ms(repeats, [&] { kernels::pairwise_serial(n, pair, ms); });
  const double pw_p = best_ms(repeats, [&] { kernels::pairwise_omp(n, pair, mp, workers); });
  row("pairwise", pw_s, pw_p, ms == mp);
  return 0;
}
