// Serial-vs-parallel benchmark for the sweep kernels. The parallel paths
// must reproduce the serial results bit for bit; this binary times both and
// checks that.
#include <chrono>
#include <cstdio>
#include <vector>

#include "lacuna/equivalence.hpp"
#include "lacuna/parallel.hpp"
#include "lacuna/qnorm.hpp"
#include "lacuna/selection.hpp"

using namespace lacuna;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

struct Timing {
  double serial_ms = 0.0;
  double parallel_ms = 0.0;
  bool identical = false;
};

template <typename Run, typename Same>
Timing compare(Run&& run, Same&& same) {
  Timing t;
  set_worker_count(1);
  double t0 = now_ms();
  auto serial = run();
  t.serial_ms = now_ms() - t0;
  set_worker_count(0);  // resolve from environment / OpenMP again
  int workers = worker_count();
  t0 = now_ms();
  auto parallel = run();
  t.parallel_ms = now_ms() - t0;
  t.identical = same(serial, parallel);
  std::printf("  serial %8.1f ms   parallel(%d) %8.1f ms   speedup %.2fx   %s\n",
              t.serial_ms, workers, t.parallel_ms,
              t.serial_ms / (t.parallel_ms > 0 ? t.parallel_ms : 1.0),
              t.identical ? "identical" : "MISMATCH");
  return t;
}

}  // namespace

int main() {
  bool all_identical = true;

  std::printf("moment band: rademacher m=12, 64 vectors, 6 t values\n");
  {
    SystemSpec sys = SystemSpec::rademacher(12);
    std::vector<int> idx;
    for (int i = 1; i <= 12; ++i) idx.push_back(i);
    auto family = make_family(2024, 64, 12);
    std::vector<double> grid{1, 2, 4, 8, 16, 32};
    auto run = [&]() { return moment_band(sys, idx, family, grid); };
    Timing t = compare(run, [](const MomentBand& a, const MomentBand& b) {
      return a.c_lower == b.c_lower && a.c_upper == b.c_upper &&
             a.beta == b.beta;
    });
    all_identical = all_identical && t.identical;
  }

  std::printf("q-norm profile sweep: 300 vectors, n=12, all block counts\n");
  {
    auto family = make_family(7, 300, 12);
    auto run = [&]() {
      std::vector<std::vector<double>> profiles(family.size());
      parallel_for(family.size(), [&](std::size_t i) {
        profiles[i] = q_norm_profile(family[i]);
      });
      return profiles;
    };
    Timing t = compare(run, [](const auto& a, const auto& b) { return a == b; });
    all_identical = all_identical && t.identical;
  }

  std::printf("equivalence tails: rademacher(9) subsystem vs initial segment\n");
  {
    SystemSpec big = SystemSpec::rademacher(9);
    SystemSpec small = SystemSpec::rademacher(3);
    auto family = make_family(5, 24, 3);
    std::vector<double> zs;
    for (int i = 0; i <= 24; ++i) zs.push_back(0.125 * i);
    auto run = [&]() {
      return distribution_compare(big, {4, 7, 9}, small, {1, 2, 3}, family, zs);
    };
    Timing t = compare(run,
                       [](const EquivalenceReport& a, const EquivalenceReport& b) {
                         return a.c_hat == b.c_hat && a.unbounded == b.unbounded;
                       });
    all_identical = all_identical && t.identical;
  }

  std::printf("%s\n", all_identical ? "all parallel results identical to serial"
                                    : "PARALLEL/SERIAL MISMATCH");
  return all_identical ? 0 : 1;
}
