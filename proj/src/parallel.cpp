#include "lacuna/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lacuna {

namespace {
int g_workers = 0;  // 0 = not yet resolved
}

int worker_count() {
  if (g_workers > 0) return g_workers;
  if (const char* env = std::getenv("LACUNA_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int n) { g_workers = n >= 1 ? n : 0; }

namespace detail {

void parallel_for_impl(std::size_t n, void* ctx,
                       void (*fn)(void*, std::size_t)) {
  const int workers = worker_count();
#ifdef _OPENMP
  if (workers > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(ctx, static_cast<std::size_t>(i));
    return;
  }
#endif
  (void)workers;
  for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
}

}  // namespace detail

}  // namespace lacuna
