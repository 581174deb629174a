#ifndef LACUNA_PARALLEL_HPP
#define LACUNA_PARALLEL_HPP

#include <cstddef>

namespace lacuna {

// Worker count: LACUNA_THREADS when set, else the OpenMP default (1 without
// OpenMP). A value of 1 forces the serial reference path.
int worker_count();
void set_worker_count(int n);

namespace detail {
void parallel_for_impl(std::size_t n, void* ctx, void (*fn)(void*, std::size_t));
}

// Deterministic data-parallel loop: body(i) must write only to slot i of its
// output. Results are identical to the serial loop by construction; callers
// do any order-sensitive reduction serially afterwards.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  auto thunk = [](void* ctx, std::size_t i) {
    (*static_cast<Body*>(ctx))(i);
  };
  detail::parallel_for_impl(n, &body, thunk);
}

}  // namespace lacuna

#endif
