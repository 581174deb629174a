#ifndef LACUNA_KFUNCTIONAL_HPP
#define LACUNA_KFUNCTIONAL_HPP

#include <vector>

#include "lacuna/coefficients.hpp"

namespace lacuna {

// An optimal decomposition a = b + r realising K(t,a; l1,l2).
// r is the coordinatewise clamp of a to [-lambda, lambda], b the remainder.
struct KSplit {
  double value = 0.0;
  double lambda = 0.0;
  std::vector<double> l1_part;  // b
  std::vector<double> l2_part;  // r
};

// (|a_i|) sorted nonincreasing, as a vector in its own right.
CoefficientVector decreasing_rearrangement(const CoefficientVector& a);

// Head/tail approximation: sum of the first floor(t^2) rearranged entries
// plus t times the l2 norm of the rest. t^2 within 1e-12 of an integer is
// snapped to that integer before taking the floor.
double holmstedt(const CoefficientVector& a, double t);

// Exact K(t,a; l1,l2) via minimisation of the soft-threshold objective
//   g(lambda) = sum (|a_i|-lambda)_+ + t*sqrt(sum min(a_i^2, lambda^2))
// over lambda >= 0, with closed-form minimisers on each segment between
// consecutive rearranged values.
KSplit k_exact(const CoefficientVector& a, double t);

// kappa(t,a) = K(sqrt(t), a; l1, l2).
double kappa(const CoefficientVector& a, double t);

}  // namespace lacuna

#endif
