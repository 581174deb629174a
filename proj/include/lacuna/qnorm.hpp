#ifndef LACUNA_QNORM_HPP
#define LACUNA_QNORM_HPP

#include <vector>

#include "lacuna/coefficients.hpp"

namespace lacuna {

// Result of a partition-norm computation: the value and a realising family
// of disjoint index blocks (1-based indices into a).
struct PartitionResult {
  double value = 0.0;
  std::vector<std::vector<int>> blocks;
};

// Exact sup over partitions of {1..n} into at most t blocks of the sum of
// block l2 norms. Subset DP over 2^n masks; n <= 14. The supremum over
// disjoint subsets is attained by a full partition: moving an element into
// any block never decreases that block's norm, so uncovered elements can be
// absorbed for free. Ties are broken toward the lexicographically smallest
// block structure (blocks ordered by least element, elementwise comparison).
PartitionResult q_norm_exact(const CoefficientVector& a, int t);

// Q(t) values for every t = 1..n from a single DP pass (q_norm_exact values
// without block reconstruction). Used by corpus sweeps.
std::vector<double> q_norm_profile(const CoefficientVector& a);

// Feasible (hence lower-bound) value: largest-first assignment of squared
// entries to the currently smallest block, then single-move local search.
PartitionResult q_norm_heuristic(const CoefficientVector& a, int t);

struct SandwichReport {
  double q = 0.0;        // ||a||_{Q(t_squared)}
  double k = 0.0;        // K(sqrt(t_squared), a)
  bool lower_ok = false; // q <= k + 1e-9
  bool upper_ok = false; // k <= sqrt(2) q + 1e-9
};

// Checks ||a||_{Q(t^2)} <= K_{1,2}(t,a) <= sqrt(2)||a||_{Q(t^2)} at
// t = sqrt(t_squared), both sides by the exact solvers.
SandwichReport sandwich_check(const CoefficientVector& a, int t_squared);

}  // namespace lacuna

#endif
