#ifndef LACUNA_EXTENSION_HPP
#define LACUNA_EXTENSION_HPP

#include <vector>

#include "lacuna/rational.hpp"
#include "lacuna/step_function.hpp"
#include "lacuna/systems.hpp"

namespace lacuna {

// Construction record for the multiplicative extension: the pattern ->
// dyadic-interval bijection, the split points alpha_k and the per-interval
// stage functions.
struct ExtensionPlan {
  int s = 0;
  Rational d_bound;
  // Entry k-1 describes interval [1+(k-1)2^-s, 1+k2^-s), k = 1..2^s-1.
  std::vector<std::vector<int>> patterns;
  std::vector<Rational> alphas;
  std::vector<Rational> product_means;  // E[prod g_i/D] per interval pattern
};

struct ExtensionResult {
  std::vector<StepFunction> h;  // on [0,2]
  ExtensionPlan plan;
};

struct ExtensionCheck {
  Rational max_abs;
  std::vector<int> worst_pattern;
  bool ok = false;
};

// max over square-free exponent patterns of |E[prod (g_i/D)^theta]|, exact;
// ok iff strictly below 2^-s. All |g_i| <= D is verified first.
ExtensionCheck check_extension_condition(const std::vector<StepFunction>& g,
                                         const Rational& d_bound);

// The extension construction: each square-free pattern gets a dyadic
// subinterval of [1,2) where Rademacher-built stage functions cancel the
// matching product mean exactly; h_i = g_i on [0,1] and 0 on the last
// interval. Exact rational arithmetic throughout.
ExtensionResult extend_multiplicative(const std::vector<StepFunction>& g,
                                      const Rational& d_bound);

struct MultiplicativityReport {
  bool ok = false;
  std::vector<int> worst_subset;  // 1-based positions
  Rational worst_value;
};

// Exhaustively checks E[prod_{i in S} h_i] = 0 for every nonempty subset S,
// in exact rationals (plain Lebesgue integral; zero checks are measure-scale
// invariant).
MultiplicativityReport verify_multiplicative(const std::vector<StepFunction>& h);

// The pattern -> interval code: theta_1 is the most significant bit, so
// lexicographic order on patterns matches k = 1..2^s - 1.
int pattern_interval_code(const std::vector<int>& theta);

}  // namespace lacuna

#endif
