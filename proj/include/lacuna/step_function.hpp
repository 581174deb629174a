#ifndef LACUNA_STEP_FUNCTION_HPP
#define LACUNA_STEP_FUNCTION_HPP

#include <functional>
#include <utility>
#include <vector>

#include "lacuna/rational.hpp"

namespace lacuna {

// Piecewise-constant function on [0, L] with exact rational breakpoints and
// values. Breakpoints run strictly increasing from 0 to L; values hold one
// entry per piece. Pieces are half-open [b_k, b_{k+1}) except the last.
class StepFunction {
 public:
  StepFunction(std::vector<Rational> breakpoints, std::vector<Rational> values);

  static StepFunction constant(const Rational& value, const Rational& length);
  // r_index-th Rademacher function rescaled onto [0, length): 2^r_index
  // pieces alternating +1/-1 starting with +1.
  static StepFunction rademacher(int r_index, const Rational& length);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }
  const Rational& domain_length() const { return breakpoints_.back(); }

  Rational value_at(const Rational& x) const;
  double eval(double x) const;

  // Plain Lebesgue integral over the whole domain.
  Rational integral() const;
  // integral / domain length.
  Rational mean() const;

  Rational max_abs() const;
  bool is_everywhere_zero() const;

  StepFunction scaled(const Rational& c) const;

  // Pointwise combination on the merged breakpoint grid (domains must match).
  static StepFunction combine(
      const StepFunction& a, const StepFunction& b,
      const std::function<Rational(const Rational&, const Rational&)>& op);
  static StepFunction product(const std::vector<const StepFunction*>& fs);

  // Piece-squared copy.
  StepFunction squared() const;

  // Exact restriction to [lo, hi] shifted to start at 0.
  StepFunction restrict(const Rational& lo, const Rational& hi) const;

  // Glue pieces of `next` after this function (domains concatenate).
  StepFunction concat(const StepFunction& next) const;

  // Measure of {x : |f(x)| > z} (strict), exact.
  Rational tail_measure(const Rational& z) const;
  // Measure of {x : |f(x)| >= z}.
  Rational level_measure_ge(const Rational& z) const;

  // Distribution of |f|: sorted (value, total length) pairs.
  std::vector<std::pair<Rational, Rational>> abs_distribution() const;

  // Merge adjacent pieces with equal values (representation-changing; the
  // extension pipeline keeps raw pieces so restrictions stay bit-exact).
  StepFunction compressed() const;

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> values_;
};

}  // namespace lacuna

#endif
