#ifndef LACUNA_SELECTION_HPP
#define LACUNA_SELECTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/coefficients.hpp"
#include "lacuna/systems.hpp"

namespace lacuna {

// Epsilon schedule for the greedy selection: positive, below min(1,D)/16,
// and on the finite horizon every tail sum stays below the preceding entry
// (entries beyond the horizon count as 0).
struct EpsilonSchedule {
  std::vector<double> eps;

  static EpsilonSchedule geometric(int count, double first, double ratio);
  void validate(double d_bound) const;
};

struct SearchStats {
  long long restarts = 0;
  long long evaluations = 0;
};

struct SelectionCertificate {
  bool success = false;
  std::vector<int> indices;
  double condition_sum = 0.0;
  std::string condition_sum_exact;  // rational string when exact
  double threshold = 0.0;
  std::vector<int> worst_pattern;
  SearchStats stats;
  std::uint64_t seed = 0;
  std::string system;
  // Greedy runs: the verified per-step sums and their thresholds.
  std::vector<double> per_step_sums;
  std::vector<double> per_step_thresholds;
  std::string note;
};

// Sum over admissible exponent patterns of squared normalised expectations,
//   sum_theta ( E[prod (f_{n_i}/D)^{theta_i}] )^2,
// exact: the amplitude and D powers rationalise once squared.
Rational kashin_condition_sum(const SystemSpec& system,
                              const std::vector<int>& indices,
                              const SqrtRational& d_bound);

// Randomised-restart search with greedy repair for an s-subset of 1..N with
// condition sum <= 10^-s. Deterministic under `seed`; candidate evaluations
// may run in parallel, the chosen move is the serial argmin. Never returns
// an unverified subset: the winning sum is recomputed from scratch.
SelectionCertificate kashin_select(const SystemSpec& system, int N, int s,
                                   const SqrtRational& d_bound,
                                   long long budget, std::uint64_t seed);

// Re-check a certificate through the expectation oracle.
bool reverify_kashin(const SystemSpec& system, const SelectionCertificate& cert,
                     const SqrtRational& d_bound);

// Caller-supplied h for the greedy step condition: a constant (character
// systems and normalised trig have h == 1) or an explicit step function.
struct WeakLimit {
  double constant = 1.0;
  std::optional<StepFunction> step;

  static WeakLimit one() { return WeakLimit{}; }
  static WeakLimit of_constant(double c) { return WeakLimit{c, std::nullopt}; }
  static WeakLimit of_step(StepFunction f);
};

// Scans candidates 1..horizon in order, accepting index i when the step sum
// over all subsets of the accepted set (plain, h-coupled, squared-factor and
// phi^2-h terms) stays below 2^-i eps_i / D. Accepted count is capped at 12
// (the subset sums grow as 2^i).
SelectionCertificate greedy_select(const SystemSpec& system, int horizon,
                                   const EpsilonSchedule& schedule,
                                   const WeakLimit& h,
                                   const SqrtRational& d_bound);

// Riesz product R = prod (1 + b_i f_{n_i}), nonnegative when |b_i| D <= 1.
class RieszProduct {
 public:
  RieszProduct(SystemSpec system, std::vector<int> indices,
               std::vector<double> weights);

  // Exact step representation (step kinds).
  const StepFunction& step() const;
  double eval(double x) const;

  // E[R]: exact for step kinds; exact expansion otherwise.
  double expectation() const;
  // E[R * f_{indices[j]}] by expansion through the expectation oracle.
  double correlation_with_member(int position) const;
  // E[R * sum a_i f_{n_i}] : exact for step kinds (direct product), expansion
  // for trig.
  double correlation(const CoefficientVector& a) const;

  const std::vector<double>& weights() const { return weights_; }

 private:
  SystemSpec system_;
  std::vector<int> indices_;
  std::vector<double> weights_;
  std::vector<Rational> weights_r_;
  std::optional<StepFunction> step_;
};

RieszProduct riesz_product(const SystemSpec& system,
                           const std::vector<int>& indices,
                           const std::vector<double>& weights);

struct RieszCertificate {
  std::vector<std::vector<int>> blocks;   // positions (1-based) into indices
  std::vector<double> weights;
  double i_n = 0.0;                       // E[R P]
  double lower_target = 0.0;              // (1/(3D)) sum_j block norms
  bool holds = false;
  std::vector<double> gamma_terms;        // E[R f_i] - b_i per position
  // Dual-norm side (riesz_dual_norm):
  double l_n = 0.0;                       // ||R||_{t'}^{t'}
  double t_prime = 0.0;
  double bound_leading = 0.0;             // ((t-1)/(t-2))^t
  double bound_expectation_part = 0.0;    // 4e sum_i 2^i sum |E(...)|
  double bound_total = 0.0;
};

// Block weights proportional to a within each block, normalised so that
// sum_{i in A_j} a_i b_i = |a|_{A_j} / D and sum b_i^2 = D^-2 per block;
// evaluates I_N = E[R P] and checks it against (1/(3D)) sum_j |a|_{A_j}.
RieszCertificate riesz_lower_certificate(
    const SystemSpec& system, const std::vector<int>& indices,
    const CoefficientVector& a, const std::vector<std::vector<int>>& blocks,
    const SqrtRational& d_bound);

// L_N = ||R||_{t'}^{t'} for t' = t/(t-1), t >= 3 integer, plus the analytic
// selection-quality bound: leading ((t-1)/(t-2))^t and 4e sum_i 2^i sum over
// subsets of earlier indices of |E(prod phi phi_i)|. Both reported.
RieszCertificate riesz_dual_norm(const SystemSpec& system,
                                 const std::vector<int>& indices,
                                 const std::vector<double>& weights, int t,
                                 const std::vector<std::vector<int>>& blocks,
                                 const SqrtRational& d_bound);

struct MomentBand {
  double c_lower = 0.0;
  double c_upper = 0.0;
  double beta = 0.0;  // max(c_upper, 1/c_lower)
  struct Witness {
    std::size_t family_index;
    double t;
    double ratio;
  };
  Witness lower_witness;
  Witness upper_witness;
};

// Ratios ||sum a_i f_{n_i}||_t / kappa(t, a) over family x grid; the band
// carries min, max and witnesses. Family members evaluate in parallel with a
// serial reduction.
MomentBand moment_band(const SystemSpec& system, const std::vector<int>& indices,
                       const std::vector<CoefficientVector>& family,
                       const std::vector<double>& t_grid);

}  // namespace lacuna

#endif
