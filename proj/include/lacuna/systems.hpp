#ifndef LACUNA_SYSTEMS_HPP
#define LACUNA_SYSTEMS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lacuna/coefficients.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/step_function.hpp"

namespace lacuna {

// Exact real of the form q * amp^p with q rational and amp^2 rational.
// Expectations of trig monomials live here: the sqrt(2) of a normalised
// amplitude only rationalises once squared or raised to an even power.
class ExactReal {
 public:
  ExactReal() : q_(0), amp_sq_(1), p_(0) {}
  ExactReal(Rational q, Rational amp_sq, int p)
      : q_(std::move(q)), amp_sq_(std::move(amp_sq)), p_(p) {
    if (amp_sq_ == Rational(1) || q_.is_zero()) p_ = 0;
  }
  static ExactReal of_rational(const Rational& q) {
    return ExactReal(q, Rational(1), 0);
  }

  bool is_zero() const { return q_.is_zero(); }
  bool is_rational() const { return p_ % 2 == 0 || q_.is_zero(); }
  Rational rational_value() const;
  Rational squared() const { return q_ * q_ * pow(amp_sq_, p_); }
  double to_double() const;
  double abs_double() const { return std::fabs(to_double()); }

  const Rational& coefficient() const { return q_; }
  int amp_power() const { return p_; }

 private:
  Rational q_;
  Rational amp_sq_;
  int p_;
};

enum class SystemKind { Rademacher, Walsh, TrigSine, TrigCosine, CustomStep };

std::string kind_name(SystemKind kind);

// Exponent pattern theta over {0,1,2}: at least one 1, at most one 2
// (the full class); the square-free subclass allows only {0,1}.
struct ExponentPattern {
  std::vector<int> theta;

  bool valid_full() const;        // at least one 1, at most one 2
  bool valid_square_free() const;  // exponents in {0,1}, some 1
};

// All admissible patterns of length s, lexicographic in theta.
std::vector<ExponentPattern> enumerate_patterns(int s, bool square_free_only);

// A finite uniformly bounded function system with exact evaluators.
// Member indices are 1-based throughout.
class SystemSpec {
 public:
  static SystemSpec rademacher(int m);
  static SystemSpec walsh(int m);
  static SystemSpec trig_sine(std::vector<long long> freqs,
                              SqrtRational amplitude);
  static SystemSpec trig_cosine(std::vector<long long> freqs,
                                SqrtRational amplitude);
  static SystemSpec custom_step(std::vector<StepFunction> functions);

  SystemKind kind() const { return kind_; }
  bool is_step_kind() const {
    return kind_ == SystemKind::Rademacher || kind_ == SystemKind::Walsh ||
           kind_ == SystemKind::CustomStep;
  }
  int size() const;
  const std::vector<long long>& freqs() const { return freqs_; }
  const SqrtRational& amplitude() const { return amplitude_; }

  // Uniform bound D. Defaults to max|values| (step) or the amplitude (trig);
  // can be widened, never narrowed below the natural bound.
  const SqrtRational& bound() const { return bound_; }
  void set_bound(const SqrtRational& d);

  // Exact squared L2 norm of a member.
  Rational member_norm2_sq(int index) const;

  // Exact step representation of member `index` (step kinds only).
  StepFunction member_step(int index) const;
  const std::vector<StepFunction>& custom_functions() const { return funcs_; }

  // Pointwise evaluation for trig kinds.
  double member_eval(int index, double x) const;

  std::string describe() const;

 private:
  SystemKind kind_ = SystemKind::Rademacher;
  int count_ = 0;
  std::vector<long long> freqs_;
  SqrtRational amplitude_;
  std::vector<StepFunction> funcs_;
  SqrtRational bound_;
};

// Exact E[prod_i f_{indices[i]}^{theta_i}] over the system's probability
// space ([0,1] with Lebesgue measure; custom domains are normalised).
// Step kinds integrate rationals; trig kinds expand products of sines or
// cosines into complex exponentials, so zeros are exact.
ExactReal monomial_expectation(const SystemSpec& system,
                               const std::vector<int>& indices,
                               const ExponentPattern& theta);

struct StrongMultReport {
  bool ok = false;
  ExponentPattern worst;
  double worst_abs = 0.0;
};

// True iff every admissible pattern expectation vanishes exactly.
StrongMultReport is_strongly_multiplicative(const SystemSpec& system,
                                            const std::vector<int>& indices);

// Polynomial sum a_i f_{n_i} over a system.
struct Polynomial {
  SystemSpec system;
  std::vector<int> indices;
  CoefficientVector coeffs;

  Polynomial(SystemSpec sys, std::vector<int> idx, CoefficientVector a);
  double eval(double x) const;  // trig kinds
};

// Exact step representation of a polynomial over a step kind.
// Throws UnsupportedKind for trig, SizeExceeded beyond 2^20 pieces.
StepFunction polynomial_step(const Polynomial& poly);

// L_t norm, t >= 1. Step kinds are exact sums over pieces; trig kinds use
// adaptive panel quadrature to ~1e-10 relative.
double lt_norm(const Polynomial& poly, double t);

// sup |P| : exact for step kinds, bracketed for trig.
struct SupNorm {
  double lo = 0.0;
  double hi = 0.0;
  double value() const { return 0.5 * (lo + hi); }
};
SupNorm sup_norm(const Polynomial& poly, double rel_tol = 1e-9);

// P{|P| > z} with a rigorous bracket for trig kinds.
struct TailProbability {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<Rational> exact;  // step kinds
};
TailProbability tail_probability(const Polynomial& poly, double z,
                                 double tol = 1e-6);
// Exact variant for step kinds (strict inequality measure).
Rational tail_probability_exact(const Polynomial& poly, const Rational& z);

// Adaptive panel quadrature over [0,1] (Simpson + Richardson acceptance).
double integrate_unit_interval(const std::function<double(double)>& f,
                               int panels, double rel_tol);

}  // namespace lacuna

#endif
