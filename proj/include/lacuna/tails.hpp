#ifndef LACUNA_TAILS_HPP
#define LACUNA_TAILS_HPP

#include <limits>

#include "lacuna/coefficients.hpp"
#include "lacuna/systems.hpp"

namespace lacuna {

constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

// Lower bound for P{|P| >= ||P||_t / 2}:
//   (1 - 2^-t)^2 * ||P||_t^{2t} / ||P||_{2t}^{2t}.
double paley_zygmund_lower(const Polynomial& poly, double t);

// min(1, (||P||_t / z)^t), an upper bound for P{|P| >= z}.
double chebyshev_upper(const Polynomial& poly, double z, double t);

// F(s) = sup{t>0 : kappa(t,a) <= s}; +infinity when s >= lim kappa = ||a||_1.
double f_functional(const CoefficientVector& a, double s);

// G(s) = inf{t>0 : kappa(t,a) >= s}; +infinity when the set is empty.
double g_functional(const CoefficientVector& a, double s);

// Two-sided tail envelope built from the equivalence constant beta, the
// Holmstedt constant alpha in use, and the Rademacher reference constant
// beta_prime:
//   lower(z) = C1^-1 exp(-F(C3 z))         for z < ||a||_1/(4 alpha beta)
//   upper(z) = min(1, exp(1 - F(z/C4)))    with a hard zero at z >= beta ||a||_1
class TailEnvelope {
 public:
  TailEnvelope(CoefficientVector a, double beta, double alpha,
               double beta_prime);

  double lower(double z) const;
  double upper(double z) const;

  // The comparison step between the G-based and F-based lower-bound forms;
  // reports rather than asserts C2 G(4 beta z) <= F(C3 z).
  bool chain_ok(double z) const;

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double beta_prime() const { return beta_prime_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }
  double c4() const { return c4_; }
  double c1_prime() const { return c1p_; }
  double c2_prime() const { return c2p_; }
  double c3_prime() const { return c3p_; }
  double c4_prime() const { return c4p_; }
  double big_a() const { return a_const_; }
  double lower_cutoff() const;  // ||a||_1 / (4 alpha beta)
  double upper_cutoff() const;  // beta ||a||_1
  const CoefficientVector& coefficients() const { return a_; }

 private:
  CoefficientVector a_;
  double beta_, alpha_, beta_prime_;
  double c1_, c2_, c3_, c4_;
  double c1p_, c2p_, c3p_, c4p_;
  double a_const_;
};

TailEnvelope build_envelope(const CoefficientVector& a, double beta,
                            double alpha, double beta_prime);

}  // namespace lacuna

#endif
