#include "lacuna/tails.hpp"

#include <algorithm>
#include <cmath>

#include "lacuna/kfunctional.hpp"

namespace lacuna {

double paley_zygmund_lower(const Polynomial& poly, double t) {
  if (t < 1.0) throw Error("paley_zygmund: t must be >= 1");
  double nt = lt_norm(poly, t);
  double n2t = lt_norm(poly, 2.0 * t);
  if (n2t == 0.0) throw ZeroPolynomial("paley_zygmund: zero polynomial");
  double frac = 1.0 - std::pow(2.0, -t);
  return frac * frac * std::pow(nt / n2t, 2.0 * t);
}

double chebyshev_upper(const Polynomial& poly, double z, double t) {
  if (z <= 0.0) throw Error("chebyshev: z must be positive");
  if (t < 1.0) throw Error("chebyshev: t must be >= 1");
  double nt = lt_norm(poly, t);
  return std::min(1.0, std::pow(nt / z, t));
}

double f_functional(const CoefficientVector& a, double s) {
  // sup{t : kappa(t) <= s}: walk past any flat stretch {kappa = s}.
  if (a.is_zero()) throw ZeroVector("f_functional: zero vector");
  if (s <= 0.0) throw Error("f_functional: s must be positive");
  if (s >= a.l1()) return kPlusInfinity;  // kappa saturates at ||a||_1
  double n = static_cast<double>(a.size());
  double lo = 1e-12, hi = 4.0 * std::max(1.0, n * n);
  int guard = 0;
  while (kappa(a, hi) <= s && guard++ < 60) hi *= 2.0;
  if (kappa(a, hi) <= s) return kPlusInfinity;
  if (kappa(a, lo) > s) return 0.0;
  // Invariant: kappa(lo) <= s < kappa(hi).
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (kappa(a, mid) <= s)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double g_functional(const CoefficientVector& a, double s) {
  if (a.is_zero()) throw ZeroVector("g_functional: zero vector");
  if (s <= 0.0) throw Error("g_functional: s must be positive");
  if (s > a.l1()) return kPlusInfinity;  // kappa never reaches s
  double n = static_cast<double>(a.size());
  double lo = 1e-12, hi = 4.0 * std::max(1.0, n * n);
  int guard = 0;
  while (kappa(a, hi) < s && guard++ < 60) hi *= 2.0;
  if (kappa(a, hi) < s) return kPlusInfinity;
  if (kappa(a, lo) >= s) return lo;
  // Invariant: kappa(lo) < s <= kappa(hi).
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (kappa(a, mid) < s)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

TailEnvelope::TailEnvelope(CoefficientVector a, double beta, double alpha,
                           double beta_prime)
    : a_(std::move(a)), beta_(beta), alpha_(alpha), beta_prime_(beta_prime) {
  if (a_.is_zero()) throw ZeroVector("envelope: zero vector");
  if (beta_ < 1.0 || beta_prime_ < 1.0 || alpha_ <= 0.0)
    throw Error("envelope: need beta, beta' >= 1 and alpha > 0");
  c1_ = std::pow(2.0 * beta_, 4);
  c2_ = 4.0 * std::log(2.0 * beta_);
  c3_ = 4.0 * std::sqrt(2.0) * c2_ * beta_;
  c4_ = 2.0 * beta_ * M_E;
  c1p_ = std::pow(2.0 * beta_prime_, 4);
  c2p_ = 4.0 * std::log(2.0 * beta_prime_);
  c3p_ = 4.0 * std::sqrt(2.0) * c2p_ * beta_prime_;
  c4p_ = 2.0 * beta_prime_ * M_E;
  a_const_ = std::max({c1_ * M_E, c3_ * c4p_, c1p_ * M_E, c3p_ * c4_,
                       4.0 * alpha_ * beta_ * beta_prime_});
}

double TailEnvelope::lower_cutoff() const {
  return a_.l1() / (4.0 * alpha_ * beta_);
}

double TailEnvelope::upper_cutoff() const { return beta_ * a_.l1(); }

double TailEnvelope::lower(double z) const {
  if (z >= lower_cutoff()) return 0.0;
  if (z <= 0.0) return 1.0 / c1_;
  double f = f_functional(a_, c3_ * z);
  if (std::isinf(f)) return 0.0;
  return std::exp(-f) / c1_;
}

double TailEnvelope::upper(double z) const {
  if (z >= upper_cutoff()) return 0.0;
  if (z <= 0.0) return 1.0;
  double f = f_functional(a_, z / c4_);
  if (std::isinf(f)) return 0.0;
  return std::min(1.0, std::exp(1.0 - f));
}

bool TailEnvelope::chain_ok(double z) const {
  if (z <= 0.0) return true;
  double g = g_functional(a_, 4.0 * beta_ * z);
  double f = f_functional(a_, c3_ * z);
  if (std::isinf(f)) return true;
  if (std::isinf(g)) return false;
  return c2_ * g <= f + 1e-9;
}

TailEnvelope build_envelope(const CoefficientVector& a, double beta,
                            double alpha, double beta_prime) {
  return TailEnvelope(a, beta, alpha, beta_prime);
}

}  // namespace lacuna
