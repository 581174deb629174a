#include "lacuna/kfunctional.hpp"

#include <algorithm>
#include <cmath>

namespace lacuna {

CoefficientVector decreasing_rearrangement(const CoefficientVector& a) {
  return CoefficientVector(a.rearranged());
}

double holmstedt(const CoefficientVector& a, double t) {
  if (t <= 0.0) throw Error("holmstedt: t must be positive");
  double t2 = t * t;
  double snapped = std::round(t2);
  if (std::fabs(t2 - snapped) > 1e-12 * std::max(1.0, t2))
    snapped = std::floor(t2);
  std::size_t head = snapped < 0 ? 0 : static_cast<std::size_t>(snapped);
  const auto& v = a.rearranged();
  long double h = 0.0L, tail2 = 0.0L;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i < head)
      h += v[i];
    else
      tail2 += static_cast<long double>(v[i]) * v[i];
  }
  return static_cast<double>(h + t * sqrtl(tail2));
}

KSplit k_exact(const CoefficientVector& a, double t) {
  if (t <= 0.0) throw Error("k_exact: t must be positive");
  const std::size_t n = a.size();
  KSplit out;
  out.l1_part.assign(n, 0.0);
  out.l2_part.assign(n, 0.0);
  if (a.is_zero()) return out;

  // u = |a| ascending; head(j) = entries strictly above u_j.
  std::vector<double> u = a.rearranged();
  std::reverse(u.begin(), u.end());
  // prefix_sq[j] = sum_{i<j} u_i^2, suffix_l1[j] = sum_{i>=j} u_i.
  std::vector<long double> prefix_sq(n + 1, 0.0L), suffix_l1(n + 1, 0.0L);
  for (std::size_t j = 0; j < n; ++j)
    prefix_sq[j + 1] = prefix_sq[j] + static_cast<long double>(u[j]) * u[j];
  for (std::size_t j = n; j-- > 0;) suffix_l1[j] = suffix_l1[j + 1] + u[j];

  const long double lt = t;
  auto objective = [&](long double lambda, std::size_t j) -> long double {
    // j = count of entries treated as tail (u_0..u_{j-1} <= lambda).
    long double head_count = static_cast<long double>(n - j);
    long double g = suffix_l1[j] - head_count * lambda +
                    lt * sqrtl(prefix_sq[j] + head_count * lambda * lambda);
    return g;
  };

  long double best = -1.0L, best_lambda = 0.0L;
  auto consider = [&](long double lambda, std::size_t j) {
    long double g = objective(lambda, j);
    if (best < 0.0L || g < best ||
        (g == best && lambda < best_lambda)) {
      best = g;
      best_lambda = lambda;
    }
  };

  // Segment endpoints: lambda = 0 and each distinct u value.
  consider(0.0L, 0);
  for (std::size_t j = 0; j < n; ++j) {
    // lambda = u[j]: entries 0..j are tail (<= lambda).
    if (j + 1 < n && u[j + 1] == u[j]) continue;
    consider(u[j], j + 1);
  }
  // Interior critical points: on the segment (u_{j-1}, u_j] with h = n - j
  // head entries, g' = 0 at lambda* = sqrt(prefix_sq[j] / (t^2 - h)).
  const long double t2 = lt * lt;
  for (std::size_t j = 1; j <= n; ++j) {
    long double h = static_cast<long double>(n - j);
    if (t2 <= h) continue;
    long double lam = sqrtl(prefix_sq[j] / (t2 - h));
    long double lo = u[j - 1];
    long double hi = (j < n) ? u[j] : lo;  // j == n: segment [u_max, inf)
    if (j < n) {
      if (lam > lo && lam < hi) consider(lam, j);
    } else if (lam > lo) {
      consider(lam, j);
    }
  }

  out.value = static_cast<double>(best);
  out.lambda = static_cast<double>(best_lambda);
  for (std::size_t i = 0; i < n; ++i) {
    double ai = a[i];
    double ri = std::clamp(ai, -out.lambda, out.lambda);
    out.l2_part[i] = ri;
    out.l1_part[i] = ai - ri;
  }
  return out;
}

double kappa(const CoefficientVector& a, double t) {
  if (t <= 0.0) throw Error("kappa: t must be positive");
  return k_exact(a, std::sqrt(t)).value;
}

}  // namespace lacuna
