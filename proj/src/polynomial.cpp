#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "lacuna/systems.hpp"

namespace lacuna {

Polynomial::Polynomial(SystemSpec sys, std::vector<int> idx,
                       CoefficientVector a)
    : system(std::move(sys)), indices(std::move(idx)), coeffs(std::move(a)) {
  if (indices.size() != coeffs.size())
    throw Error("polynomial: indices/coefficients length mismatch");
  for (int i : indices)
    if (i < 1 || i > system.size())
      throw Error("polynomial: index out of range");
}

double Polynomial::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i)
    acc += coeffs[i] * system.member_eval(indices[i], x);
  return acc;
}

namespace {

constexpr std::size_t kPieceCap = 1u << 20;

// Highest dyadic level needed to represent the given members exactly.
int dyadic_level(const SystemSpec& sys, const std::vector<int>& indices) {
  int level = 1;
  for (int n : indices) {
    int l = sys.kind() == SystemKind::Rademacher
                ? n
                : std::bit_width(static_cast<unsigned>(n));
    level = std::max(level, l);
  }
  if (level > 20)
    throw SizeExceeded("polynomial_step: piece cap exceeded");
  return level;
}

int member_sign_on_cell(const SystemSpec& sys, int n, long long cell,
                        int level) {
  if (sys.kind() == SystemKind::Rademacher)
    return ((cell >> (level - n)) & 1) ? -1 : 1;
  int parity = 0;
  for (int b = 0; n >> b; ++b)
    if (n & (1 << b)) parity ^= static_cast<int>((cell >> (level - b - 1)) & 1);
  return parity ? -1 : 1;
}

}  // namespace

StepFunction polynomial_step(const Polynomial& poly) {
  const SystemSpec& sys = poly.system;
  if (!sys.is_step_kind())
    throw UnsupportedKind("polynomial_step: trig system has no step form");

  if (sys.kind() == SystemKind::CustomStep) {
    StepFunction acc = StepFunction::constant(
        Rational(0), sys.custom_functions().front().domain_length());
    for (std::size_t i = 0; i < poly.indices.size(); ++i) {
      StepFunction term =
          sys.member_step(poly.indices[i])
              .scaled(Rational::from_double(poly.coeffs[i]));
      acc = StepFunction::combine(
          acc, term,
          [](const Rational& a, const Rational& b) { return a + b; });
      if (acc.piece_count() > kPieceCap)
        throw SizeExceeded("polynomial_step: piece cap exceeded");
    }
    return acc;
  }

  const int level = dyadic_level(sys, poly.indices);
  const long long cells = 1LL << level;
  if (static_cast<std::size_t>(cells) > kPieceCap)
    throw SizeExceeded("polynomial_step: piece cap exceeded");
  std::vector<Rational> coeff_r;
  coeff_r.reserve(poly.coeffs.size());
  for (std::size_t i = 0; i < poly.coeffs.size(); ++i)
    coeff_r.push_back(Rational::from_double(poly.coeffs[i]));

  std::vector<Rational> bp, val;
  bp.reserve(cells + 1);
  val.reserve(cells);
  Rational width(1, cells);
  for (long long c = 0; c <= cells; ++c) bp.push_back(width * Rational(c));
  for (long long c = 0; c < cells; ++c) {
    Rational v(0);
    for (std::size_t i = 0; i < poly.indices.size(); ++i) {
      int s = member_sign_on_cell(sys, poly.indices[i], c, level);
      v += s > 0 ? coeff_r[i] : -coeff_r[i];
    }
    val.push_back(v);
  }
  return StepFunction(std::move(bp), std::move(val));
}

namespace {

// Adaptive Simpson with Richardson acceptance.
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, int panels,
                          double rel_tol) {
  panels = std::max(panels, 1);
  double h = (b - a) / panels;
  // Coarse pass to get a scale for the absolute tolerance.
  double coarse = 0.0;
  for (int p = 0; p < panels; ++p) {
    double x0 = a + p * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    coarse += h / 6.0 * (f(x0) + 4.0 * f(xm) + f(x1));
  }
  double tol = std::max(std::fabs(coarse), 1e-300) * rel_tol;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    double x0 = a + p * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    double f0 = f(x0), f1 = f(x1), fm = f(xm);
    double whole = h / 6.0 * (f0 + 4.0 * fm + f1);
    acc += simpson_rec(f, x0, x1, f0, fm, f1, whole, tol / panels, 28);
  }
  return acc;
}

long long max_freq(const Polynomial& poly) {
  long long k = 1;
  for (int idx : poly.indices)
    k = std::max(k, poly.system.freqs()[idx - 1]);
  return k;
}

double lipschitz_bound(const Polynomial& poly) {
  double L = 0.0;
  double amp = poly.system.amplitude().value();
  for (std::size_t i = 0; i < poly.indices.size(); ++i)
    L += std::fabs(poly.coeffs[i]) * 2.0 * M_PI *
         static_cast<double>(poly.system.freqs()[poly.indices[i] - 1]) * amp;
  return L;
}

}  // namespace

double integrate_unit_interval(const std::function<double(double)>& f,
                               int panels, double rel_tol) {
  return integrate_adaptive(f, 0.0, 1.0, panels, rel_tol);
}

double lt_norm(const Polynomial& poly, double t) {
  if (t < 1.0) throw Error("lt_norm: t must be >= 1");
  if (poly.system.is_step_kind()) {
    StepFunction f = polynomial_step(poly);
    long double acc = 0.0L;
    const auto& bp = f.breakpoints();
    const auto& vals = f.values();
    long double norm = f.domain_length().to_double();
    for (std::size_t k = 0; k < vals.size(); ++k) {
      long double len = (bp[k + 1] - bp[k]).to_double();
      long double v = std::fabs(vals[k].to_double());
      if (v > 0.0L) acc += powl(v, static_cast<long double>(t)) * len;
    }
    acc /= norm;
    return static_cast<double>(powl(acc, 1.0L / static_cast<long double>(t)));
  }
  auto f = [&](double x) { return std::pow(std::fabs(poly.eval(x)), t); };
  int panels = static_cast<int>(std::min<long long>(4 * max_freq(poly), 4096));
  double v = integrate_adaptive(f, 0.0, 1.0, panels, 1e-10);
  return std::pow(std::max(v, 0.0), 1.0 / t);
}

SupNorm sup_norm(const Polynomial& poly, double rel_tol) {
  SupNorm out;
  if (poly.system.is_step_kind()) {
    double m = polynomial_step(poly).max_abs().to_double();
    out.lo = out.hi = m;
    return out;
  }
  const double L = lipschitz_bound(poly);
  if (L == 0.0) {
    out.lo = out.hi = std::fabs(poly.eval(0.0));
    return out;
  }
  struct Node {
    double ub, lo_x, hi_x;
    bool operator<(const Node& o) const { return ub < o.ub; }
  };
  std::priority_queue<Node> queue;
  double best = 0.0;
  const int init = static_cast<int>(std::min<long long>(4 * max_freq(poly),
                                                        1 << 14));
  for (int p = 0; p < init; ++p) {
    double x0 = static_cast<double>(p) / init;
    double x1 = static_cast<double>(p + 1) / init;
    double c = std::fabs(poly.eval(0.5 * (x0 + x1)));
    best = std::max(best, c);
    queue.push({c + 0.5 * L * (x1 - x0), x0, x1});
  }
  while (!queue.empty()) {
    Node n = queue.top();
    if (n.ub <= best * (1.0 + rel_tol) + 1e-300) break;
    queue.pop();
    double m = 0.5 * (n.lo_x + n.hi_x);
    for (int half = 0; half < 2; ++half) {
      double x0 = half ? m : n.lo_x;
      double x1 = half ? n.hi_x : m;
      double c = std::fabs(poly.eval(0.5 * (x0 + x1)));
      best = std::max(best, c);
      queue.push({c + 0.5 * L * (x1 - x0), x0, x1});
    }
  }
  out.lo = best;
  out.hi = queue.empty() ? best : std::max(best, queue.top().ub);
  return out;
}

TailProbability tail_probability(const Polynomial& poly, double z,
                                 double tol) {
  if (z < 0.0) throw Error("tail_probability: z must be >= 0");
  TailProbability out;
  if (poly.system.is_step_kind()) {
    Rational exact = tail_probability_exact(poly, Rational::from_double(z));
    out.exact = exact;
    out.value = out.lo = out.hi = exact.to_double();
    return out;
  }
  const double L = lipschitz_bound(poly);
  double inside = 0.0, unresolved = 0.0;
  // Crossing count is bounded by the top frequency; resolve straddling
  // intervals down to a width that keeps the total unresolved mass under tol.
  const double min_width =
      std::max(tol / (16.0 * static_cast<double>(max_freq(poly))), 1e-15);
  struct Seg { double x0, x1; };
  std::vector<Seg> stack;
  const int init = static_cast<int>(std::min<long long>(4 * max_freq(poly),
                                                        1 << 14));
  for (int p = 0; p < init; ++p)
    stack.push_back({static_cast<double>(p) / init,
                     static_cast<double>(p + 1) / init});
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    double w = s.x1 - s.x0;
    double c = std::fabs(poly.eval(0.5 * (s.x0 + s.x1)));
    double r = 0.5 * L * w;
    if (c - r > z) {
      inside += w;
    } else if (c + r <= z) {
      // entirely at or below z: strict tail excludes it
    } else if (w <= min_width) {
      unresolved += w;
    } else {
      double m = 0.5 * (s.x0 + s.x1);
      stack.push_back({s.x0, m});
      stack.push_back({m, s.x1});
    }
  }
  out.lo = inside;
  out.hi = std::min(inside + unresolved, 1.0);
  out.value = 0.5 * (out.lo + out.hi);
  return out;
}

Rational tail_probability_exact(const Polynomial& poly, const Rational& z) {
  if (!poly.system.is_step_kind())
    throw UnsupportedKind("tail_probability_exact: step kinds only");
  StepFunction f = polynomial_step(poly);
  return f.tail_measure(z) / f.domain_length();
}

}  // namespace lacuna
