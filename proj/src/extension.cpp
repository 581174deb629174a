#include "lacuna/extension.hpp"

#include <algorithm>

namespace lacuna {

namespace {

constexpr int kMaxS = 10;

void check_inputs(const std::vector<StepFunction>& g, const Rational& d_bound) {
  if (g.empty()) throw Error("extension: empty function set");
  if (static_cast<int>(g.size()) > kMaxS)
    throw SizeExceeded("extension: s capped at " + std::to_string(kMaxS));
  if (!(Rational(0) < d_bound)) throw Error("extension: D must be positive");
  for (const auto& f : g) {
    if (f.domain_length() != Rational(1))
      throw Error("extension: inputs must live on [0,1]");
    if (f.max_abs() > d_bound)
      throw BoundViolated("extension: |g_i| exceeds D");
  }
}

Rational normalized_product_mean(const std::vector<StepFunction>& g,
                                 const std::vector<int>& support,
                                 const Rational& d_bound) {
  StepFunction acc = StepFunction::constant(Rational(1), Rational(1));
  for (int i : support)
    acc = StepFunction::combine(
        acc, g[i], [](const Rational& x, const Rational& y) { return x * y; });
  return acc.mean() / pow(d_bound, static_cast<int>(support.size()));
}

}  // namespace

int pattern_interval_code(const std::vector<int>& theta) {
  int code = 0;
  for (int v : theta) code = 2 * code + (v ? 1 : 0);
  return code;
}

ExtensionCheck check_extension_condition(const std::vector<StepFunction>& g,
                                         const Rational& d_bound) {
  check_inputs(g, d_bound);
  const int s = static_cast<int>(g.size());
  ExtensionCheck out;
  out.max_abs = Rational(0);
  for (const auto& pat : enumerate_patterns(s, /*square_free_only=*/true)) {
    std::vector<int> support;
    for (int i = 0; i < s; ++i)
      if (pat.theta[i]) support.push_back(i);
    Rational mean = abs(normalized_product_mean(g, support, d_bound));
    if (mean > out.max_abs || out.worst_pattern.empty()) {
      out.max_abs = mean;
      out.worst_pattern = pat.theta;
    }
  }
  out.ok = out.max_abs < pow(Rational(1, 2), s);
  return out;
}

ExtensionResult extend_multiplicative(const std::vector<StepFunction>& g,
                                      const Rational& d_bound) {
  ExtensionCheck check = check_extension_condition(g, d_bound);
  if (!check.ok)
    throw ConditionFailed(
        "extension: product-mean condition fails (max " +
        check.max_abs.str() + " vs 2^-s)");

  const int s = static_cast<int>(g.size());
  const int intervals = 1 << s;  // Delta_1 .. Delta_{2^s}; the last is zero
  const Rational width(1, intervals);

  ExtensionResult out;
  out.plan.s = s;
  out.plan.d_bound = d_bound;
  out.plan.patterns.assign(intervals - 1, {});
  out.plan.alphas.assign(intervals - 1, Rational(0));
  out.plan.product_means.assign(intervals - 1, Rational(0));

  // Per-interval segments for every function; assembled by concatenation.
  std::vector<std::vector<StepFunction>> segments(
      g.size(), std::vector<StepFunction>());

  for (const auto& pat : enumerate_patterns(s, /*square_free_only=*/true)) {
    const int k = pattern_interval_code(pat.theta);
    std::vector<int> support;
    for (int i = 0; i < s; ++i)
      if (pat.theta[i]) support.push_back(i);
    const int m = static_cast<int>(support.size());

    const Rational a_lo = width * Rational(k - 1);   // a_{k-1} - 1
    const Rational a_hi = width * Rational(k);       // a_k - 1
    const Rational mean = normalized_product_mean(g, support, d_bound);
    // v(alpha) = 2 alpha - a_{k-1} - a_k must equal -mean (local coordinates
    // work the same after the shift by 1).
    const Rational alpha = (a_lo + a_hi - mean) / Rational(2);
    if (!(a_lo < alpha) || !(alpha < a_hi))
      throw ConditionFailed("extension: split point escaped its interval");

    out.plan.patterns[k - 1] = pat.theta;
    out.plan.alphas[k - 1] = alpha + Rational(1);
    out.plan.product_means[k - 1] = mean;

    const Rational left_len = alpha - a_lo;
    const Rational right_len = a_hi - alpha;

    for (std::size_t fi = 0; fi < g.size(); ++fi) {
      int pos = -1;
      for (int j = 0; j < m; ++j)
        if (support[j] == static_cast<int>(fi)) pos = j;
      if (pos < 0) {
        segments[fi].push_back(StepFunction::constant(Rational(0), width));
        continue;
      }
      StepFunction left = StepFunction::constant(Rational(1), left_len);
      StepFunction right = StepFunction::constant(Rational(1), right_len);
      if (pos + 1 < m) {
        // h_{i_j}, j < m: the j-th stage function on either half.
        left = StepFunction::rademacher(pos + 1, left_len);
        right = StepFunction::rademacher(pos + 1, right_len);
      } else if (m > 1) {
        // h_{i_m}: the product of all m-1 stage functions, negated right.
        for (int j = 1; j < m; ++j) {
          left = StepFunction::combine(
              left, StepFunction::rademacher(j, left_len),
              [](const Rational& x, const Rational& y) { return x * y; });
          right = StepFunction::combine(
              right, StepFunction::rademacher(j, right_len),
              [](const Rational& x, const Rational& y) { return x * y; });
        }
        right = right.scaled(Rational(-1));
      } else {
        // Singleton: h = D on the left half, -D on the right half.
        right = right.scaled(Rational(-1));
      }
      StepFunction seg = left.concat(right).scaled(d_bound);
      segments[fi].push_back(std::move(seg));
    }
  }

  out.h.reserve(g.size());
  for (std::size_t fi = 0; fi < g.size(); ++fi) {
    StepFunction h = g[fi];
    for (auto& seg : segments[fi]) h = h.concat(seg);
    h = h.concat(StepFunction::constant(Rational(0), width));  // Delta_{2^s}
    if (h.domain_length() != Rational(2))
      throw Error("extension: assembled domain is not [0,2]");
    out.h.push_back(std::move(h));
  }
  return out;
}

MultiplicativityReport verify_multiplicative(
    const std::vector<StepFunction>& h) {
  if (h.empty()) throw Error("verify: empty set");
  for (const auto& f : h)
    if (f.domain_length() != h.front().domain_length())
      throw Error("verify: common domain required");
  const int s = static_cast<int>(h.size());
  if (s > 16) throw SizeExceeded("verify: subset enumeration capped at 16");

  MultiplicativityReport rep;
  rep.ok = true;
  rep.worst_value = Rational(0);
  for (unsigned mask = 1; mask < (1u << s); ++mask) {
    StepFunction acc = StepFunction::constant(Rational(1),
                                              h.front().domain_length());
    std::vector<int> subset;
    for (int i = 0; i < s; ++i)
      if (mask & (1u << i)) {
        subset.push_back(i + 1);
        acc = StepFunction::combine(
            acc, h[i],
            [](const Rational& x, const Rational& y) { return x * y; });
      }
    Rational integral = acc.integral();
    if (!integral.is_zero()) {
      rep.ok = false;
      if (abs(integral) > rep.worst_value) {
        rep.worst_value = abs(integral);
        rep.worst_subset = subset;
      }
    }
  }
  return rep;
}

}  // namespace lacuna
