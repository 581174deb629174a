#include "lacuna/selection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lacuna/kfunctional.hpp"
#include "lacuna/parallel.hpp"

namespace lacuna {

EpsilonSchedule EpsilonSchedule::geometric(int count, double first,
                                           double ratio) {
  if (count < 1) throw Error("schedule: count must be >= 1");
  if (first <= 0.0 || ratio <= 0.0 || ratio > 0.5)
    throw Error("schedule: need first > 0 and 0 < ratio <= 1/2");
  EpsilonSchedule s;
  s.eps.reserve(count);
  double v = first;
  for (int i = 0; i < count; ++i) {
    s.eps.push_back(v);
    v *= ratio;
  }
  return s;
}

void EpsilonSchedule::validate(double d_bound) const {
  if (eps.empty()) throw Error("schedule: empty");
  const double cap = std::min(1.0, d_bound) / 16.0;
  for (double e : eps)
    if (!(e > 0.0) || !(e < cap))
      throw Error("schedule: entries must lie in (0, min(1,D)/16)");
  // Tail condition on the finite horizon; entries beyond it count as 0.
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double tail = 0.0;
    for (std::size_t k = i + 1; k < eps.size(); ++k) tail += eps[k];
    if (!(tail < eps[i]))
      throw Error("schedule: tail sum must stay below each entry");
  }
}

namespace {

// Per-pattern squared normalised expectation: (E[prod (f/D)^theta])^2
// = E^2 / D^{2F} with F = sum theta, exact.
Rational pattern_term(const SystemSpec& system, const std::vector<int>& indices,
                      const ExponentPattern& pat, const Rational& dsq) {
  ExactReal e = monomial_expectation(system, indices, pat);
  if (e.is_zero()) return Rational(0);
  int total = 0;
  for (int v : pat.theta) total += v;
  return e.squared() * pow(Rational(1) / dsq, total);
}

Rational condition_sum_impl(const SystemSpec& system,
                            const std::vector<int>& indices,
                            const Rational& dsq,
                            const std::vector<ExponentPattern>& patterns,
                            ExponentPattern* worst) {
  Rational sum(0);
  Rational worst_term(-1);
  for (const auto& pat : patterns) {
    Rational term = pattern_term(system, indices, pat, dsq);
    sum += term;
    if (worst && term > worst_term) {
      worst_term = term;
      *worst = pat;
    }
  }
  return sum;
}

}  // namespace

Rational kashin_condition_sum(const SystemSpec& system,
                              const std::vector<int>& indices,
                              const SqrtRational& d_bound) {
  const int s = static_cast<int>(indices.size());
  if (s < 1) throw Error("kashin: empty index set");
  if (s > 12)
    throw TooManyIndices("kashin: s > 12 exceeds the pattern bound");
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j])
        throw Error("kashin: indices must be distinct");
  auto patterns = enumerate_patterns(s, false);
  return condition_sum_impl(system, indices, d_bound.squared(), patterns,
                            nullptr);
}

SelectionCertificate kashin_select(const SystemSpec& system, int N, int s,
                                   const SqrtRational& d_bound,
                                   long long budget, std::uint64_t seed) {
  if (s < 1 || s > std::min(N, 12))
    throw TooManyIndices("kashin_select: need 1 <= s <= min(N, 12)");
  if (N > system.size())
    throw Error("kashin_select: N exceeds system size");

  const Rational dsq = d_bound.squared();
  const auto patterns = enumerate_patterns(s, false);
  const Rational threshold = pow(Rational(1, 10), s);

  std::mt19937_64 rng(seed);
  auto random_subset = [&]() {
    std::vector<int> pool(N);
    for (int i = 0; i < N; ++i) pool[i] = i + 1;
    // Fisher-Yates prefix, stdlib-independent for reproducibility.
    for (int i = 0; i < s; ++i) {
      std::uint64_t j = i + rng() % static_cast<std::uint64_t>(N - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> subset(pool.begin(), pool.begin() + s);
    std::sort(subset.begin(), subset.end());
    return subset;
  };

  SelectionCertificate cert;
  cert.seed = seed;
  cert.system = system.describe();
  cert.threshold = threshold.to_double();

  Rational best_sum(-1);
  std::vector<int> best_subset;

  auto finish = [&](bool success) {
    cert.success = success;
    cert.indices = best_subset;
    // Final re-verification from scratch through the oracle.
    ExponentPattern worst;
    Rational verified = condition_sum_impl(system, best_subset, dsq, patterns,
                                           &worst);
    cert.condition_sum = verified.to_double();
    cert.condition_sum_exact = verified.str();
    cert.worst_pattern = worst.theta;
    if (success && verified > threshold)
      throw Error("kashin_select: internal verification failed");
    return cert;
  };

  while (cert.stats.evaluations < budget) {
    ++cert.stats.restarts;
    std::vector<int> subset = random_subset();
    ExponentPattern worst;
    Rational sum = condition_sum_impl(system, subset, dsq, patterns, &worst);
    ++cert.stats.evaluations;
    if (best_sum < Rational(0) || sum < best_sum) {
      best_sum = sum;
      best_subset = subset;
    }

    // Greedy repair: swap positions participating in the worst pattern.
    while (sum > threshold && cert.stats.evaluations < budget) {
      std::vector<std::pair<int, int>> moves;  // (position, replacement)
      for (int p = 0; p < s; ++p) {
        if (worst.theta.empty() || worst.theta[p] == 0) continue;
        for (int r = 1; r <= N; ++r) {
          if (std::find(subset.begin(), subset.end(), r) != subset.end())
            continue;
          moves.emplace_back(p, r);
          if (cert.stats.evaluations +
                  static_cast<long long>(moves.size()) >= budget)
            break;
        }
        if (cert.stats.evaluations +
                static_cast<long long>(moves.size()) >= budget)
          break;
      }
      if (moves.empty()) break;
      std::vector<Rational> trial_sums(moves.size(), Rational(0));
      parallel_for(moves.size(), [&](std::size_t mi) {
        std::vector<int> trial = subset;
        trial[moves[mi].first] = moves[mi].second;
        std::sort(trial.begin(), trial.end());
        trial_sums[mi] = condition_sum_impl(system, trial, dsq, patterns,
                                            nullptr);
      });
      cert.stats.evaluations += static_cast<long long>(moves.size());
      std::size_t best_mi = 0;
      for (std::size_t mi = 1; mi < moves.size(); ++mi)
        if (trial_sums[mi] < trial_sums[best_mi]) best_mi = mi;
      if (!(trial_sums[best_mi] < sum)) break;  // local optimum: restart
      subset[moves[best_mi].first] = moves[best_mi].second;
      std::sort(subset.begin(), subset.end());
      sum = trial_sums[best_mi];
      ExponentPattern w2;
      condition_sum_impl(system, subset, dsq, patterns, &w2);
      ++cert.stats.evaluations;
      worst = w2;
      if (sum < best_sum) {
        best_sum = sum;
        best_subset = subset;
      }
    }
    if (best_sum <= threshold) return finish(true);
  }
  if (!best_subset.empty() && best_sum <= threshold) return finish(true);
  cert.note = "budget exhausted; best found reported";
  return finish(false);
}

bool reverify_kashin(const SystemSpec& system, const SelectionCertificate& cert,
                     const SqrtRational& d_bound) {
  Rational sum = kashin_condition_sum(system, cert.indices, d_bound);
  const int s = static_cast<int>(cert.indices.size());
  return sum <= pow(Rational(1, 10), s);
}

WeakLimit WeakLimit::of_step(StepFunction f) {
  WeakLimit h;
  h.constant = 0.0;
  h.step = std::move(f);
  return h;
}

namespace {

// |E(phi_S phi_c^2) - E(phi_S h)|, exact through the shared amp^|S| factor.
double phi_sq_minus_h_term(const SystemSpec& system,
                           const std::vector<int>& members,
                           const std::vector<int>& theta_s, int cand,
                           const WeakLimit& h) {
  std::vector<int> idx = members;
  std::vector<int> theta = theta_s;
  idx.push_back(cand);
  theta.push_back(2);
  ExactReal sq = monomial_expectation(system, idx, ExponentPattern{theta});

  if (system.is_step_kind()) {
    Rational left = sq.rational_value();
    Rational right(0);
    if (h.step.has_value()) {
      StepFunction acc = *h.step;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (theta_s[i] == 0) continue;
        StepFunction f = system.member_step(members[i]);
        if (theta_s[i] == 2) f = f.squared();
        acc = StepFunction::combine(acc, f, [](const Rational& x,
                                               const Rational& y) {
          return x * y;
        });
      }
      right = acc.mean();
    } else {
      ExactReal plain = monomial_expectation(
          system, members, ExponentPattern{theta_s});
      right = Rational::from_double(h.constant) * plain.rational_value();
    }
    return abs(left - right).to_double();
  }

  // Trig: E(phi_S phi_c^2) = q1 amp^{F+2}, E(phi_S) h0 = q2 h0 amp^F, so the
  // difference is (q1 amp^2 - q2 h0) amp^F with amp^2 rational.
  if (h.step.has_value())
    throw UnsupportedKind("greedy: step-function h on a trig system");
  ExactReal plain =
      monomial_expectation(system, members, ExponentPattern{theta_s});
  Rational q_diff = sq.coefficient() * system.amplitude().squared() -
                    plain.coefficient() * Rational::from_double(h.constant);
  ExactReal diff(q_diff, system.amplitude().squared(), plain.amp_power());
  return diff.abs_double();
}

double h_coupled_term(const SystemSpec& system, const std::vector<int>& members,
                      const std::vector<int>& theta_s, int cand,
                      const WeakLimit& h) {
  std::vector<int> idx = members;
  std::vector<int> theta = theta_s;
  idx.push_back(cand);
  theta.push_back(1);
  if (h.step.has_value()) {
    StepFunction acc = *h.step;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (theta[i] == 0) continue;
      StepFunction f = system.member_step(idx[i]);
      if (theta[i] == 2) f = f.squared();
      acc = StepFunction::combine(
          acc, f, [](const Rational& x, const Rational& y) { return x * y; });
    }
    return abs(acc.mean()).to_double();
  }
  ExactReal e = monomial_expectation(system, idx, ExponentPattern{theta});
  return std::fabs(h.constant) * e.abs_double();
}

// The step-condition sum for candidate `cand` against the accepted prefix.
double greedy_step_sum(const SystemSpec& system,
                       const std::vector<int>& accepted, int cand,
                       const WeakLimit& h) {
  const std::size_t m = accepted.size();
  double sum = 0.0;
  const std::size_t subsets = 1u << m;
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<int> theta_s(m, 0);
    std::vector<int> positions;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) {
        theta_s[b] = 1;
        positions.push_back(static_cast<int>(b));
      }
    // plain product with the candidate
    {
      std::vector<int> idx = accepted;
      std::vector<int> theta = theta_s;
      idx.push_back(cand);
      theta.push_back(1);
      sum += monomial_expectation(system, idx, ExponentPattern{theta})
                 .abs_double();
    }
    sum += h_coupled_term(system, accepted, theta_s, cand, h);
    sum += phi_sq_minus_h_term(system, accepted, theta_s, cand, h);
    // squared-factor variants within the subset
    for (int pos : positions) {
      std::vector<int> idx = accepted;
      std::vector<int> theta = theta_s;
      theta[pos] = 2;
      idx.push_back(cand);
      theta.push_back(1);
      sum += monomial_expectation(system, idx, ExponentPattern{theta})
                 .abs_double();
    }
  }
  return sum;
}

}  // namespace

SelectionCertificate greedy_select(const SystemSpec& system, int horizon,
                                   const EpsilonSchedule& schedule,
                                   const WeakLimit& h,
                                   const SqrtRational& d_bound) {
  schedule.validate(d_bound.value());
  const int want = static_cast<int>(schedule.eps.size());
  if (want > 12)
    throw TooManyIndices("greedy_select: accepted count capped at 12");
  if (horizon > system.size())
    throw Error("greedy_select: horizon exceeds system size");

  SelectionCertificate cert;
  cert.system = system.describe();
  const double d = d_bound.value();

  std::vector<int> accepted;
  int cand = 1;
  while (static_cast<int>(accepted.size()) < want && cand <= horizon) {
    const int i = static_cast<int>(accepted.size()) + 1;
    const double threshold =
        std::pow(2.0, -i) * schedule.eps[i - 1] / d;
    double sum = greedy_step_sum(system, accepted, cand, h);
    ++cert.stats.evaluations;
    if (sum <= threshold + 1e-12) {
      accepted.push_back(cand);
      cert.per_step_sums.push_back(sum);
      cert.per_step_thresholds.push_back(threshold);
    }
    ++cand;
  }
  if (static_cast<int>(accepted.size()) < want)
    throw HorizonExhausted(
        "greedy_select: horizon exhausted with " +
        std::to_string(accepted.size()) + " of " + std::to_string(want) +
        " accepted");
  cert.success = true;
  cert.indices = accepted;
  double worst = 0.0;
  for (std::size_t k = 0; k < cert.per_step_sums.size(); ++k) {
    if (cert.per_step_sums[k] >= worst) {
      worst = cert.per_step_sums[k];
      cert.condition_sum = cert.per_step_sums[k];
      cert.threshold = cert.per_step_thresholds[k];
    }
  }
  return cert;
}

RieszProduct::RieszProduct(SystemSpec system, std::vector<int> indices,
                           std::vector<double> weights)
    : system_(std::move(system)), indices_(std::move(indices)) {
  if (this->indices_.size() != weights.size())
    throw Error("riesz: indices/weights length mismatch");
  if (this->indices_.size() > 12)
    throw TooManyIndices("riesz: factor count capped at 12");
  // Weights are snapped toward zero onto a 2^-8 dyadic grid so products of
  // up to 12 factors stay inside the exact integer range. Truncation never
  // enlarges |b_i|, so admissibility is preserved.
  weights_.reserve(weights.size());
  weights_r_.reserve(weights.size());
  for (double b : weights) {
    double snapped = std::trunc(b * 256.0) / 256.0;
    Rational br = Rational::from_double(snapped);
    if (br * br * system_.bound().squared() > Rational(1))
      throw WeightTooLarge("riesz: |b_i| D must be <= 1 for nonnegativity");
    weights_.push_back(snapped);
    weights_r_.push_back(br);
  }
  for (std::size_t i = 0; i < indices_.size(); ++i)
    for (std::size_t j = i + 1; j < indices_.size(); ++j)
      if (indices_[i] == indices_[j])
        throw Error("riesz: indices must be distinct");
  // Rademacher subsystems are equidistributed with the initial segment, so
  // relabelling keeps every expectation and the step form exact while the
  // original indices may sit far beyond the 2^20 piece cap.
  if (system_.kind() == SystemKind::Rademacher) {
    system_ = SystemSpec::rademacher(
        std::max<int>(1, static_cast<int>(indices_.size())));
    for (std::size_t i = 0; i < indices_.size(); ++i)
      indices_[i] = static_cast<int>(i) + 1;
  }
  if (system_.is_step_kind() && !indices_.empty()) {
    StepFunction acc = StepFunction::constant(
        Rational(1), system_.member_step(indices_[0]).domain_length());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      StepFunction f = system_.member_step(indices_[i]);
      const Rational& b = weights_r_[i];
      acc = StepFunction::combine(acc, f,
                                  [&b](const Rational& x, const Rational& y) {
                                    return x * (Rational(1) + b * y);
                                  });
    }
    step_ = std::move(acc);
  }
}

const StepFunction& RieszProduct::step() const {
  if (!step_.has_value())
    throw UnsupportedKind("riesz: no step representation for trig systems");
  return *step_;
}

double RieszProduct::eval(double x) const {
  if (step_.has_value()) return step_->eval(x);
  double acc = 1.0;
  for (std::size_t i = 0; i < indices_.size(); ++i)
    acc *= 1.0 + weights_[i] * system_.member_eval(indices_[i], x);
  return acc;
}

double RieszProduct::expectation() const {
  if (step_.has_value()) return step_->mean().to_double();
  const std::size_t m = indices_.size();
  double acc = 0.0;
  for (std::size_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    std::vector<int> theta;
    double bw = 1.0;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) {
        idx.push_back(indices_[b]);
        theta.push_back(1);
        bw *= weights_[b];
      }
    if (idx.empty()) {
      acc += 1.0;
      continue;
    }
    acc += bw *
           monomial_expectation(system_, idx, ExponentPattern{theta}).to_double();
  }
  return acc;
}

double RieszProduct::correlation_with_member(int position) const {
  if (position < 1 || position > static_cast<int>(indices_.size()))
    throw Error("riesz: position out of range");
  const std::size_t m = indices_.size();
  const int target = indices_[position - 1];
  double acc = 0.0;
  for (std::size_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> idx;
    std::vector<int> theta;
    double bw = 1.0;
    bool target_in_s = false;
    for (std::size_t b = 0; b < m; ++b)
      if (mask & (1u << b)) {
        bw *= weights_[b];
        if (static_cast<int>(b) == position - 1) {
          target_in_s = true;
          idx.push_back(indices_[b]);
          theta.push_back(2);
        } else {
          idx.push_back(indices_[b]);
          theta.push_back(1);
        }
      }
    if (!target_in_s) {
      idx.push_back(target);
      theta.push_back(1);
    }
    acc += bw *
           monomial_expectation(system_, idx, ExponentPattern{theta}).to_double();
  }
  return acc;
}

double RieszProduct::correlation(const CoefficientVector& a) const {
  if (a.size() != indices_.size())
    throw Error("riesz: coefficient length mismatch");
  if (step_.has_value()) {
    // Integrate R * P over the merged exact grids; only the final products
    // against the float coefficients leave rational arithmetic.
    std::vector<StepFunction> members;
    members.reserve(indices_.size());
    for (int idx : indices_) members.push_back(system_.member_step(idx));
    std::vector<Rational> cuts = step_->breakpoints();
    for (const auto& f : members)
      for (const auto& b : f.breakpoints()) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    long double acc = 0.0L;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      Rational mid = (cuts[k] + cuts[k + 1]) / Rational(2);
      long double pv = 0.0L;
      for (std::size_t i = 0; i < members.size(); ++i)
        pv += static_cast<long double>(a[i]) *
              members[i].value_at(mid).to_double();
      acc += static_cast<long double>(step_->value_at(mid).to_double()) * pv *
             (cuts[k + 1] - cuts[k]).to_double();
    }
    return static_cast<double>(acc / step_->domain_length().to_double());
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < indices_.size(); ++i)
    acc += a[i] * correlation_with_member(static_cast<int>(i) + 1);
  return acc;
}

RieszProduct riesz_product(const SystemSpec& system,
                           const std::vector<int>& indices,
                           const std::vector<double>& weights) {
  return RieszProduct(system, indices, weights);
}

namespace {

void check_blocks(const std::vector<std::vector<int>>& blocks,
                  std::size_t count) {
  std::vector<bool> seen(count, false);
  for (const auto& blk : blocks)
    for (int p : blk) {
      if (p < 1 || p > static_cast<int>(count))
        throw Error("riesz: block position out of range");
      if (seen[p - 1]) throw Error("riesz: blocks must be disjoint");
      seen[p - 1] = true;
    }
  for (bool s : seen)
    if (!s) throw Error("riesz: blocks must cover every position");
}

}  // namespace

RieszCertificate riesz_lower_certificate(
    const SystemSpec& system, const std::vector<int>& indices,
    const CoefficientVector& a, const std::vector<std::vector<int>>& blocks,
    const SqrtRational& d_bound) {
  if (a.size() != indices.size())
    throw Error("riesz: coefficient length mismatch");
  check_blocks(blocks, indices.size());
  const double d = d_bound.value();

  RieszCertificate cert;
  cert.blocks = blocks;
  std::vector<double> b(indices.size(), 0.0);
  double target = 0.0;
  for (const auto& blk : blocks) {
    double norm2 = 0.0;
    for (int p : blk) norm2 += a[p - 1] * a[p - 1];
    double norm = std::sqrt(norm2);
    target += norm;
    if (norm == 0.0) continue;
    // Scale fractionally below the exact budget so the rational admissibility
    // check cannot fail on the last float bit.
    const double safety = 1.0 - 1e-12;
    for (int p : blk) b[p - 1] = safety * a[p - 1] / (d * norm);
  }
  target /= 3.0 * d;
  cert.lower_target = target;

  RieszProduct r(system, indices, b);
  cert.weights = r.weights();  // after the dyadic snap
  cert.i_n = r.correlation(a);
  cert.holds = cert.i_n >= target - 1e-9;
  cert.gamma_terms.resize(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    cert.gamma_terms[i] =
        r.correlation_with_member(static_cast<int>(i) + 1) - cert.weights[i];
  return cert;
}

RieszCertificate riesz_dual_norm(const SystemSpec& system,
                                 const std::vector<int>& indices,
                                 const std::vector<double>& weights, int t,
                                 const std::vector<std::vector<int>>& blocks,
                                 const SqrtRational& d_bound) {
  if (t < 3) throw Error("riesz_dual_norm: t must be an integer >= 3");
  check_blocks(blocks, indices.size());
  // Block admissibility: sum of b_i^2 within each block <= D^-2.
  const Rational dsq = d_bound.squared();
  for (const auto& blk : blocks) {
    Rational s(0);
    for (int p : blk) {
      Rational br = Rational::from_double(weights[p - 1]);
      s += br * br;
    }
    if (s * dsq > Rational(1))
      throw WeightTooLarge("riesz_dual_norm: block weight budget exceeded");
  }

  RieszCertificate cert;
  cert.blocks = blocks;
  cert.weights = weights;
  const double tp = static_cast<double>(t) / (t - 1);
  cert.t_prime = tp;

  RieszProduct r(system, indices, weights);
  if (system.is_step_kind()) {
    const StepFunction& f = r.step();
    long double acc = 0.0L;
    const auto& bp = f.breakpoints();
    const auto& vals = f.values();
    for (std::size_t k = 0; k < vals.size(); ++k) {
      long double len = (bp[k + 1] - bp[k]).to_double();
      long double v = vals[k].to_double();
      if (v < 0.0L) v = 0.0L;  // admissible weights keep R >= 0 exactly
      acc += powl(v, static_cast<long double>(tp)) * len;
    }
    cert.l_n = static_cast<double>(acc / f.domain_length().to_double());
  } else {
    auto f = [&](double x) { return std::pow(std::max(r.eval(x), 0.0), tp); };
    long long kmax = 1;
    for (int idx : indices) kmax = std::max(kmax, system.freqs()[idx - 1]);
    int panels = static_cast<int>(std::min<long long>(4 * kmax, 4096));
    cert.l_n = integrate_unit_interval(f, panels, 1e-10);
  }

  cert.bound_leading =
      std::pow(static_cast<double>(t - 1) / (t - 2), t);
  double expectation_part = 0.0;
  const std::size_t m = indices.size();
  if (m > 14)
    throw TooManyIndices("riesz_dual_norm: subset bound capped at 14 indices");
  for (std::size_t i = 1; i < m; ++i) {
    // Subsets of the first i positions, paired with position i (0-based).
    double inner = 0.0;
    for (std::size_t mask = 0; mask < (1u << i); ++mask) {
      std::vector<int> idx;
      std::vector<int> theta;
      for (std::size_t b = 0; b < i; ++b)
        if (mask & (1u << b)) {
          idx.push_back(indices[b]);
          theta.push_back(1);
        }
      idx.push_back(indices[i]);
      theta.push_back(1);
      inner +=
          monomial_expectation(system, idx, ExponentPattern{theta}).abs_double();
    }
    expectation_part += std::pow(2.0, static_cast<double>(i + 1)) * inner;
  }
  cert.bound_expectation_part = 4.0 * M_E * expectation_part;
  cert.bound_total = cert.bound_leading + cert.bound_expectation_part;
  return cert;
}

MomentBand moment_band(const SystemSpec& system, const std::vector<int>& indices,
                       const std::vector<CoefficientVector>& family,
                       const std::vector<double>& t_grid) {
  if (family.empty() || t_grid.empty())
    throw Error("moment_band: empty family or grid");
  for (const auto& a : family)
    if (a.is_zero())
      throw Error("moment_band: degenerate all-zero family member");
  for (double t : t_grid)
    if (t < 1.0) throw Error("moment_band: grid values must be >= 1");

  std::vector<std::vector<double>> ratios(family.size());
  parallel_for(family.size(), [&](std::size_t fi) {
    const CoefficientVector& a = family[fi];
    Polynomial poly(system, indices, a);
    std::vector<double> row(t_grid.size());
    if (system.is_step_kind()) {
      // One step build per member; all t norms from the same pieces.
      StepFunction f = polynomial_step(poly);
      const auto& bp = f.breakpoints();
      const auto& vals = f.values();
      double dl = f.domain_length().to_double();
      std::vector<double> absv(vals.size()), len(vals.size());
      for (std::size_t k = 0; k < vals.size(); ++k) {
        absv[k] = std::fabs(vals[k].to_double());
        len[k] = (bp[k + 1] - bp[k]).to_double();
      }
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < vals.size(); ++k)
          if (absv[k] > 0.0)
            acc += powl(absv[k], static_cast<long double>(t_grid[ti])) * len[k];
        double norm = static_cast<double>(
            powl(acc / dl, 1.0L / static_cast<long double>(t_grid[ti])));
        row[ti] = norm / kappa(a, t_grid[ti]);
      }
    } else {
      for (std::size_t ti = 0; ti < t_grid.size(); ++ti)
        row[ti] = lt_norm(poly, t_grid[ti]) / kappa(a, t_grid[ti]);
    }
    ratios[fi] = std::move(row);
  });

  MomentBand band;
  bool first = true;
  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      double r = ratios[fi][ti];
      if (first || r < band.c_lower) {
        band.c_lower = r;
        band.lower_witness = {fi, t_grid[ti], r};
      }
      if (first || r > band.c_upper) {
        band.c_upper = r;
        band.upper_witness = {fi, t_grid[ti], r};
      }
      first = false;
    }
  }
  band.beta = std::max(band.c_upper, 1.0 / band.c_lower);
  return band;
}

}  // namespace lacuna
