#include "lacuna/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "lacuna/parallel.hpp"
#include "lacuna/tails.hpp"

namespace lacuna {

namespace {

// Cached tails for one polynomial: exact step distribution, or memoised
// rigorous brackets for trig.
class TailOracle {
 public:
  TailOracle(const SystemSpec& sys, const std::vector<int>& indices,
             const CoefficientVector& a)
      : poly_(sys, indices, a), step_(sys.is_step_kind()) {
    if (step_) {
      StepFunction f = polynomial_step(poly_);
      dist_ = f.abs_distribution();
      total_ = f.domain_length();
    }
  }

  bool exact() const { return step_; }

  // P{|P| > z} as a [lo, hi] bracket (degenerate for step kinds).
  std::pair<double, double> tail(double z) const {
    if (step_) {
      Rational zr = Rational::from_double(z);
      Rational acc(0);
      for (auto it = dist_.rbegin(); it != dist_.rend(); ++it) {
        if (it->first > zr)
          acc += it->second;
        else
          break;
      }
      double v = (acc / total_).to_double();
      return {v, v};
    }
    TailProbability t = tail_probability(poly_, z, 1e-5);
    return {t.lo, t.hi};
  }

 private:
  Polynomial poly_;
  bool step_;
  std::vector<std::pair<Rational, Rational>> dist_;
  Rational total_{1};
};

}  // namespace

EquivalenceReport distribution_compare(
    const SystemSpec& sys_f, const std::vector<int>& indices_f,
    const SystemSpec& sys_g, const std::vector<int>& indices_g,
    const std::vector<CoefficientVector>& family,
    const std::vector<double>& z_grid) {
  if (indices_f.size() != indices_g.size())
    throw Error("distribution_compare: index counts differ");
  if (family.empty() || z_grid.empty())
    throw Error("distribution_compare: empty family or grid");

  EquivalenceReport rep;
  rep.family_size = family.size();
  rep.z_grid_size = z_grid.size();

  // G-side tails are C-independent: evaluate once per (a, z). F-side tails
  // are cheap exact lookups for step systems and re-evaluated per C probe.
  std::vector<TailOracle*> fo(family.size(), nullptr), go(family.size(), nullptr);
  std::vector<std::unique_ptr<TailOracle>> storage;
  storage.reserve(2 * family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    storage.push_back(std::make_unique<TailOracle>(sys_f, indices_f, family[i]));
    fo[i] = storage.back().get();
    storage.push_back(std::make_unique<TailOracle>(sys_g, indices_g, family[i]));
    go[i] = storage.back().get();
  }
  std::vector<std::vector<std::pair<double, double>>> g_tails(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    std::vector<std::pair<double, double>> row(z_grid.size());
    for (std::size_t zi = 0; zi < z_grid.size(); ++zi)
      row[zi] = go[i]->tail(z_grid[zi]);
    g_tails[i] = std::move(row);
  });

  const double slop = 1e-12;
  auto feasible = [&](double c,
                      std::vector<EquivalenceWitness>* violations) {
    bool ok = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
        double z = z_grid[zi];
        auto [glo, ghi] = g_tails[i][zi];
        auto [flo_up, fhi_up] = fo[i]->tail(c * z);
        // lower side: C^-1 P_F{ > Cz } <= P_G{ > z }
        if (fhi_up / c > glo + slop) {
          ok = false;
          if (violations)
            violations->push_back({i, z, "lower"});
          else
            return false;
        }
        auto [flo_dn, fhi_dn] = fo[i]->tail(z / c);
        // upper side: P_G{ > z } <= C P_F{ > z/C }
        if (ghi > c * flo_dn + slop) {
          ok = false;
          if (violations)
            violations->push_back({i, z, "upper"});
          else
            return false;
        }
      }
    }
    return ok;
  };

  if (feasible(1.0, nullptr)) {
    rep.c_hat = 1.0;
    return rep;
  }
  double lo = 1.0, hi = 1e6;
  if (!feasible(hi, nullptr)) {
    rep.unbounded = true;
    rep.c_hat = kPlusInfinity;
    feasible(hi, &rep.witnesses);
    return rep;
  }
  while (hi - lo > 1e-6 * std::max(1.0, lo)) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid, nullptr))
      hi = mid;
    else
      lo = mid;
  }
  rep.c_hat = hi;
  feasible(lo, &rep.witnesses);
  if (rep.witnesses.size() > 8) rep.witnesses.resize(8);
  return rep;
}

MomentCriterion moment_criterion(const SystemSpec& system,
                                 const std::vector<int>& indices,
                                 const std::vector<CoefficientVector>& family,
                                 const std::vector<double>& t_grid) {
  MomentCriterion out;
  out.band = moment_band(system, indices, family, t_grid);
  out.beta = out.band.beta;
  return out;
}

StrongMultCriterion strong_mult_criterion(const SystemSpec& system,
                                          const std::vector<int>& indices) {
  StrongMultCriterion out;
  out.detail = is_strongly_multiplicative(system, indices);
  out.is_strong = out.detail.ok;
  out.d_witness = system.bound().value();
  double d2 = kPlusInfinity;
  for (int idx : indices)
    d2 = std::min(d2, system.member_norm2_sq(idx).to_double());
  out.d2_witness = d2;
  return out;
}

double sidon_constant(const SystemSpec& system, const std::vector<int>& indices,
                      const std::vector<CoefficientVector>& family) {
  if (family.empty()) throw Error("sidon_constant: empty family");
  double best = 0.0;
  bool any = false;
  for (const auto& a : family) {
    if (a.is_zero()) continue;  // zero polynomial: excluded from the max
    Polynomial poly(system, indices, a);
    SupNorm sup = sup_norm(poly);
    if (sup.hi == 0.0) continue;
    // The bracket's upper end keeps the reported value a valid lower bound.
    double ratio = a.l1() / sup.hi;
    best = std::max(best, ratio);
    any = true;
  }
  if (!any) throw ZeroPolynomial("sidon_constant: family has no nonzero member");
  return best;
}

WitnessSet witness_set(const Polynomial& poly, double alpha2, double alpha1) {
  if (!poly.system.is_step_kind())
    throw UnsupportedKind("witness_set: step kinds only");
  if (alpha2 < 0.0 || alpha2 > 1.0)
    throw Error("witness_set: alpha2 must lie in [0,1]");
  StepFunction f = polynomial_step(poly);
  Rational sup = f.max_abs();
  Rational threshold = Rational::from_double(alpha2) * sup;
  Rational measure = f.level_measure_ge(threshold) / f.domain_length();
  WitnessSet out;
  out.measure = measure.to_double();
  const int m = static_cast<int>(poly.indices.size());
  Rational bound = Rational::from_double(alpha1) * pow(Rational(1, 2), m);
  out.threshold_holds = measure > bound;
  return out;
}

std::vector<CoefficientVector> make_family(std::uint64_t seed,
                                           std::size_t count, std::size_t n) {
  if (n == 0) throw Error("make_family: n must be >= 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    // 53-bit mantissa draw, stdlib-independent.
    double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    return lo + u * (hi - lo);
  };
  std::vector<CoefficientVector> family;
  family.reserve(count);
  while (family.size() < count) {
    std::vector<double> v(n, 0.0);
    switch (family.size() % 4) {
      case 0: {  // sparse
        std::size_t k = 1 + rng() % std::min<std::size_t>(3, n);
        for (std::size_t j = 0; j < k; ++j) {
          std::size_t pos = rng() % n;
          v[pos] = (rng() & 1 ? 1.0 : -1.0) * uniform(0.5, 1.0);
        }
        break;
      }
      case 1:  // flat signs
        for (auto& x : v) x = rng() & 1 ? 1.0 : -1.0;
        break;
      case 2: {  // geometric decay
        double r = uniform(0.4, 0.9);
        double cur = 1.0;
        for (auto& x : v) {
          x = (rng() & 1 ? 1.0 : -1.0) * cur;
          cur *= r;
        }
        break;
      }
      default:  // uniform
        for (auto& x : v) x = uniform(-1.0, 1.0);
        break;
    }
    bool zero = true;
    for (double x : v) zero = zero && x == 0.0;
    if (zero) continue;
    family.emplace_back(std::move(v));
  }
  return family;
}

std::vector<double> quantile_z_grid(const Polynomial& reference,
                                    std::size_t max_points) {
  StepFunction f = polynomial_step(reference);
  auto dist = f.abs_distribution();
  std::vector<double> zs;
  zs.push_back(0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    double v = dist[i].first.to_double();
    if (i > 0) {
      double prev = dist[i - 1].first.to_double();
      zs.push_back(0.5 * (prev + v));
    }
    zs.push_back(v);
  }
  zs.push_back(dist.back().first.to_double() * 1.25 + 1e-6);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  if (zs.size() > max_points) {
    std::vector<double> sub;
    sub.reserve(max_points);
    for (std::size_t i = 0; i < max_points; ++i)
      sub.push_back(zs[i * (zs.size() - 1) / (max_points - 1)]);
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    zs = std::move(sub);
  }
  return zs;
}

}  // namespace lacuna
