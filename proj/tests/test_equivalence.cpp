#include <doctest.h>

#include <cmath>

#include "lacuna/equivalence.hpp"
#include "lacuna/json_io.hpp"
#include "lacuna/tails.hpp"

using namespace lacuna;

namespace {

std::vector<int> first_indices(int m) {
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i + 1;
  return idx;
}

}  // namespace

TEST_SUITE("equivalence") {

TEST_CASE("identical systems compare at exactly one") {
  SystemSpec sys = SystemSpec::rademacher(4);
  auto family = make_family(5, 12, 4);
  std::vector<double> zs{0.1, 0.4, 0.9, 1.7, 2.5};
  EquivalenceReport rep = distribution_compare(sys, first_indices(4), sys,
                                               first_indices(4), family, zs);
  CHECK(!rep.unbounded);
  CHECK(rep.c_hat == 1.0);
}

TEST_CASE("rademacher subsystems are equidistributed with the initial segment") {
  SystemSpec big = SystemSpec::rademacher(9);
  SystemSpec small = SystemSpec::rademacher(3);
  auto family = make_family(6, 10, 3);
  std::vector<double> zs{0.05, 0.3, 0.8, 1.4, 2.2};
  EquivalenceReport rep = distribution_compare(
      big, {4, 7, 9}, small, first_indices(3), family, zs);
  CHECK(rep.c_hat == 1.0);
}

TEST_CASE("rademacher vs lacunary sine has a small finite constant") {
  SystemSpec rad = SystemSpec::rademacher(3);
  SystemSpec sine =
      SystemSpec::trig_sine({1, 3, 9}, SqrtRational::sqrt_of(Rational(2)));
  auto family = make_family(77, 8, 3);
  Polynomial ref(rad, first_indices(3), family.front());
  auto zs = quantile_z_grid(ref, 12);
  EquivalenceReport rep = distribution_compare(rad, first_indices(3), sine,
                                               first_indices(3), family, zs);
  CHECK(!rep.unbounded);
  CHECK(rep.c_hat >= 1.0);
  CHECK(rep.c_hat <= 20.0);
}

TEST_CASE("c_hat grows monotonically with the family") {
  SystemSpec f = SystemSpec::rademacher(3);
  StepFunction spread({Rational(0), Rational(1, 8), Rational(1)},
                      {Rational(3), Rational(-1, 4)});
  SystemSpec g = SystemSpec::custom_step(
      {spread, StepFunction::rademacher(2, Rational(1)),
       StepFunction::rademacher(3, Rational(1))});
  auto family = make_family(7, 12, 3);
  std::vector<double> zs{0.2, 0.7, 1.3, 2.1};
  std::vector<CoefficientVector> small_family(family.begin(),
                                              family.begin() + 4);
  EquivalenceReport r1 = distribution_compare(f, first_indices(3), g,
                                              first_indices(3), small_family,
                                              zs);
  EquivalenceReport r2 = distribution_compare(f, first_indices(3), g,
                                              first_indices(3), family, zs);
  if (!r1.unbounded && !r2.unbounded) CHECK(r2.c_hat >= r1.c_hat - 1e-6);
}

TEST_CASE("moment criterion delegates to the band") {
  SystemSpec sys = SystemSpec::rademacher(6);
  auto family = make_family(8, 16, 6);
  MomentCriterion c = moment_criterion(sys, first_indices(6), family,
                                       {1.0, 2.0, 4.0, 8.0});
  CHECK(c.beta >= 1.0);
  CHECK(c.band.c_lower > 0.0);
  CHECK(c.band.c_upper >= c.band.c_lower);
}

TEST_CASE("strong multiplicativity criterion") {
  StrongMultCriterion rad =
      strong_mult_criterion(SystemSpec::rademacher(5), first_indices(5));
  CHECK(rad.is_strong);
  CHECK(rad.d_witness == doctest::Approx(1.0));
  CHECK(rad.d2_witness == doctest::Approx(1.0));

  SystemSpec sine3 =
      SystemSpec::trig_sine({1, 3, 9}, SqrtRational::sqrt_of(Rational(2)));
  StrongMultCriterion s3 = strong_mult_criterion(sine3, first_indices(3));
  CHECK(s3.is_strong);
  CHECK(s3.d_witness == doctest::Approx(std::sqrt(2.0)));
  CHECK(s3.d2_witness == doctest::Approx(1.0));

  SystemSpec sine2 =
      SystemSpec::trig_sine({1, 2, 4}, SqrtRational::sqrt_of(Rational(2)));
  StrongMultCriterion s2 = strong_mult_criterion(sine2, first_indices(3));
  CHECK(!s2.is_strong);  // 1 + 1 + 2 = 4 relation with a squared factor
}

TEST_CASE("sidon constant of rademacher is exactly one") {
  SystemSpec sys = SystemSpec::rademacher(5);
  auto family = make_family(9, 12, 5);
  CHECK(sidon_constant(sys, first_indices(5), family) == 1.0);
}

TEST_CASE("sidon constant of a single function") {
  StepFunction f({Rational(0), Rational(1, 2), Rational(1)},
                 {Rational(2), Rational(-1, 2)});
  SystemSpec sys = SystemSpec::custom_step({f});
  std::vector<CoefficientVector> fam{CoefficientVector({1.0})};
  CHECK(sidon_constant(sys, {1}, fam) == doctest::Approx(0.5));
}

TEST_CASE("witness sets") {
  SystemSpec sys = SystemSpec::rademacher(3);
  Polynomial p(sys, first_indices(3), CoefficientVector({1, 1, 1}));
  WitnessSet w = witness_set(p, 0.5, 1.0);
  CHECK(w.measure >= std::pow(2.0, -3.0));
  CHECK(w.threshold_holds);

  WitnessSet top = witness_set(p, 1.0, 1.0);
  CHECK(top.measure == doctest::Approx(0.25));  // the two extreme cells

  StepFunction c = StepFunction::constant(Rational(2), Rational(1));
  SystemSpec csys = SystemSpec::custom_step({c});
  Polynomial cp(csys, {1}, CoefficientVector({1.0}));
  CHECK(witness_set(cp, 0.9, 1.0).measure == doctest::Approx(1.0));
}

TEST_CASE("measured band closes the loop: envelope contains walsh tails") {
  // moment_band certifies a beta for the subsystem; the envelope built from
  // that beta must contain the exact tails of the same family.
  SystemSpec sys = SystemSpec::walsh(16);
  std::vector<int> idx{1, 2, 4, 8};
  auto family = make_family(31, 16, 4);
  MomentBand band = moment_band(sys, idx, family, {1, 2, 4, 8, 16});
  double beta = std::max(band.beta, 1.0);
  long violations = 0;
  for (const auto& a : family) {
    if (a.max_abs() < 0.05) continue;
    Polynomial p(sys, idx, a);
    TailEnvelope env = build_envelope(a, beta, 1.0, beta);
    for (double z : quantile_z_grid(p, 24)) {
      double tail = tail_probability(p, z).value;
      if (!(env.lower(z) <= tail + 1e-12)) ++violations;
      if (!(tail <= env.upper(z) + 1e-12)) ++violations;
    }
    Rational cut = Rational::from_double(env.upper_cutoff());
    if (!tail_probability_exact(p, cut).is_zero()) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("family generator is deterministic and non-degenerate") {
  auto f1 = make_family(123, 20, 6);
  auto f2 = make_family(123, 20, 6);
  REQUIRE(f1.size() == 20);
  for (std::size_t i = 0; i < f1.size(); ++i) {
    CHECK(f1[i].entries() == f2[i].entries());
    CHECK(!f1[i].is_zero());
  }
  auto f3 = make_family(124, 20, 6);
  bool any_diff = false;
  for (std::size_t i = 0; i < f1.size(); ++i)
    any_diff = any_diff || f1[i].entries() != f3[i].entries();
  CHECK(any_diff);
}

TEST_CASE("quantile grid covers the distribution") {
  SystemSpec sys = SystemSpec::rademacher(4);
  Polynomial p(sys, first_indices(4), CoefficientVector({1, 0.5, 0.25, 0.125}));
  auto zs = quantile_z_grid(p, 32);
  CHECK(zs.size() <= 32);
  CHECK(zs.front() == doctest::Approx(0.0));
  CHECK(zs.back() > 1.875);  // beyond the sup
  for (std::size_t i = 1; i < zs.size(); ++i) CHECK(zs[i] > zs[i - 1]);
}

TEST_CASE("equivalence report json") {
  EquivalenceReport rep;
  rep.c_hat = 2.5;
  rep.family_size = 3;
  rep.z_grid_size = 4;
  rep.witnesses.push_back({1, 0.7, "upper"});
  json j = equivalence_report_to_json(rep);
  CHECK(j["c_hat"] == 2.5);
  CHECK(j["witnesses"][0]["side"] == "upper");
}

}  // TEST_SUITE
