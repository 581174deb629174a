#include <doctest.h>

#include "lacuna/rational.hpp"
#include "lacuna/step_function.hpp"

using namespace lacuna;

TEST_SUITE("rational") {

TEST_CASE("arithmetic and normalisation") {
  Rational a(1, 3), b(1, 6);
  CHECK((a + b) == Rational(1, 2));
  CHECK((a - b) == Rational(1, 6));
  CHECK((a * b) == Rational(1, 18));
  CHECK((a / b) == Rational(2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(2, 3)) == Rational(1));
}

TEST_CASE("comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK(abs(Rational(-3, 4)) == Rational(3, 4));
}

TEST_CASE("double round trip is exact") {
  for (double x : {0.5, -0.125, 1.0, 3.75, -1e-9, 0.0, 0.1}) {
    Rational r = Rational::from_double(x);
    CHECK(r.to_double() == x);
  }
  CHECK(Rational::from_double(0.25) == Rational(1, 4));
  CHECK(Rational::from_double(-1.5) == Rational(-3, 2));
}

TEST_CASE("parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("12") == Rational(12));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse(" 1/2 ") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
}

TEST_CASE("string form round trips") {
  for (auto s : {"3/4", "-3/4", "0", "17", "-1000000000000/7"}) {
    CHECK(Rational::parse(Rational::parse(s).str()) == Rational::parse(s));
  }
}

TEST_CASE("overflow is an error, not a wrap") {
  Rational huge(static_cast<Rational::int_t>(1) << 100, 1);
  CHECK_THROWS_AS(huge * huge, OverflowError);
}

TEST_CASE("pow") {
  CHECK(pow(Rational(1, 2), 6) == Rational(1, 64));
  CHECK(pow(Rational(2), 0) == Rational(1));
  CHECK(pow(Rational(2), -2) == Rational(1, 4));
}

TEST_CASE("sqrt-rational") {
  SqrtRational s2 = SqrtRational::sqrt_of(Rational(2));
  CHECK(!s2.is_rational());
  CHECK(s2.squared() == Rational(2));
  CHECK(s2.value() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  SqrtRational s4 = SqrtRational::sqrt_of(Rational(9, 4));
  CHECK(s4.is_rational());
  CHECK(s4.rational_root() == Rational(3, 2));
  CHECK(SqrtRational::parse("sqrt2").squared() == Rational(2));
  CHECK(SqrtRational::parse("sqrt(1/4)").rational_root() == Rational(1, 2));
  CHECK(SqrtRational::parse("3/2").rational_root() == Rational(3, 2));
  CHECK_THROWS_AS(SqrtRational::parse("sqrt2").rational_root(),
                  IrrationalData);
}

}  // TEST_SUITE

TEST_SUITE("step_function") {

TEST_CASE("basic structure and integral") {
  StepFunction f({Rational(0), Rational(1, 2), Rational(1)},
                 {Rational(1), Rational(-1)});
  CHECK(f.piece_count() == 2);
  CHECK(f.integral() == Rational(0));
  CHECK(f.mean() == Rational(0));
  CHECK(f.value_at(Rational(0)) == Rational(1));
  CHECK(f.value_at(Rational(1, 2)) == Rational(-1));
  CHECK(f.value_at(Rational(1)) == Rational(-1));
  CHECK(f.max_abs() == Rational(1));
}

TEST_CASE("invariants are enforced") {
  CHECK_THROWS_AS(StepFunction({Rational(1, 2), Rational(1)}, {Rational(1)}),
                  Error);  // must start at 0
  CHECK_THROWS_AS(StepFunction({Rational(0), Rational(0)}, {Rational(1)}),
                  Error);  // strictly increasing
  CHECK_THROWS_AS(
      StepFunction({Rational(0), Rational(1)}, {Rational(1), Rational(2)}),
      Error);  // piece count
}

TEST_CASE("rademacher pieces and orthogonality") {
  StepFunction r1 = StepFunction::rademacher(1, Rational(1));
  CHECK(r1.piece_count() == 2);
  CHECK(r1.integral() == Rational(0));
  StepFunction r2 = StepFunction::rademacher(2, Rational(1));
  StepFunction prod = StepFunction::combine(
      r1, r2, [](const Rational& a, const Rational& b) { return a * b; });
  CHECK(prod.integral() == Rational(0));
  StepFunction sq = prod.squared();
  CHECK(sq.integral() == Rational(1));
}

TEST_CASE("combine merges grids exactly") {
  StepFunction f({Rational(0), Rational(1, 3), Rational(1)},
                 {Rational(2), Rational(3)});
  StepFunction g({Rational(0), Rational(1, 2), Rational(1)},
                 {Rational(5), Rational(7)});
  StepFunction s = StepFunction::combine(
      f, g, [](const Rational& a, const Rational& b) { return a + b; });
  CHECK(s.piece_count() == 3);
  CHECK(s.value_at(Rational(0)) == Rational(7));
  CHECK(s.value_at(Rational(2, 5)) == Rational(8));
  CHECK(s.value_at(Rational(3, 4)) == Rational(10));
  CHECK(s.integral() == f.integral() + g.integral());
}

TEST_CASE("restrict and concat are inverse-ish") {
  StepFunction f({Rational(0), Rational(1, 2), Rational(1)},
                 {Rational(1), Rational(-2)});
  StepFunction g({Rational(0), Rational(1)}, {Rational(4)});
  StepFunction fg = f.concat(g);
  CHECK(fg.domain_length() == Rational(2));
  CHECK(fg.restrict(Rational(0), Rational(1)) == f);
  CHECK(fg.restrict(Rational(1), Rational(2)) == g);
}

TEST_CASE("tail measures") {
  StepFunction f({Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)},
                 {Rational(2), Rational(-1), Rational(0)});
  CHECK(f.tail_measure(Rational(0)) == Rational(1, 2));
  CHECK(f.tail_measure(Rational(1)) == Rational(1, 4));
  CHECK(f.tail_measure(Rational(2)) == Rational(0));
  CHECK(f.level_measure_ge(Rational(1)) == Rational(1, 2));
  auto dist = f.abs_distribution();
  REQUIRE(dist.size() == 3);
  CHECK(dist[0].first == Rational(0));
  CHECK(dist[2].second == Rational(1, 4));
}

TEST_CASE("compressed merges equal runs") {
  StepFunction f({Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)},
                 {Rational(1), Rational(1), Rational(2)});
  StepFunction c = f.compressed();
  CHECK(c.piece_count() == 2);
  CHECK(c.value_at(Rational(0)) == Rational(1));
  CHECK(c.integral() == f.integral());
}

}  // TEST_SUITE
