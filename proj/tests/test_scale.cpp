#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "emergent/scale.hpp"

using namespace emg;

TEST_CASE("rational scale group laws are exact") {
  Scale half = Scale::from_rational(Rational(1, 2));
  Scale third = Scale::from_rational(Rational(1, 3));
  CHECK(half.times(third).value() == Rational(1, 6));
  CHECK(half.times(half.inverse()).is_one());
  CHECK(half.inverse().value() == 2);
  CHECK(half.pow(3).value() == Rational(1, 8));
  CHECK(Scale::one(ScaleKind::rational).is_one());
  CHECK_THROWS_AS(Scale::from_rational(Rational(0)), ConfigError);
  CHECK_THROWS_AS(Scale::from_rational(Rational(-1, 2)), ConfigError);
}

TEST_CASE("abs is a morphism to (0,+inf)") {
  Scale s = Scale::from_rational(Rational(3, 4));
  Scale t = Scale::from_rational(Rational(2, 5));
  CHECK(s.times(t).abs() == s.abs() * t.abs());

  Scale p = Scale::from_power(3);
  Scale q = Scale::from_power(-1);
  CHECK(p.abs() == Rational(1, 8));
  CHECK(q.abs() == 2);
  CHECK(p.times(q).abs() == p.abs() * q.abs());
  CHECK(p.times(p.inverse()).is_one());
}

TEST_CASE("scales from different groups do not combine") {
  Scale r = Scale::from_rational(Rational(1, 2));
  Scale p = Scale::from_power(1);
  CHECK_THROWS_AS(r.times(p), ConfigError);
  CHECK_THROWS_AS(p.times(Scale::from_power(1, Rational(1, 3))), ConfigError);
}

TEST_CASE("schedules decrease strictly and report magnitudes") {
  Schedule s = Schedule::dyadic(1, 12);
  CHECK(s.size() == 12);
  CHECK(s.finest().abs() == dyadic(12));
  CHECK(s.ends_below(Rational(1, 1000)));
  CHECK_FALSE(s.ends_below(Rational(1, 100000)));
  auto abs = s.abs_values();
  for (std::size_t i = 1; i < abs.size(); ++i) CHECK(abs[i] < abs[i - 1]);

  Schedule p = Schedule::powers(1, 8);
  CHECK(p.finest().abs() == dyadic(8));

  std::vector<Scale> bad{Scale::from_rational(Rational(1, 4)),
                         Scale::from_rational(Rational(1, 2))};
  CHECK_THROWS_AS(Schedule(bad, "increasing"), ConfigError);
}
