#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "g2coulomb/rational.hpp"

using g2c::Rational;

TEST_CASE("canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).denominator() == 2);  // denominator stays positive
  CHECK(Rational(0, 7).denominator() == 1);
  CHECK(Rational(0, 7).is_zero());
}

TEST_CASE("arithmetic") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-5) < Rational(-4, 7));
  CHECK(Rational(3, 7).abs() == Rational(3, 7));
  CHECK(Rational(-3, 7).abs() == Rational(3, 7));
}

TEST_CASE("parse and serialize round-trip") {
  CHECK(Rational::parse("3/7").str() == "3/7");
  CHECK(Rational::parse("-6/14") == Rational(-3, 7));
  CHECK(Rational::parse("42").str() == "42");
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK_FALSE(Rational::try_parse("abc").has_value());
  CHECK_FALSE(Rational::try_parse("1/0").has_value());
  CHECK_FALSE(Rational::try_parse("").has_value());

  // property: str() -> parse() is the identity
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 200; ++i) {
    Rational q(num(rng), den(rng));
    CHECK(Rational::parse(q.str()) == q);
  }
}

TEST_CASE("exact dyadic from double") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
  CHECK(Rational::from_double(3.0).is_integer());
  CHECK_THROWS_AS(Rational::from_double(std::nan("")), std::invalid_argument);
}

TEST_CASE("big values stay exact") {
  Rational big(1);
  for (int i = 0; i < 40; ++i) big *= Rational(10);
  Rational third = big / Rational(3);
  CHECK(third * Rational(3) == big);
  CHECK(big.to_double() == Catch::Approx(1e40));
}
