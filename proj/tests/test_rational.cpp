#include "continua/rational.hpp"

#include "doctest.h"

using continua::Rational;

TEST_CASE("rational literals parse in all accepted forms") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse(" -4/8 ") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("123456789012345678901234567890/3").str() ==
        "41152263004115226300411522630");
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x/2"));
  CHECK_THROWS(Rational::parse(""));
}

TEST_CASE("lowest terms with positive denominator") {
  Rational r(6, -4);
  CHECK(r.numerator_str() == "-3");
  CHECK(r.denominator_str() == "2");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(3, 4)).str() == "1/2");
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("square root enclosures") {
  auto e = continua::sqrt_enclosure(Rational(9, 4));
  CHECK(e.exact());
  CHECK(e.lo == Rational(3, 2));
  auto s = continua::sqrt_enclosure(Rational(2));
  CHECK(s.lo * s.lo < Rational(2));
  CHECK(s.hi * s.hi > Rational(2));
  CHECK(s.hi - s.lo <= Rational(1, 1'000'000));
}
