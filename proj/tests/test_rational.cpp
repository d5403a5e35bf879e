#include "doctest.h"

#include "bellkit/scalar.hpp"

using namespace bellkit;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(abs(Rational(-3, 5)) == Rational(3, 5));

  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 3).to_double() == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("rational exactness over many terms") {
  // 1/k summed k times is exactly 1; float would drift.
  for (int k : {3, 6, 7, 64}) {
    Rational sum(0);
    for (int i = 0; i < k; ++i) sum += Rational(1, k);
    CHECK(sum == Rational(1));
  }
}

TEST_CASE("rational errors") {
  CHECK_THROWS_AS(Rational(1, 0), ValidationError);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), NumericalError);
  // overflow: (2^62)/1 * 3 does not fit
  CHECK_THROWS_AS(Rational(INT64_C(1) << 62) * Rational(3), NumericalError);
}

TEST_CASE("rational parsing") {
  CHECK(*Rational::parse("1/2") == Rational(1, 2));
  CHECK(*Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(*Rational::parse("3") == Rational(3));
  CHECK(*Rational::parse("-7") == Rational(-7));
  CHECK(*Rational::parse("0.25") == Rational(1, 4));
  CHECK(*Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(*Rational::parse("2.") == Rational(2));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse("a"));
  CHECK_FALSE(Rational::parse("1/2/3"));
  CHECK_FALSE(Rational::parse("1.2.3"));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-3).str() == "-3/1");
}

TEST_CASE("scalar keeps exactness when it can") {
  Scalar a = Scalar::exact(1, 3);
  Scalar b = Scalar::exact(1, 6);
  Scalar c = a + b;
  CHECK(c.is_exact());
  CHECK(c.rat() == Rational(1, 2));

  Scalar f = Scalar(0.5);
  Scalar mixed = a + f;
  CHECK_FALSE(mixed.is_exact());
  CHECK(mixed.value() == doctest::Approx(1.0 / 3.0 + 0.5));
  CHECK_THROWS_AS(mixed.rat(), NumericalError);

  CHECK(Scalar::exact(1, 2).repr() == "1/2");
  CHECK(Scalar::exact(1, 2) == Scalar::exact(2, 4));
  CHECK(Scalar::exact(1, 3) < Scalar::exact(1, 2));
  CHECK(abs(Scalar(-0.25)).value() == 0.25);
}
