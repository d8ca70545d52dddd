#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "prn/rational.hpp"

using prn::Rational;

TEST_CASE("parse_rational accepts integers, fractions, and decimals") {
  CHECK(prn::parse_rational("3") == 3);
  CHECK(prn::parse_rational("-3") == -3);
  CHECK(prn::parse_rational("+7") == 7);
  CHECK(prn::parse_rational("46/100") == Rational(23, 50));
  CHECK(prn::parse_rational("-2/6") == Rational(-1, 3));
  CHECK(prn::parse_rational("0.46") == Rational(23, 50));
  CHECK(prn::parse_rational(".46") == Rational(23, 50));
  CHECK(prn::parse_rational("-0.25") == Rational(-1, 4));
  CHECK(prn::parse_rational("1.") == 1);
  CHECK(prn::parse_rational("0.110") == Rational(11, 100));
  CHECK(prn::parse_rational("0") == 0);
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(prn::parse_rational(""), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("-"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("."), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("1/0"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("1/"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("/2"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("1e-2"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("0.4.6"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("abc"), prn::SyntaxError);
  CHECK_THROWS_AS(prn::parse_rational("1/-2"), prn::SyntaxError);
}

TEST_CASE("format_fraction always prints num/den") {
  CHECK(prn::format_fraction(Rational(11, 100)) == "11/100");
  CHECK(prn::format_fraction(Rational(3)) == "3");
  CHECK(prn::format_fraction(Rational(-1, 3)) == "-1/3");
  CHECK(prn::format_fraction(Rational(0)) == "0");
}

TEST_CASE("format_rational prefers the shortest exact decimal") {
  CHECK(prn::format_rational(Rational(1, 2)) == "0.5");
  CHECK(prn::format_rational(Rational(11, 100)) == "0.11");
  CHECK(prn::format_rational(Rational(1, 8)) == "0.125");
  CHECK(prn::format_rational(Rational(1, 5)) == "0.2");
  CHECK(prn::format_rational(Rational(3)) == "3");
  CHECK(prn::format_rational(Rational(0)) == "0");
  CHECK(prn::format_rational(Rational(-1, 4)) == "-0.25");
  CHECK(prn::format_rational(Rational(1, 3)) == "1/3");
  CHECK(prn::format_rational(Rational(5, 6)) == "5/6");
  CHECK(prn::format_rational(Rational(1603, 10000)) == "0.1603");
}

TEST_CASE("format_decimal_approx rounds to the requested places") {
  CHECK(prn::format_decimal_approx(Rational(1, 3)) == "0.333333333333");
  CHECK(prn::format_decimal_approx(Rational(2, 3)) == "0.666666666667");
  CHECK(prn::format_decimal_approx(Rational(1, 3), 4) == "0.3333");
  CHECK(prn::format_decimal_approx(Rational(-1, 3), 4) == "-0.3333");
  CHECK(prn::format_decimal_approx(Rational(1, 2), 4) == "0.5");
}

TEST_CASE("format_annotated glosses fractions with a decimal") {
  CHECK(prn::format_annotated(Rational(11, 100)) == "11/100 (= 0.11)");
  CHECK(prn::format_annotated(Rational(1, 3)) == "1/3 (~ 0.333333333333)");
  CHECK(prn::format_annotated(Rational(1)) == "1 (= 1)");
}

TEST_CASE("formatting round-trips through parse_rational") {
  oracle::Rng rng(20240801);
  for (int i = 0; i < 500; ++i) {
    long long num = static_cast<long long>(rng.pick(0, 2000)) - 1000;
    long long den = static_cast<long long>(rng.pick(1, 1000));
    Rational r(num, den);
    CHECK(prn::parse_rational(prn::format_rational(r)) == r);
    CHECK(prn::parse_rational(prn::format_fraction(r)) == r);
  }
}

TEST_CASE("Probability is confined to the unit interval") {
  CHECK(prn::Probability::parse("0.46").value() == Rational(23, 50));
  CHECK(prn::Probability(Rational(0)).is_zero());
  CHECK_FALSE(prn::Probability(Rational(1)).is_zero());
  CHECK(prn::Probability(Rational(1, 3)).str() == "1/3");
  CHECK_THROWS_AS(prn::Probability(Rational(-1, 10)), prn::ValidationError);
  CHECK_THROWS_AS(prn::Probability(Rational(11, 10)), prn::ValidationError);
}

TEST_CASE("SyntaxError carries position information") {
  prn::SyntaxError plain("bad token");
  CHECK(plain.line() == 0);
  CHECK(std::string(plain.what()) == "bad token");

  prn::SyntaxError located("bad token", 3, 7);
  CHECK(located.line() == 3);
  CHECK(located.column() == 7);
  CHECK(std::string(located.what()) == "line 3, column 7: bad token");
}
