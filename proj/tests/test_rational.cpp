#include <doctest.h>

#include <stdexcept>

#include "rvl/rational.hpp"

using rvl::Rat;
using rvl::operator""_r;

TEST_CASE("construction always canonicalizes") {
  // Regression: the (num, den) ctor must divide as rationals, not integers.
  CHECK(Rat(2, 6) == Rat(1, 3));
  CHECK(Rat(2, 6).num() == 1);
  CHECK(Rat(2, 6).den() == 3);
  CHECK(Rat(-2, -6) == Rat(1, 3));
  CHECK(Rat(2, -6) == Rat(-1, 3));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(0).den() == 1);
  CHECK(Rat(7) == Rat(14, 2));
  CHECK(Rat(mpz_class(21), mpz_class(-14)) == Rat(-3, 2));
}

TEST_CASE("zero denominators and division by zero throw") {
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rat(mpz_class(3), mpz_class(0)), std::domain_error);
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0), std::domain_error);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::domain_error);
}

TEST_CASE("parse accepts p and p/q and rejects junk") {
  CHECK(Rat::parse("5") == Rat(5));
  CHECK(Rat::parse("-7/3") == Rat(-7, 3));
  CHECK(Rat::parse("14398/23000") == Rat(14398, 23000));
  CHECK(Rat::parse("-0") == Rat(0));
  CHECK("32093343/52579253"_r == Rat(32093343LL, 52579253LL));
  for (const char* bad : {"", "1 /2", "1/ 2", "a/b", "1.5", "--3", "1/2/3", "/2", "3/"})
    CHECK_THROWS_AS(Rat::parse(bad), std::domain_error);
}

TEST_CASE("str round-trips through parse") {
  for (const Rat& v : {Rat(0), Rat(-5), Rat(2, 3), Rat(-41, 64), "6407/9899"_r}) {
    CHECK(Rat::parse(v.str()) == v);
  }
  CHECK(Rat(7).str() == "7");
  CHECK(Rat(-1, 2).str() == "-1/2");
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 2) == Rat(-1, 6));
  CHECK(Rat(3, 4) * Rat(2, 9) == Rat(1, 6));
  CHECK(Rat(3, 4) / Rat(9, 2) == Rat(1, 6));
  CHECK(-Rat(5, 7) == Rat(-5, 7));
  CHECK(Rat(5, 7).abs() == Rat(-5, 7).abs());
  // No drift at published-value scale.
  Rat acc(0);
  for (int i = 0; i < 9899; ++i) acc += Rat(6407, 9899);
  CHECK(acc == Rat(6407));
}

TEST_CASE("ordering and signs") {
  CHECK(Rat(6407, 9899) > Rat(11, 17));
  CHECK(Rat(11, 17) > Rat(25563, 39596));
  CHECK(Rat(1, 3) <= Rat(1, 3));
  CHECK(Rat(-1, 2) < Rat(0));
  CHECK(Rat(-3).sign() == -1);
  CHECK(Rat(0).sign() == 0);
  CHECK(Rat(2, 5).sign() == 1);
  CHECK(Rat(0).isZero());
  CHECK(Rat(4, 2).isInteger());
  CHECK_FALSE(Rat(1, 2).isInteger());
}

TEST_CASE("floor rounds toward minus infinity") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(6).floor() == 6);
  CHECK(Rat(0).floor() == 0);
}

TEST_CASE("decimal renders six significant digits by default") {
  CHECK(Rat(2, 3).decimal() == "0.666667");
  CHECK(Rat(1, 2).decimal() == "0.5");
  CHECK(Rat(0).decimal() == "0");
  CHECK(Rat(-5, 8).decimal() == "-0.625");
  CHECK(Rat(1, 10000).decimal() == "0.0001");
  CHECK(Rat(23000).decimal() == "23000");
  CHECK("6407/9899"_r.decimal() == "0.647237");
  CHECK("11/17"_r.decimal() == "0.647059");
  CHECK(Rat(2, 3).decimal(2) == "0.67");
  CHECK(Rat(1, 3).decimal(3) == "0.333");
}

TEST_CASE("toDouble approximates the exact value") {
  CHECK(Rat(1, 2).toDouble() == doctest::Approx(0.5));
  CHECK("32093343/52579253"_r.toDouble() == doctest::Approx(0.61038).epsilon(1e-4));
}
