#include <stdexcept>

#include "doctest.h"
#include "nds/rational.hpp"

using nds::Rational;

TEST_CASE("rational arithmetic reduces") {
    Rational a(6, 8);
    CHECK(a.num() == 3);
    CHECK(a.den() == 4);
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(nds::floor(Rational(-1, 2)) == Rational(-1));
    CHECK(nds::floor(Rational(7, 2)) == Rational(3));
}

TEST_CASE("rational overflow is reported, not wrapped") {
    Rational big(std::int64_t{1} << 62);
    CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    Rational tiny(1, std::int64_t{1} << 40);
    CHECK_THROWS_AS(tiny * tiny, std::overflow_error);
}

TEST_CASE("parsing accepts fractions and finite decimals") {
    CHECK(nds::parse_rational("3/4") == Rational(3, 4));
    CHECK(nds::parse_rational("-3/6") == Rational(-1, 2));
    CHECK(nds::parse_rational("0.375") == Rational(3, 8));
    CHECK(nds::parse_rational("2") == Rational(2));
    CHECK(nds::parse_rational(".5") == Rational(1, 2));
    CHECK_THROWS(nds::parse_rational("1/0"));
    CHECK_THROWS(nds::parse_rational("abc"));
    CHECK_THROWS(nds::parse_rational(""));
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(-5).str() == "-5");
}
