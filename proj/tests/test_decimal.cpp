#include <doctest.h>

#include "scdebt/decimal.hpp"

using scdebt::Decimal;
using scdebt::DecimalError;

TEST_CASE("decimal parse and render") {
    CHECK(Decimal::parse("126").to_string() == "126");
    CHECK(Decimal::parse("0.5").to_string() == "0.5");
    CHECK(Decimal::parse("4.50").to_string() == "4.5");
    CHECK(Decimal::parse(".5").to_string() == "0.5");
    CHECK(Decimal::parse("-3.25").to_string() == "-3.25");
    CHECK(Decimal::parse("0").to_string() == "0");
    CHECK_THROWS_AS(Decimal::parse(""), DecimalError);
    CHECK_THROWS_AS(Decimal::parse("1e9"), DecimalError);
    CHECK_THROWS_AS(Decimal::parse("1.2.3"), DecimalError);
    CHECK_THROWS_AS(Decimal::parse("abc"), DecimalError);
    CHECK_THROWS_AS(Decimal::parse("-"), DecimalError);
}

TEST_CASE("decimal arithmetic is exact") {
    Decimal gas = Decimal::from_uint(897200);
    Decimal gwei = Decimal::parse("126");
    Decimal eth = (gas * gwei).shift_right(9);
    CHECK(eth.to_fixed(8) == "0.11304720");
    Decimal usd = eth * Decimal::parse("500");
    CHECK(usd.to_string() == "56.5236");
    CHECK(usd.to_fixed(2) == "56.52");

    CHECK((Decimal::parse("0.1") + Decimal::parse("0.2")).to_string() == "0.3");
    CHECK((Decimal::parse("1.5") - Decimal::parse("2")).to_string() == "-0.5");
}

TEST_CASE("decimal fixed-point rendering rounds half away from zero") {
    CHECK(Decimal::parse("179.55").to_fixed(1) == "179.6");
    CHECK(Decimal::parse("76.3002").to_fixed(1) == "76.3");
    CHECK(Decimal::parse("4.914").to_fixed(2) == "4.91");
    CHECK(Decimal::parse("4.915").to_fixed(2) == "4.92");
    CHECK(Decimal::parse("-4.915").to_fixed(2) == "-4.92");
    CHECK(Decimal::parse("7").to_fixed(2) == "7.00");
    CHECK(Decimal::parse("0.05").to_fixed(0) == "0");
    CHECK(Decimal::parse("0.5").to_fixed(0) == "1");
}

TEST_CASE("decimal division with rounding") {
    Decimal max = Decimal::parse("100.25001");
    CHECK(max.div_round(3, 1).to_string() == "33.4");
    CHECK((max * Decimal::from_int(2)).div_round(3, 1).to_string() == "66.8");
    CHECK(Decimal::parse("10").div_round(4, 2).to_string() == "2.5");
    CHECK(Decimal::parse("1").div_round(3, 4).to_string() == "0.3333");
    CHECK_THROWS_AS(Decimal::parse("1").div_round(0, 2), DecimalError);
}

TEST_CASE("decimal comparisons align scales") {
    CHECK(Decimal::parse("100") == Decimal::parse("100.00"));
    CHECK(Decimal::parse("100.1") > Decimal::parse("100"));
    CHECK(Decimal::parse("-1") < Decimal::parse("0.0001"));
    CHECK(Decimal::parse("33.33") < Decimal::parse("33.4"));
}
