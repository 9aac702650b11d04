#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lambertw/real.hpp"
#include "support.hpp"

using namespace lambertw;
using testsupport::dec;

TEST_CASE("precision floor is enforced") {
  CHECK_THROWS_AS(Real(63), PrecisionError);
  CHECK_THROWS_AS(Real(1L, 8), PrecisionError);
  CHECK(Real(64).precision() == 64);
  CHECK(Real(1L, 300).precision() == 300);
}

TEST_CASE("decimal parsing") {
  CHECK(dec("0.25") == Real(1L, 64) / 4);
  CHECK(dec("-2") == Real(-2L, 64));
  CHECK(dec("1e20").to_double() == doctest::Approx(1e20));
  CHECK_THROWS_AS(Real::from_decimal("", 128), ParseError);
  CHECK_THROWS_AS(Real::from_decimal("12x", 128), ParseError);
  CHECK_THROWS_AS(Real::from_decimal("--3", 128), ParseError);
}

TEST_CASE("decimal formatting round-trips through parse") {
  Real v = dec("6288.69", 256);
  std::string s = v.to_decimal(6);
  CHECK(s == "6288.69");
  Real tiny = dec("-3.5e-300", 256);
  CHECK(tiny.to_decimal(2) == "-3.5e-300");
  CHECK(Real(0L, 64).to_decimal(5) == "0");
}

TEST_CASE("directed rounding orders results") {
  Real a = dec("1", 128), b = dec("3", 128);
  Real d = div(a, b, Rounding::down);
  Real n = div(a, b, Rounding::nearest);
  Real u = div(a, b, Rounding::up);
  CHECK(d < u);
  CHECK(d <= n);
  CHECK(n <= u);
  CHECK(mul(d, b, Rounding::down) < a);
  CHECK(mul(u, b, Rounding::up) > a);
}

TEST_CASE("ln and exp are inverse up to rounding") {
  Real x = dec("123.456", 256);
  Real y = exp(ln(x));
  CHECK(testsupport::rel_gap(x, y) < 1e-70);
}

TEST_CASE("constants at requested precision") {
  Real e1 = const_e(128);
  Real e2 = const_e(400);
  CHECK(abs(e1 - e2).to_double() < 1e-35);
  CHECK(const_ln2(128).to_double() == doctest::Approx(0.6931471805599453));
  CHECK(const_ln10(128).to_double() == doctest::Approx(2.302585092994046));
  CHECK(pow10_i(-3, 128).to_double() == doctest::Approx(1e-3));
}

TEST_CASE("to_precision widening is exact") {
  Real x = dec("0.1", 64);
  Real wide = x.to_precision(512);
  CHECK(wide == x);
  CHECK(wide.precision() == 512);
}

TEST_CASE("next_above and next_below straddle") {
  Real x = dec("2.5", 64);
  CHECK(next_below(x) < x);
  CHECK(next_above(x) > x);
}

TEST_CASE("mixed integer arithmetic") {
  Real x(7L, 128);
  CHECK(x + 1 == Real(8L, 128));
  CHECK(1 - x == Real(-6L, 128));
  CHECK(x * 3 == Real(21L, 128));
  CHECK((x / 7) == Real(1L, 128));
  CHECK(-x == Real(-7L, 128));
  CHECK(x > 6L);
  CHECK(x < 8L);
}
