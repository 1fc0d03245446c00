#include <string>

#include "doctest.h"
#include "rpm/apnum.hpp"
#include "rpm/errors.hpp"

using namespace rpm;

TEST_CASE("precision context keeps guard bits above the decimal requirement") {
  const auto ctx = PrecisionContext::with_digits(50);
  CHECK(ctx.digits() == 50);
  // ceil(50 log2 10) = 167
  CHECK(ctx.bits() >= 167 + PrecisionContext::kGuardBits);
  CHECK_THROWS_AS(PrecisionContext::with_digits(19), ConfigError);
}

TEST_CASE("parse_rational is exact for decimals and fractions") {
  CHECK(parse_rational("0.14") == Rational(7, 50));
  CHECK(parse_rational("7/50") == Rational(7, 50));
  CHECK(parse_rational("-2e-3") == Rational(-1, 500));
  CHECK(parse_rational("1.5E2") == Rational(150));
  CHECK_THROWS_AS(parse_rational("1+2i"), ModeError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
  CHECK_THROWS_AS(parse_rational("3/0"), ParseError);
}

TEST_CASE("parse_decimal reads complex forms") {
  const auto ctx = PrecisionContext::with_digits(30);
  const Complex a = parse_decimal("0.97+1e-6i", ctx);
  CHECK(render_decimal(a.re(), 10) == "0.97");
  CHECK(render_decimal(a.im(), 10) == "1e-6");
  const Complex b = parse_decimal("-2.5e-3i", ctx);
  CHECK(b.re().is_zero());
  CHECK(render_decimal(b.im(), 5) == "-0.0025");
  const Complex c = parse_decimal("-i", ctx);
  CHECK(render_decimal(c.im(), 5) == "-1");
  try {
    parse_decimal("1.0x", ctx);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("render_decimal rounds or truncates at the requested digits") {
  const auto ctx = PrecisionContext::with_digits(40);
  const Real x = parse_real("0.96912932002717525629", ctx);
  CHECK(render_decimal(x, 5) == "0.96913");
  CHECK(render_decimal(x, 5, RenderMode::truncate) == "0.96912");
  const Real small = parse_real("3.3798095481216435223e-10", ctx);
  CHECK(render_decimal(small, 4) == "3.38e-10");
  CHECK(render_decimal(small, 4, RenderMode::truncate) == "3.379e-10");
  CHECK(render_decimal(Real(0L, ctx), 5) == "0");
  CHECK(render_decimal(Real(1234567L, ctx), 3) == "1230000");
  CHECK(render_decimal(Real(9.99996, ctx), 5) == "10");
}

TEST_CASE("decimal_digits splits sign, digits and exponent") {
  const auto ctx = PrecisionContext::with_digits(30);
  const auto dd = decimal_digits(parse_real("-0.0123456", ctx), 4, RenderMode::nearest);
  CHECK(dd.negative);
  CHECK_FALSE(dd.zero);
  CHECK(dd.digits == "1235");
  CHECK(dd.exponent == -1);
  CHECK(decimal_digits(Real(0L, ctx), 4, RenderMode::nearest).zero);
}

TEST_CASE("arithmetic respects the larger operand precision") {
  const auto lo = PrecisionContext::with_digits(20);
  const auto hi = PrecisionContext::with_digits(100);
  const Real third = Real(1L, hi) / Real(3L, lo);
  CHECK(third.precision() == hi.bits());
  // 1/3 to 100 digits: 99 threes after the point survive rendering.
  CHECK(render_decimal(third, 99) == "0." + std::string(99, '3'));
}

TEST_CASE("complex arithmetic and principal square root") {
  const auto ctx = PrecisionContext::with_digits(40);
  const Complex i(Real(0L, ctx), Real(1L, ctx));
  const Complex m1 = i * i;
  CHECK(m1.re() == Real(-1L, ctx));
  CHECK(m1.im().is_zero());
  const Complex r = sqrt(Complex(Real(-4L, ctx), Real(0L, ctx)));
  CHECK(render_decimal(r.re(), 10) == "0");
  CHECK(render_decimal(r.im(), 10) == "2");
  const Complex q = Complex(Real(1L, ctx), Real(2L, ctx)) / Complex(Real(3L, ctx), Real(-4L, ctx));
  // (1+2i)/(3-4i) = (-5+10i)/25
  CHECK(render_decimal(q.re(), 20) == "-0.2");
  CHECK(render_decimal(q.im(), 20) == "0.4");
  CHECK(abs(Complex(Real(3L, ctx), Real(4L, ctx))) == Real(5L, ctx));
}

TEST_CASE("log10_abs and pow10") {
  const auto ctx = PrecisionContext::with_digits(30);
  CHECK(pow10(-7, ctx).log10_abs() == doctest::Approx(-7.0));
  CHECK(pow10(300, ctx).log10_abs() == doctest::Approx(300.0));
  CHECK(render_rational(parse_rational("-0.14")) == "-7/50");
  CHECK(render_rational(Rational(3)) == "3");
}
