#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "wcs/expr.hpp"

using wcs::Expr;

TEST_CASE("expression evaluation") {
  CHECK(Expr::parse("cos(t)").eval(0.3) == doctest::Approx(std::cos(0.3)).epsilon(1e-15));
  CHECK(Expr::parse("1 + t").eval(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(Expr::parse("2*t^2 - 3/t").eval(2.0) == doctest::Approx(6.5).epsilon(1e-15));
  CHECK(Expr::parse("pow(t, 3)").eval(1.7) == doctest::Approx(1.7 * 1.7 * 1.7).epsilon(1e-15));
  CHECK(Expr::parse("sinh(t)").eval(0.9) == doctest::Approx(std::sinh(0.9)).epsilon(1e-15));
  CHECK(Expr::parse("cosh(t)*cosh(t) - sinh(t)*sinh(t)").eval(1.3) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Expr::parse("exp(log(t))").eval(2.5) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(Expr::parse("pi").eval(0.0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(Expr::parse("sin(pi/2)").eval(0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("precedence and associativity") {
  CHECK(Expr::parse("2 + 3 * 4^2").eval(0.0) == doctest::Approx(50.0));
  CHECK(Expr::parse("2^3^2").eval(0.0) == doctest::Approx(512.0));  // right-assoc
  CHECK(Expr::parse("-t^2").eval(3.0) == doctest::Approx(-9.0));
  CHECK(Expr::parse("2^-1").eval(0.0) == doctest::Approx(0.5));
  CHECK(Expr::parse("(1 + t) * (1 - t)").eval(0.5) == doctest::Approx(0.75));
  CHECK(Expr::parse("6 - 2 - 1").eval(0.0) == doctest::Approx(3.0));  // left-assoc
  CHECK(Expr::parse("8 / 4 / 2").eval(0.0) == doctest::Approx(1.0));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expr::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("cos("), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("foo(t)"), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("1 +"), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("1)2"), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("pow(t)"), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("cos(t, t)"), std::invalid_argument);
  CHECK_THROWS_AS(Expr::parse("t t"), std::invalid_argument);
}

TEST_CASE("state") {
  Expr e;
  CHECK(e.empty());
  Expr f = Expr::parse("t + 1");
  CHECK(!f.empty());
  CHECK(f.source() == "t + 1");
}
