// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "tsm/errors.hpp"
#include "tsm/scalar.hpp"

using tsm::LinForm;
using tsm::Rat;
using tsm::ScalarExpr;

namespace {
ScalarExpr P(const std::string& s) { return tsm::parse_scalar(s); }
}  // namespace

TEST_CASE("parsing literals and precedence") {
  CHECK(P("2/3 + 1/6") == P("5/6"));
  CHECK(P("2/3 - 1/6").as_rational().value() == Rat(1, 2));
  CHECK(P("1 + 2*3^2") == P("19"));
  CHECK(P("-x^2") == P("0 - x*x"));
  CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
  CHECK(P("x/2") == P("1/2*x"));
  CHECK(P("6/4").as_rational().value() == Rat(3, 2));
  CHECK(P("  x \n + \t y ") == P("x+y"));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(P("1.5"), tsm::ParseError);
  CHECK_THROWS_AS(P("1/x"), tsm::ParseError);
  CHECK_THROWS_AS(P("x^y"), tsm::ParseError);
  CHECK_THROWS_AS(P("exp(x*y)"), tsm::ParseError);
  CHECK_THROWS_AS(P("sin(exp(x))"), tsm::ParseError);
  CHECK_THROWS_AS(P("cos(x^2)"), tsm::ParseError);
  CHECK_THROWS_AS(P("w + 1"), tsm::ParseError);
  CHECK_THROWS_AS(P("2 x"), tsm::ParseError);
  CHECK_THROWS_AS(P("(x"), tsm::ParseError);
  CHECK_THROWS_AS(P(""), tsm::ParseError);

  try {
    P("x +\n 1.25");
    FAIL("expected ParseError");
  } catch (const tsm::ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 2);
  }
}

TEST_CASE("custom coordinate names") {
  const std::array<std::string, 3> names{"u", "v", "w"};
  const ScalarExpr f = tsm::parse_scalar("u*w^2", names);
  CHECK(f.eval({2.0, 0.0, 3.0}) == doctest::Approx(18.0));
  CHECK_THROWS_AS(tsm::parse_scalar("x", names), tsm::ParseError);
}

TEST_CASE("evaluation matches the standard library") {
  const ScalarExpr f = P("exp(2*z)");
  CHECK(f.eval({0.0, 0.0, 1.0}) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));

  const ScalarExpr g = P("sin(x)*cos(2*y) + x^3/4");
  const std::array<double, 3> p{0.37, -0.82, 0.11};
  const double expected = std::sin(p[0]) * std::cos(2 * p[1]) + p[0] * p[0] * p[0] / 4;
  CHECK(g.eval(p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exact derivatives") {
  CHECK(P("exp(2*z)").derivative(2) == P("2*exp(2*z)"));
  CHECK(P("x^3*y").derivative(0) == P("3*x^2*y"));
  CHECK(P("sin(3*x)").derivative(0) == P("3*cos(3*x)"));
  CHECK(P("cos(3*x)").derivative(0) == P("-3*sin(3*x)"));
  CHECK(P("cos(x)^2").derivative(0) == P("-2*sin(x)*cos(x)"));
  CHECK(P("exp(x+2*y)*z").derivative(1) == P("2*z*exp(x+2*y)"));
  CHECK(P("5").derivative(0).is_structural_zero());
}

TEST_CASE("derivative rules hold structurally") {
  const ScalarExpr f = P("x*exp(y+2*z)*sin(3*x)");
  const ScalarExpr g = P("cos(2*y) + x^2*z");

  SUBCASE("mixed partials commute") {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(f.derivative(i).derivative(j) == f.derivative(j).derivative(i));
      }
    }
  }

  SUBCASE("Leibniz rule") {
    for (int i = 0; i < 3; ++i) {
      const ScalarExpr lhs = (f * g).derivative(i);
      const ScalarExpr rhs = f.derivative(i) * g + f * g.derivative(i);
      CHECK(tsm::equivalent(lhs, rhs));
    }
  }

  SUBCASE("finite differences agree") {
    const ScalarExpr h = P("exp(x)*cos(2*y) + x^2*z");
    const std::array<std::array<double, 3>, 3> pts{{{0.1, -0.2, 0.3},
                                                    {-0.4, 0.25, -0.15},
                                                    {0.05, 0.45, 0.4}}};
    const double step = 1e-6;
    for (const auto& p : pts) {
      for (int i = 0; i < 3; ++i) {
        std::array<double, 3> hi = p;
        std::array<double, 3> lo = p;
        hi[i] += step;
        lo[i] -= step;
        const double fd = (h.eval(hi) - h.eval(lo)) / (2 * step);
        const double exact = h.derivative(i).eval(p);
        CHECK(fd == doctest::Approx(exact).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("trigonometric canonicalization") {
  SUBCASE("Pythagorean identity collapses structurally") {
    const ScalarExpr f = P("sin(x)^2 + cos(x)^2 - 1");
    CHECK(f.is_structural_zero());
  }

  SUBCASE("angle addition is applied at construction") {
    const ScalarExpr f = P("sin(x+y) - sin(x)*cos(y) - cos(x)*sin(y)");
    CHECK(f.is_structural_zero());
    const ScalarExpr g = P("cos(x+y) - cos(x)*cos(y) + sin(x)*sin(y)");
    CHECK(g.is_structural_zero());
  }

  SUBCASE("constant phases split off") {
    const ScalarExpr f = P("sin(x + 1/2) - sin(x)*cos(1/2) - cos(x)*sin(1/2)");
    CHECK(f.is_structural_zero());
  }

  SUBCASE("negative arguments normalize") {
    CHECK(P("sin(-x) + sin(x)").is_structural_zero());
    CHECK(P("cos(-x) - cos(x)").is_structural_zero());
  }
}

TEST_CASE("zero decision with frequency rebasing") {
  SUBCASE("double angle identities") {
    const auto a = P("sin(2*x) - 2*sin(x)*cos(x)").is_zero();
    CHECK(a.zero);
    CHECK_FALSE(a.via_numeric);
    const auto b = P("cos(2*x) - 2*cos(x)^2 + 1").is_zero();
    CHECK(b.zero);
    CHECK_FALSE(b.via_numeric);
  }

  SUBCASE("triple angle identity") {
    const auto v = P("sin(3*x) - 3*sin(x) + 4*sin(x)^3").is_zero();
    CHECK(v.zero);
    CHECK_FALSE(v.via_numeric);
  }

  SUBCASE("commensurable frequencies across terms") {
    const auto v = P("sin(6*y)*cos(4*y) - 1/2*sin(10*y) - 1/2*sin(2*y)").is_zero();
    CHECK(v.zero);
    CHECK_FALSE(v.via_numeric);
  }

  SUBCASE("nonzero expressions are recognized") {
    const auto v = P("sin(2*x) - sin(x)").is_zero();
    CHECK_FALSE(v.zero);
    CHECK_FALSE(v.via_numeric);
  }

  SUBCASE("oversized rebase multipliers fall back to sampling") {
    const auto z = P("sin(65*x)*cos(66*x) + cos(65*x)*sin(66*x) - sin(131*x)").is_zero();
    CHECK(z.zero);
    CHECK(z.via_numeric);
    const auto nz = P("sin(100*x) - sin(x)").is_zero();
    CHECK_FALSE(nz.zero);
    CHECK(nz.via_numeric);
  }

  SUBCASE("polynomial and exponential combinations are decided exactly") {
    const auto v = P("(x+y)*(x-y) - x^2 + y^2").is_zero();
    CHECK(v.zero);
    CHECK_FALSE(v.via_numeric);
    const auto w = P("exp(x)*exp(y) - exp(x+y)").is_zero();
    CHECK(w.zero);
    CHECK_FALSE(w.via_numeric);
    const auto nz = P("exp(x) - exp(y)").is_zero();
    CHECK_FALSE(nz.zero);
    CHECK_FALSE(nz.via_numeric);
  }
}

TEST_CASE("structural inverses") {
  CHECK(P("3*exp(2*z)").inverse() == P("1/3*exp(-2*z)"));
  CHECK(P("exp(z)^-2") == P("exp(-2*z)"));
  CHECK(P("exp(2*z)*exp(-2*z)") == P("1"));
  CHECK(P("x") * P("x").pow_int(0) == P("x"));
  CHECK_FALSE(P("x").structurally_invertible());
  CHECK_FALSE(P("sin(x)").structurally_invertible());
  CHECK_FALSE(P("1 + exp(x)").structurally_invertible());
  CHECK(P("-5/7").structurally_invertible());
  CHECK_THROWS_AS(P("x").inverse(), tsm::NotInvertibleError);
  CHECK_THROWS_AS(P("0").inverse(), tsm::NotInvertibleError);
  CHECK_THROWS_AS(ScalarExpr(1) / ScalarExpr(0), tsm::NotInvertibleError);
}

TEST_CASE("printer is deterministic and parseable") {
  const ScalarExpr f = P("y - x + 2*exp(2*z) - sin(3*x)*cos(y)^2");
  CHECK(f.str() == P("2*exp(2*z) - sin(3*x)*cos(y)^2 - x + y").str());
  CHECK(P(f.str()) == f);
  CHECK(ScalarExpr().str() == "0");
  CHECK(P("-x").str() == "-x");
  CHECK(P("x - 1").str() == "-1 + x");
  CHECK(P("exp(2*z)").str() == "exp(2*z)");
}

TEST_CASE("constant classification") {
  CHECK(P("sin(1/2)^2 + cos(1/2)^2").as_rational().value() == 1);
  CHECK(P("cos(1/2)").is_constant());
  CHECK_FALSE(P("cos(1/2)").as_rational().has_value());
  CHECK_FALSE(P("x").is_constant());
  CHECK(P("7 - 7").as_rational().value() == 0);
}
