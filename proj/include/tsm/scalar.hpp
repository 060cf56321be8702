// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tsm/rational.hpp"

namespace tsm {

/// Rational affine form  a0 + a1*x1 + a2*x2 + a3*x3  over the chart coordinates.
/// Used as the argument of exp/sin/cos atoms.
class LinForm {
 public:
  LinForm() = default;
  explicit LinForm(std::array<Rat, 4> coeffs) : a_(std::move(coeffs)) {}

  static LinForm constant(const Rat& c);
  static LinForm coordinate(int coord, const Rat& scale = Rat(1));  // coord in 0..2

  const Rat& constant_part() const { return a_[0]; }
  const Rat& coeff(int coord) const { return a_[coord + 1]; }  // coord in 0..2
  const std::array<Rat, 4>& raw() const { return a_; }

  bool is_zero() const;
  bool is_constant() const;  // no coordinate dependence
  int compare(const LinForm& o) const;

  LinForm operator+(const LinForm& o) const;
  LinForm operator-() const;
  LinForm scaled(const Rat& s) const;

  double eval(const std::array<double, 3>& p) const;
  std::string str(const std::array<std::string, 3>& names) const;

 private:
  std::array<Rat, 4> a_{Rat(0), Rat(0), Rat(0), Rat(0)};
};

enum class TrigFn { Sin, Cos };

/// One sin(L)^k or cos(L)^k factor of a monomial. Normal form keeps the leading
/// nonzero coefficient of L positive (sin absorbs the sign into the monomial
/// coefficient) and sin powers at most 1.
struct TrigFactor {
  TrigFn fn;
  LinForm arg;
  int power = 1;

  int compare(const TrigFactor& o) const;
};

/// c * x^k1 y^k2 z^k3 * exp(E) * prod trig(L_j).  exp_arg == 0 means no exp factor.
struct Monomial {
  Rat coef{0};
  std::array<int, 3> pow{0, 0, 0};
  LinForm exp_arg;
  std::vector<TrigFactor> trig;

  /// Orders monomials by their factor structure (coefficient excluded).
  int compare_key(const Monomial& o) const;
};

/// Verdict of the zero test. `via_numeric` is set when symbolic canonicalization
/// was inconclusive and the answer comes from seeded numeric sampling.
struct ZeroCheck {
  bool zero = false;
  bool via_numeric = false;
};

/// Exact closed-form scalar field on a 3-coordinate chart.
///
/// Values are immutable and always held in canonical form: a sum of monomials
/// with merged like terms, at most one exp factor per monomial, trig arguments
/// reduced to a single coordinate (or a pure constant) with positive leading
/// coefficient, and sin powers at most one. Arithmetic never leaves this form,
/// so structural equality of canonical forms is meaningful; for equality up to
/// trig frequency relations use equivalent() / is_zero().
class ScalarExpr {
 public:
  ScalarExpr() = default;  // zero
  ScalarExpr(const Rat& c);
  ScalarExpr(long c) : ScalarExpr(Rat(c)) {}
  ScalarExpr(int c) : ScalarExpr(Rat(c)) {}

  static ScalarExpr variable(int coord);  // coord in 0..2
  static ScalarExpr exponential(const LinForm& arg);
  static ScalarExpr sine(const LinForm& arg);
  static ScalarExpr cosine(const LinForm& arg);
  static ScalarExpr from_monomials(std::vector<Monomial> terms);
  /// Adopts `terms` without normalizing; callers must pass canonical data.
  static ScalarExpr from_raw_canonical(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }

  ScalarExpr operator+(const ScalarExpr& o) const;
  ScalarExpr operator-(const ScalarExpr& o) const;
  ScalarExpr operator-() const;
  ScalarExpr operator*(const ScalarExpr& o) const;
  ScalarExpr& operator+=(const ScalarExpr& o);
  ScalarExpr& operator-=(const ScalarExpr& o);

  /// Integer power. Negative exponents require structural invertibility.
  ScalarExpr pow_int(int k) const;

  /// True for a single monomial c*exp(E) with c != 0, no coordinate powers and
  /// no trig factors: the only shapes the engine is allowed to invert.
  bool structurally_invertible() const;
  ScalarExpr inverse() const;                        // throws NotInvertibleError
  ScalarExpr operator/(const ScalarExpr& o) const;   // o.inverse() based

  /// Exact partial derivative with respect to coordinate `coord` (0..2).
  ScalarExpr derivative(int coord) const;

  double eval(const std::array<double, 3>& p) const;
  double eval_rat(const RatPoint& p) const;

  bool is_structural_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// The value as a rational if the expression is a plain rational constant.
  std::optional<Rat> as_rational() const;

  /// Zero test: aggressive symbolic canonicalization (angle-addition and
  /// Chebyshev frequency rebasing with a work budget, Pythagorean reduction),
  /// then seeded numeric sampling at 16 rational points if inconclusive.
  ZeroCheck is_zero() const;

  /// Structural equality of canonical forms.
  bool operator==(const ScalarExpr& o) const;

  std::string str(const std::array<std::string, 3>& names = {"x", "y", "z"}) const;

 private:
  std::vector<Monomial> terms_;  // sorted by compare_key, nonzero coefficients
};

ScalarExpr operator*(const Rat& c, const ScalarExpr& e);

/// Equality up to simplification: canonical forms identical or difference
/// passes the zero test.
bool equivalent(const ScalarExpr& a, const ScalarExpr& b);

/// Parses the scalar grammar: `+ - * / ^`, integer and a/b literals, the chart
/// coordinates (default x y z), and exp( ) sin( ) cos( ) with arguments linear
/// in the coordinates. Whitespace insignificant. Throws ParseError.
ScalarExpr parse_scalar(const std::string& text,
                        const std::array<std::string, 3>& names = {"x", "y", "z"});

}  // namespace tsm
