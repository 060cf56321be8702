// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsm/rational.hpp"
#include "tsm/scalar.hpp"

namespace tsm {

using Mat3 = std::array<std::array<ScalarExpr, 3>, 3>;
using StructureConstants = std::array<std::array<std::array<Rat, 3>, 3>, 3>;

Mat3 identity3();

/// Determinant of a 3x3 matrix of scalar fields.
ScalarExpr det3(const Mat3& m);
/// Exact inverse via the adjugate; throws NotInvertibleError when the
/// determinant is outside the grammar's invertible shapes.
Mat3 invert3(const Mat3& m);

/// A vector field expressed in the moving frame: X = sum_i c[i] * e_i.
struct VectorField {
  std::array<ScalarExpr, 3> c{};

  VectorField() = default;
  VectorField(ScalarExpr a, ScalarExpr b, ScalarExpr d);
  static VectorField basis(int i);

  ScalarExpr& operator[](int i) { return c[i]; }
  const ScalarExpr& operator[](int i) const { return c[i]; }

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField operator-() const;

  bool is_structural_zero() const;
};

VectorField operator*(const ScalarExpr& f, const VectorField& X);
VectorField operator*(const Rat& f, const VectorField& X);

/// Three-dimensional manifold presented through a global moving frame.
///
/// Chart mode: e_i = sum_j frame_coeffs[i][j] d/dx_j over named coordinates.
/// Lie mode: only the structure constants [e_i,e_j] = sum_k c[i][j][k] e_k are
/// known; every scalar must then be constant.
class FrameManifold {
 public:
  enum class Mode { Chart, Lie };

  static FrameManifold chart(const std::array<std::string, 3>& coords, Mat3 frame_coeffs,
                             Mat3 metric = identity3(),
                             RatPoint base_point = {Rat(0), Rat(0), Rat(0)});
  static FrameManifold lie(const StructureConstants& c, Mat3 metric = identity3(),
                           RatPoint base_point = {Rat(0), Rat(0), Rat(0)});

  Mode mode() const { return mode_; }
  const std::array<std::string, 3>& coords() const { return coords_; }
  const Mat3& metric() const { return metric_; }
  const RatPoint& base_point() const { return base_point_; }

  /// Chart-mode frame coefficients; throws ContractError in Lie mode.
  const Mat3& frame_coeffs() const;
  /// Rows of the inverse transpose problem: coordinate components of the frame
  /// inverse, available when det(frame) is invertible in the grammar.
  const Mat3& inverse_frame() const;

  /// True when frame brackets can be expressed back in the frame (always in
  /// Lie mode; in chart mode requires the grammar-invertible determinant).
  bool brackets_available() const { return brackets_available_; }
  const VectorField& basis_bracket(int i, int j) const;

  ScalarExpr metric_pair(const VectorField& X, const VectorField& Y) const;
  /// Directional derivative X(f). Lie mode: 0 for constants, ContractError otherwise.
  ScalarExpr apply_field(const VectorField& X, const ScalarExpr& f) const;
  VectorField lie_bracket(const VectorField& X, const VectorField& Y) const;

 private:
  FrameManifold() = default;

  Mode mode_ = Mode::Chart;
  std::array<std::string, 3> coords_{"x", "y", "z"};
  Mat3 frame_{};
  std::optional<Mat3> inverse_frame_;
  Mat3 metric_{};
  RatPoint base_point_{Rat(0), Rat(0), Rat(0)};
  bool brackets_available_ = true;
  std::array<std::array<VectorField, 3>, 3> basis_bracket_{};
};

enum class PairSymmetry { Symmetric, Antisymmetric };

/// Declares that swapping two covariant slots leaves the tensor unchanged
/// (Symmetric) or flips its sign (Antisymmetric).
struct SymmetryFlag {
  int slot_a = 0;
  int slot_b = 1;
  PairSymmetry kind = PairSymmetry::Symmetric;
};

/// Dense frame-component tensor of valence (r,s) with r in {0,1}, s in 0..3.
/// Components are indexed by the covariant slots first; valence (1,s) tensors
/// take the output frame index last.
class FrameTensor {
 public:
  FrameTensor(int contra_rank, int cov_rank, std::vector<SymmetryFlag> flags = {});

  int contra_rank() const { return contra_; }
  int cov_rank() const { return cov_; }
  const std::vector<SymmetryFlag>& symmetries() const { return flags_; }

  ScalarExpr& at(const std::vector<int>& idx);
  const ScalarExpr& at(const std::vector<int>& idx) const;

  // Convenience accessors for the common valences.
  ScalarExpr& at1(int a) { return at({a}); }
  ScalarExpr& at2(int a, int b) { return at({a, b}); }
  ScalarExpr& at3(int a, int b, int c) { return at({a, b, c}); }
  ScalarExpr& at4(int a, int b, int c, int d) { return at({a, b, c, d}); }
  const ScalarExpr& at1(int a) const { return at({a}); }
  const ScalarExpr& at2(int a, int b) const { return at({a, b}); }
  const ScalarExpr& at3(int a, int b, int c) const { return at({a, b, c}); }
  const ScalarExpr& at4(int a, int b, int c, int d) const { return at({a, b, c, d}); }

  /// Verifies the declared slot symmetries; fills `why` with the first
  /// offending component on failure.
  bool symmetries_hold(std::string* why = nullptr) const;

 private:
  size_t flat(const std::vector<int>& idx) const;

  int contra_ = 0;
  int cov_ = 0;
  std::vector<SymmetryFlag> flags_;
  std::vector<ScalarExpr> data_;
};

/// Multilinear contraction of the covariant slots against `args`.
/// Returns a scalar for valence (0,s) and a vector field for (1,s).
std::variant<ScalarExpr, VectorField> tensor_eval(const FrameTensor& T,
                                                  const std::vector<VectorField>& args);

}  // namespace tsm
