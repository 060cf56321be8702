// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "tsm/connection.hpp"
#include "tsm/manifold.hpp"

namespace tsm {

/// Riemann tensor, Ricci data, and optionally the *-Ricci tensor of a metric.
struct CurvatureBundle {
  FrameTensor R{1, 3};  // at4(i,j,k,l): R(e_i,e_j)e_k = sum_l R[ijkl] e_l
  FrameTensor S{0, 2};  // Ricci tensor
  FrameTensor Q{1, 1};  // Ricci operator, g(QX,Y) = S(X,Y)
  ScalarExpr r;         // scalar curvature
  std::optional<FrameTensor> S_star;  // set when an almost-contact phi is attached
};

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z on frame triples.
FrameTensor riemann(const FrameManifold& M, const Connection& C);

struct RicciData {
  FrameTensor S{0, 2, {SymmetryFlag{0, 1, PairSymmetry::Symmetric}}};
  FrameTensor Q{1, 1};
  ScalarExpr r;
};

/// Ricci tensor by the dual-basis trace S(X,Y) = sum_a dual^a(R(e_a,X)Y),
/// the Ricci operator by raising with the inverse Gram matrix, and the
/// scalar curvature as the final trace.
RicciData ricci(const FrameManifold& M, const Connection& C, const FrameTensor& R);

/// S*(X,Y) = (1/2) trace(Z -> phi(R(X, phi Y) Z)).
FrameTensor star_ricci(const FrameManifold& M, const FrameTensor& R, const FrameTensor& phi);

/// Convenience: riemann + ricci in one call (S_star left unset).
CurvatureBundle curvature_bundle(const FrameManifold& M, const Connection& C);

}  // namespace tsm
