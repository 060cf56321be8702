// SPDX-License-Identifier: Apache-2.0
//
// The three reference manifolds used across the test suite:
//  - warped: chart mode, frame e1 = exp(2z) d/dx, e2 = exp(2z) d/dy, e3 = d/dz,
//    orthonormal, with the rotation phi(e1)=e2, phi(e2)=-e1, phi(e3)=0 and
//    xi = e3; a trans-Sasakian structure of type (0,-2).
//  - round: Lie mode with [e1,e2]=2e3, [e2,e3]=2e1, [e3,e1]=2e2 (the unit
//    3-sphere in an orthonormal left-invariant frame); type (1,0).
//  - flat: chart mode, coordinate frame on R^3; type (0,0).
#pragma once

#include "tsm/manifold.hpp"
#include "tsm/scalar.hpp"

namespace tsmtest {

inline tsm::FrameManifold warped_manifold() {
  tsm::Mat3 A = tsm::identity3();
  const tsm::ScalarExpr w =
      tsm::ScalarExpr::exponential(tsm::LinForm::coordinate(2, tsm::Rat(2)));
  A[0][0] = w;
  A[1][1] = w;
  return tsm::FrameManifold::chart({"x", "y", "z"}, A);
}

inline tsm::FrameManifold round_manifold() {
  tsm::StructureConstants c{};
  const tsm::Rat two(2);
  c[0][1][2] = two;
  c[1][0][2] = -two;
  c[1][2][0] = two;
  c[2][1][0] = -two;
  c[2][0][1] = two;
  c[0][2][1] = -two;
  return tsm::FrameManifold::lie(c);
}

inline tsm::FrameManifold flat_manifold() {
  return tsm::FrameManifold::chart({"x", "y", "z"}, tsm::identity3());
}

/// phi(e1)=e2, phi(e2)=-e1, phi(e3)=0 as a (1,1) tensor.
inline tsm::FrameTensor rotation_phi() {
  tsm::FrameTensor phi(1, 1);
  phi.at2(0, 1) = tsm::ScalarExpr(1);
  phi.at2(1, 0) = tsm::ScalarExpr(-1);
  return phi;
}

inline tsm::VectorField reeb_field() { return tsm::VectorField::basis(2); }

/// The dilation field x d/dx + y d/dy + z d/dz in the coordinate frame.
inline tsm::VectorField dilation_field() {
  return tsm::VectorField(tsm::ScalarExpr::variable(0), tsm::ScalarExpr::variable(1),
                          tsm::ScalarExpr::variable(2));
}

}  // namespace tsmtest
