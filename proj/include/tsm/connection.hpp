// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "tsm/manifold.hpp"

namespace tsm {

/// Levi-Civita connection in frame components: nabla_{e_i} e_j = sum_k gamma[i][j][k] e_k.
struct Connection {
  std::array<std::array<std::array<ScalarExpr, 3>, 3>, 3> gamma{};
  Mat3 ginv{};  // inverse of the frame Gram matrix, kept for downstream solvers

  VectorField nabla_basis(int i, int j) const {
    return VectorField(gamma[i][j][0], gamma[i][j][1], gamma[i][j][2]);
  }
};

/// Solves the Koszul formula on all frame triples and extracts the
/// connection coefficients through the inverse Gram matrix.
Connection levi_civita(const FrameManifold& M);

/// nabla_X Y for vector fields (tensorial in X, derivative in Y).
VectorField covariant_derivative(const FrameManifold& M, const Connection& C,
                                 const VectorField& X, const VectorField& Y);

/// nabla_X T for tensors of valence up to (1,3); result has the same valence.
FrameTensor covariant_derivative(const FrameManifold& M, const Connection& C,
                                 const VectorField& X, const FrameTensor& T);

/// (L_V g)(X,Y) = g(nabla_X V, Y) + g(X, nabla_Y V); symmetric (0,2).
FrameTensor lie_derivative_metric(const FrameManifold& M, const Connection& C,
                                  const VectorField& V);

/// (1,2) tensor defined by
/// 2 g((L_V nabla)(X,Y), Z) = (nabla_X L_Vg)(Y,Z) + (nabla_Y L_Vg)(Z,X) - (nabla_Z L_Vg)(X,Y);
/// symmetric in its two arguments.
FrameTensor lie_derivative_connection(const FrameManifold& M, const Connection& C,
                                      const VectorField& V);

/// (L_V R)(X,Y)Z = (nabla_X L_V nabla)(Y,Z) - (nabla_Y L_V nabla)(X,Z);
/// antisymmetric in X,Y.
FrameTensor lie_derivative_curvature(const FrameManifold& M, const Connection& C,
                                     const VectorField& V);

/// nabla_{e_i}e_j - nabla_{e_j}e_i - [e_i,e_j] as a (1,2) tensor; zero for
/// the Levi-Civita connection.
FrameTensor torsion_defect(const FrameManifold& M, const Connection& C);

/// e_i g(e_j,e_k) - g(nabla_{e_i}e_j, e_k) - g(e_j, nabla_{e_i}e_k) as a
/// (0,3) tensor; zero for a metric connection.
FrameTensor compatibility_defect(const FrameManifold& M, const Connection& C);

}  // namespace tsm
