// SPDX-License-Identifier: Apache-2.0
#include "tsm/curvature.hpp"

namespace tsm {

FrameTensor riemann(const FrameManifold& M, const Connection& C) {
  FrameTensor R(1, 3, {SymmetryFlag{0, 1, PairSymmetry::Antisymmetric}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const VectorField first =
            covariant_derivative(M, C, VectorField::basis(i), C.nabla_basis(j, k));
        const VectorField second =
            covariant_derivative(M, C, VectorField::basis(j), C.nabla_basis(i, k));
        const VectorField third =
            covariant_derivative(M, C, M.basis_bracket(i, j), VectorField::basis(k));
        for (int l = 0; l < 3; ++l) {
          R.at4(i, j, k, l) = first[l] - second[l] - third[l];
        }
      }
    }
  }
  return R;
}

RicciData ricci(const FrameManifold& M, const Connection& C, const FrameTensor& R) {
  RicciData out;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      ScalarExpr acc;
      for (int a = 0; a < 3; ++a) acc += R.at4(a, j, k, a);
      out.S.at2(j, k) = acc;
    }
  }
  for (int j = 0; j < 3; ++j) {
    for (int l = 0; l < 3; ++l) {
      ScalarExpr acc;
      for (int k = 0; k < 3; ++k) acc += out.S.at2(j, k) * C.ginv[k][l];
      out.Q.at2(j, l) = acc;
    }
  }
  ScalarExpr trace;
  for (int j = 0; j < 3; ++j) trace += out.Q.at2(j, j);
  out.r = trace;
  return out;
}

FrameTensor star_ricci(const FrameManifold& M, const FrameTensor& R, const FrameTensor& phi) {
  (void)M;  // the dual-basis trace needs no metric contraction
  FrameTensor Ss(0, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ScalarExpr acc;
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 3; ++m) {
          for (int l = 0; l < 3; ++l) {
            acc += phi.at2(j, m) * R.at4(i, m, k, l) * phi.at2(l, k);
          }
        }
      }
      Ss.at2(i, j) = Rat(1, 2) * acc;
    }
  }
  return Ss;
}

CurvatureBundle curvature_bundle(const FrameManifold& M, const Connection& C) {
  CurvatureBundle B;
  B.R = riemann(M, C);
  RicciData rd = ricci(M, C, B.R);
  B.S = std::move(rd.S);
  B.Q = std::move(rd.Q);
  B.r = std::move(rd.r);
  return B;
}

}  // namespace tsm
