// SPDX-License-Identifier: Apache-2.0
#include "tsm/connection.hpp"

#include <vector>

#include "tsm/errors.hpp"

namespace tsm {

Connection levi_civita(const FrameManifold& M) {
  Connection C;
  try {
    C.ginv = invert3(M.metric());
  } catch (const NotInvertibleError& e) {
    throw ManifoldError(std::string("frame Gram matrix cannot be inverted: ") + e.what());
  }

  const Mat3& g = M.metric();
  auto g_of = [&](const VectorField& W, int k) {
    ScalarExpr acc;
    for (int l = 0; l < 3; ++l) acc += W[l] * g[l][k];
    return acc;
  };

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::array<ScalarExpr, 3> koszul;
      for (int k = 0; k < 3; ++k) {
        ScalarExpr rhs = M.apply_field(VectorField::basis(i), g[j][k]) +
                         M.apply_field(VectorField::basis(j), g[k][i]) -
                         M.apply_field(VectorField::basis(k), g[i][j]);
        rhs += g_of(M.basis_bracket(i, j), k);
        rhs -= g_of(M.basis_bracket(j, k), i);
        rhs += g_of(M.basis_bracket(k, i), j);
        koszul[k] = rhs;
      }
      for (int l = 0; l < 3; ++l) {
        ScalarExpr acc;
        for (int k = 0; k < 3; ++k) acc += koszul[k] * C.ginv[k][l];
        C.gamma[i][j][l] = Rat(1, 2) * acc;
      }
    }
  }
  return C;
}

VectorField covariant_derivative(const FrameManifold& M, const Connection& C,
                                 const VectorField& X, const VectorField& Y) {
  VectorField out;
  for (int k = 0; k < 3; ++k) {
    ScalarExpr acc = M.apply_field(X, Y[k]);
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < 3; ++m) acc += X[i] * Y[m] * C.gamma[i][m][k];
    }
    out[k] = acc;
  }
  return out;
}

namespace {

// nabla_{e_i} T, componentwise over every index tuple of T.
FrameTensor directional_derivative(const FrameManifold& M, const Connection& C, int i,
                                   const FrameTensor& T) {
  FrameTensor D(T.contra_rank(), T.cov_rank(), T.symmetries());
  const int s = T.cov_rank();
  const int r = T.contra_rank();
  const int total_slots = s + r;
  size_t tuples = 1;
  for (int k = 0; k < total_slots; ++k) tuples *= 3;

  std::vector<int> idx(static_cast<size_t>(total_slots), 0);
  for (size_t t = 0; t < tuples; ++t) {
    size_t rest = t;
    for (int k = total_slots - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = static_cast<int>(rest % 3);
      rest /= 3;
    }
    ScalarExpr acc = M.apply_field(VectorField::basis(i), T.at(idx));
    if (r == 1) {
      const int l = idx.back();
      std::vector<int> alt = idx;
      for (int m = 0; m < 3; ++m) {
        alt.back() = m;
        acc += C.gamma[i][m][l] * T.at(alt);
      }
    }
    for (int slot = 0; slot < s; ++slot) {
      std::vector<int> alt = idx;
      for (int m = 0; m < 3; ++m) {
        alt[static_cast<size_t>(slot)] = m;
        acc -= C.gamma[i][idx[static_cast<size_t>(slot)]][m] * T.at(alt);
      }
    }
    D.at(idx) = acc;
  }
  return D;
}

}  // namespace

FrameTensor covariant_derivative(const FrameManifold& M, const Connection& C,
                                 const VectorField& X, const FrameTensor& T) {
  FrameTensor out(T.contra_rank(), T.cov_rank(), T.symmetries());
  const int total_slots = T.cov_rank() + T.contra_rank();
  size_t tuples = 1;
  for (int k = 0; k < total_slots; ++k) tuples *= 3;

  std::vector<int> idx(static_cast<size_t>(total_slots), 0);
  for (int i = 0; i < 3; ++i) {
    const FrameTensor Di = directional_derivative(M, C, i, T);
    for (size_t t = 0; t < tuples; ++t) {
      size_t rest = t;
      for (int k = total_slots - 1; k >= 0; --k) {
        idx[static_cast<size_t>(k)] = static_cast<int>(rest % 3);
        rest /= 3;
      }
      out.at(idx) += X[i] * Di.at(idx);
    }
  }
  return out;
}

FrameTensor lie_derivative_metric(const FrameManifold& M, const Connection& C,
                                  const VectorField& V) {
  std::array<VectorField, 3> DV;
  for (int i = 0; i < 3; ++i) DV[i] = covariant_derivative(M, C, VectorField::basis(i), V);

  FrameTensor H(0, 2, {SymmetryFlag{0, 1, PairSymmetry::Symmetric}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      H.at2(i, j) = M.metric_pair(DV[i], VectorField::basis(j)) +
                    M.metric_pair(VectorField::basis(i), DV[j]);
    }
  }
  return H;
}

FrameTensor lie_derivative_connection(const FrameManifold& M, const Connection& C,
                                      const VectorField& V) {
  const FrameTensor H = lie_derivative_metric(M, C, V);
  std::array<FrameTensor, 3> DH{FrameTensor(0, 2), FrameTensor(0, 2), FrameTensor(0, 2)};
  for (int i = 0; i < 3; ++i) DH[i] = directional_derivative(M, C, i, H);

  FrameTensor P(1, 2, {SymmetryFlag{0, 1, PairSymmetry::Symmetric}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::array<ScalarExpr, 3> rhs;
      for (int k = 0; k < 3; ++k) {
        rhs[k] = DH[i].at2(j, k) + DH[j].at2(k, i) - DH[k].at2(i, j);
      }
      for (int l = 0; l < 3; ++l) {
        ScalarExpr acc;
        for (int k = 0; k < 3; ++k) acc += rhs[k] * C.ginv[k][l];
        P.at3(i, j, l) = Rat(1, 2) * acc;
      }
    }
  }
  return P;
}

FrameTensor lie_derivative_curvature(const FrameManifold& M, const Connection& C,
                                     const VectorField& V) {
  const FrameTensor P = lie_derivative_connection(M, C, V);
  std::array<FrameTensor, 3> DP{FrameTensor(1, 2), FrameTensor(1, 2), FrameTensor(1, 2)};
  for (int i = 0; i < 3; ++i) DP[i] = directional_derivative(M, C, i, P);

  FrameTensor W(1, 3, {SymmetryFlag{0, 1, PairSymmetry::Antisymmetric}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          W.at4(i, j, k, l) = DP[i].at3(j, k, l) - DP[j].at3(i, k, l);
        }
      }
    }
  }
  return W;
}

FrameTensor torsion_defect(const FrameManifold& M, const Connection& C) {
  FrameTensor T(1, 2, {SymmetryFlag{0, 1, PairSymmetry::Antisymmetric}});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const VectorField& bb = M.basis_bracket(i, j);
      for (int k = 0; k < 3; ++k) {
        T.at3(i, j, k) = C.gamma[i][j][k] - C.gamma[j][i][k] - bb[k];
      }
    }
  }
  return T;
}

FrameTensor compatibility_defect(const FrameManifold& M, const Connection& C) {
  const Mat3& g = M.metric();
  FrameTensor D(0, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        ScalarExpr acc = M.apply_field(VectorField::basis(i), g[j][k]);
        for (int l = 0; l < 3; ++l) {
          acc -= C.gamma[i][j][l] * g[l][k] + C.gamma[i][k][l] * g[j][l];
        }
        D.at3(i, j, k) = acc;
      }
    }
  }
  return D;
}

}  // namespace tsm
