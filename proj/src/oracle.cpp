// SPDX-License-Identifier: Apache-2.0
#include "tsm/oracle.hpp"

#include <cmath>
#include <random>

#include "tsm/errors.hpp"

namespace tsm {

namespace {

using Point = std::array<double, 3>;
using NumMat = std::array<std::array<double, 3>, 3>;

NumMat eval_mat(const Mat3& m, const Point& x) {
  NumMat out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[i][j].eval(x);
  return out;
}

NumMat invert_num(const NumMat& m) {
  double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  NumMat adj{};
  adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  NumMat out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = adj[i][j] / det;
  return out;
}

/// 4th-order central difference of f along coordinate a.
template <typename F>
double stencil(F&& f, const Point& x, int a, double h) {
  Point p1 = x, p2 = x, m1 = x, m2 = x;
  p1[a] += h;
  p2[a] += 2 * h;
  m1[a] -= h;
  m2[a] -= 2 * h;
  return (-f(p2) + 8.0 * f(p1) - 8.0 * f(m1) + f(m2)) / (12.0 * h);
}

using Gamma = std::array<std::array<std::array<double, 3>, 3>, 3>;  // [m][n][q] = Gamma^q_mn

}  // namespace

OracleResult finite_difference_oracle(const FrameManifold& M, const Connection& C,
                                      const FrameTensor& R, const OracleOptions& opt) {
  if (M.mode() != FrameManifold::Mode::Chart)
    throw ContractError("finite-difference oracle requires chart mode");
  const Mat3& A = M.frame_coeffs();
  const Mat3& B = M.inverse_frame();  // d/dx_m = sum_i B[m][i] e_i

  // Symbolic coordinate metric g_mn = g(d/dx_m, d/dx_n).
  Mat3 g_coord;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) {
      ScalarExpr acc;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += B[m][i] * B[n][j] * M.metric()[i][j];
      g_coord[m][n] = acc;
    }

  // Engine objects pushed to coordinates (symbolically, evaluated per point).
  std::array<std::array<std::array<ScalarExpr, 3>, 3>, 3> gamma_engine;  // [m][n][q]
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      for (int q = 0; q < 3; ++q) {
        ScalarExpr acc;
        for (int j = 0; j < 3; ++j) acc += B[n][j].derivative(m) * A[j][q];
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) acc += B[m][i] * B[n][j] * C.gamma[i][j][l] * A[l][q];
        gamma_engine[m][n][q] = acc;
      }
  std::array<std::array<std::array<std::array<ScalarExpr, 3>, 3>, 3>, 3> riemann_engine;
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      for (int k = 0; k < 3; ++k)
        for (int q = 0; q < 3; ++q) {
          ScalarExpr acc;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int s = 0; s < 3; ++s)
                for (int l = 0; l < 3; ++l)
                  acc += B[m][i] * B[n][j] * B[k][s] * R.at4(i, j, s, l) * A[l][q];
          riemann_engine[m][n][k][q] = acc;
        }

  // Numeric side: Christoffels from stencils of the evaluated metric, the
  // Riemann tensor from stencils of those Christoffels.
  auto gamma_fd = [&](const Point& x) -> Gamma {
    NumMat ginv = invert_num(eval_mat(g_coord, x));
    double dg[3][3][3];  // dg[a][m][n] = d_a g_mn
    for (int a = 0; a < 3; ++a)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          dg[a][m][n] =
              stencil([&](const Point& y) { return g_coord[m][n].eval(y); }, x, a, opt.step);
    Gamma G{};
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int q = 0; q < 3; ++q) {
          double acc = 0;
          for (int k = 0; k < 3; ++k)
            acc += ginv[q][k] * (dg[m][k][n] + dg[n][k][m] - dg[k][m][n]);
          G[m][n][q] = 0.5 * acc;
        }
    return G;
  };

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> offset(-0.4, 0.4);
  Point base{rat_to_double(M.base_point()[0]), rat_to_double(M.base_point()[1]),
             rat_to_double(M.base_point()[2])};

  OracleResult res;
  res.points = opt.points;
  for (int pt = 0; pt < opt.points; ++pt) {
    Point x{base[0] + offset(rng), base[1] + offset(rng), base[2] + offset(rng)};

    Gamma G = gamma_fd(x);
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int q = 0; q < 3; ++q) {
          double ref = gamma_engine[m][n][q].eval(x);
          double err = std::abs(G[m][n][q] - ref) / (1.0 + std::abs(ref));
          res.max_christoffel_err = std::max(res.max_christoffel_err, err);
        }

    double dGamma[3][3][3][3];  // [a][m][n][q] = d_a Gamma^q_mn
    for (int a = 0; a < 3; ++a) {
      Point p1 = x, p2 = x, m1 = x, m2 = x;
      p1[a] += opt.step;
      p2[a] += 2 * opt.step;
      m1[a] -= opt.step;
      m2[a] -= 2 * opt.step;
      Gamma Gp1 = gamma_fd(p1), Gp2 = gamma_fd(p2), Gm1 = gamma_fd(m1), Gm2 = gamma_fd(m2);
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          for (int q = 0; q < 3; ++q)
            dGamma[a][m][n][q] = (-Gp2[m][n][q] + 8.0 * Gp1[m][n][q] - 8.0 * Gm1[m][n][q] +
                                  Gm2[m][n][q]) /
                                 (12.0 * opt.step);
    }
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int k = 0; k < 3; ++k)
          for (int q = 0; q < 3; ++q) {
            double val = dGamma[m][n][k][q] - dGamma[n][m][k][q];
            for (int s = 0; s < 3; ++s)
              val += G[n][k][s] * G[m][s][q] - G[m][k][s] * G[n][s][q];
            double ref = riemann_engine[m][n][k][q].eval(x);
            double err = std::abs(val - ref) / (1.0 + std::abs(ref));
            res.max_riemann_err = std::max(res.max_riemann_err, err);
          }
  }
  res.christoffel_ok = res.max_christoffel_err <= opt.christoffel_tol;
  res.riemann_ok = res.max_riemann_err <= opt.riemann_tol;
  return res;
}

}  // namespace tsm
