// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "tsm/curvature.hpp"
#include "tsm/errors.hpp"
#include "tsm/oracle.hpp"

using namespace tsm;

TEST_CASE("finite differences confirm the warped-frame computation") {
  const FrameManifold M = tsmtest::warped_manifold();
  const Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);

  const OracleResult res = finite_difference_oracle(M, C, R);
  CHECK(res.ok());
  CHECK(res.points == 8);
  CHECK(res.max_christoffel_err < 1e-6);
  CHECK(res.max_riemann_err < 1e-5);
}

TEST_CASE("flat space agrees to machine precision") {
  const FrameManifold M = tsmtest::flat_manifold();
  const Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);
  const OracleResult res = finite_difference_oracle(M, C, R);
  CHECK(res.ok());
  CHECK(res.max_christoffel_err < 1e-9);
  CHECK(res.max_riemann_err < 1e-9);
}

TEST_CASE("a corrupted connection coefficient is caught") {
  const FrameManifold M = tsmtest::warped_manifold();
  Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);
  C.gamma[0][0][0] += ScalarExpr(1);
  const OracleResult res = finite_difference_oracle(M, C, R);
  CHECK_FALSE(res.christoffel_ok);
  CHECK_FALSE(res.ok());
}

TEST_CASE("a corrupted curvature component is caught") {
  const FrameManifold M = tsmtest::warped_manifold();
  const Connection C = levi_civita(M);
  FrameTensor R = riemann(M, C);
  R.at4(0, 1, 0, 1) += ScalarExpr(1);
  const OracleResult res = finite_difference_oracle(M, C, R);
  CHECK(res.christoffel_ok);
  CHECK_FALSE(res.riemann_ok);
}

TEST_CASE("sampling is deterministic per seed") {
  const FrameManifold M = tsmtest::warped_manifold();
  const Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);

  OracleOptions opt;
  opt.seed = 7;
  const OracleResult a = finite_difference_oracle(M, C, R, opt);
  const OracleResult b = finite_difference_oracle(M, C, R, opt);
  CHECK(a.max_christoffel_err == b.max_christoffel_err);
  CHECK(a.max_riemann_err == b.max_riemann_err);

  opt.seed = 8;
  const OracleResult c = finite_difference_oracle(M, C, R, opt);
  CHECK(c.ok());  // every seed stays within tolerance
}

TEST_CASE("the oracle needs coordinates to differentiate") {
  const FrameManifold M = tsmtest::round_manifold();
  const Connection C = levi_civita(M);
  const FrameTensor R = riemann(M, C);
  CHECK_THROWS_AS(finite_difference_oracle(M, C, R), ContractError);
}
