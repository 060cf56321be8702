// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "tsm/connection.hpp"
#include "tsm/manifold.hpp"

namespace tsm {

struct OracleOptions {
  std::uint64_t seed = 0;
  int points = 8;
  double step = 3e-3;             // finite-difference step
  double christoffel_tol = 1e-6;  // on |diff| / (1 + |reference|)
  double riemann_tol = 1e-5;
};

struct OracleResult {
  int points = 0;
  double max_christoffel_err = 0.0;
  double max_riemann_err = 0.0;
  bool christoffel_ok = false;
  bool riemann_ok = false;
  bool ok() const { return christoffel_ok && riemann_ok; }
};

/// Independent numeric cross-check of the symbolic pipeline: evaluates the
/// coordinate metric numerically, forms Christoffel symbols and the Riemann
/// tensor with 4th-order central differences at seeded random points, and
/// compares against the engine's symbolic objects pushed to coordinates.
/// Chart mode only; throws ContractError in Lie mode.
OracleResult finite_difference_oracle(const FrameManifold& M, const Connection& C,
                                      const FrameTensor& R, const OracleOptions& opt = {});

}  // namespace tsm
