// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsm/connection.hpp"
#include "tsm/curvature.hpp"
#include "tsm/manifold.hpp"
#include "tsm/report.hpp"

namespace tsm {

/// Almost-contact data (phi, xi, eta) on a framed manifold. `eta` is always
/// the metric dual g(., xi); a manifest may also declare its own 1-form, which
/// is validated against the computed one but never replaces it.
struct ContactStructure {
  FrameTensor phi{1, 1};  // at2(i, l): phi(e_i) = sum_l phi[i][l] e_l
  VectorField xi;
  FrameTensor eta{0, 1};  // eta(e_i) = g(e_i, xi)
  std::optional<FrameTensor> declared_eta;
};

/// phi(X) for an endomorphism given as a (1,1) frame tensor.
VectorField apply_endomorphism(const FrameTensor& phi, const VectorField& X);

/// Gradient: the vector field Df with g(Df, X) = X(f) for every X.
VectorField metric_gradient(const FrameManifold& M, const Connection& C, const ScalarExpr& f);

ContactStructure make_contact_structure(const FrameManifold& M, FrameTensor phi, VectorField xi,
                                        std::optional<FrameTensor> declared_eta = std::nullopt);

/// Checks the seven almost-contact metric axioms (and, when present, the
/// declared 1-form) on every frame pair; suite "almost-contact".
report::CheckReport validate_almost_contact(const FrameManifold& M, const ContactStructure& CS);

/// Outcome of structure-function detection.
struct TransSasakianReport {
  ScalarExpr alpha;
  ScalarExpr beta;
  bool has_candidates = false;  // some non-degenerate frame leg produced (alpha, beta)
  bool detected = false;        // candidates exist and every defining residual vanishes
  bool used_numeric = false;
  int leg = -1;                          // frame leg the normalization used (0-based)
  bool alpha_constant = false;
  bool beta_constant = false;
  std::string classification;            // cosymplectic / alpha-Sasakian / beta-Kenmotsu / ...
  std::vector<std::string> defects;      // nonzero residual components, canonical strings
};

/// Reads (alpha, beta) off nabla_X xi for a non-degenerate frame leg and
/// verifies the two covariant structure equations for phi and eta everywhere.
/// `forced_leg` (0 or 1) overrides the leg choice, for diagnostics.
TransSasakianReport detect_trans_sasakian(const FrameManifold& M, const Connection& C,
                                          const ContactStructure& CS, int forced_leg = -1);

/// Suite "trans-sasakian": detection verdict plus the residual items of the
/// covariant structure equations for phi, eta and xi.
report::CheckReport structure_equation_report(const FrameManifold& M, const Connection& C,
                                              const ContactStructure& CS,
                                              const TransSasakianReport& T);

/// Suite "identities", constant structure functions: the closed forms of
/// R(X,Y)xi, the Ricci tensor/operator, the *-Ricci tensor, and the Reeb
/// derivative of the scalar curvature.
report::CheckReport identity_suite_constant(const FrameManifold& M, const Connection& C,
                                            const CurvatureBundle& K, const ContactStructure& CS,
                                            const Rat& alpha, const Rat& beta);

/// Suite "identities", general structure functions: the full curvature and
/// Ricci expansions with gradient terms, the Ricci-of-Reeb form, and the
/// first-slot contraction of the curvature expansion against the Ricci one.
report::CheckReport identity_suite_general(const FrameManifold& M, const Connection& C,
                                           const CurvatureBundle& K, const ContactStructure& CS,
                                           const ScalarExpr& alpha, const ScalarExpr& beta);

}  // namespace tsm
