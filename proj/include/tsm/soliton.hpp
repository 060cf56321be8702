// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsm/curvature.hpp"
#include "tsm/report.hpp"
#include "tsm/structure.hpp"

namespace tsm {

/// Which soliton-type equation the residual is built from. All four follow
/// the printed sign conventions:
///   ricci:                 (1/2) L_V g + S + lambda g = 0
///   conformal_ricci:       L_V g + 2S + [2 lambda - (p + 2/3)] g = 0
///   star_ricci:            L_V g + 2S* + 2 lambda g = 0
///   star_conformal_ricci:  L_V g + 2S* + [2 lambda - (p + 2/3)] g = 0
enum class SolitonKind { Ricci, ConformalRicci, StarRicci, StarConformalRicci };

std::string soliton_kind_name(SolitonKind k);
std::optional<SolitonKind> soliton_kind_from_name(const std::string& name);

struct SolitonProblem {
  SolitonKind kind = SolitonKind::Ricci;
  VectorField V;
  std::optional<Rat> p;       // conformal pressure; present iff the kind is conformal
  std::optional<Rat> lambda;  // nullopt: solve for lambda from the frame trace
};

struct SolitonVerdict {
  FrameTensor residual{0, 2};  // equation left-hand side with the reported lambda
  std::vector<std::pair<std::string, ScalarExpr>> lambda_pointwise;  // per diagonal component
  ScalarExpr lambda_trace;     // the unique trace solution
  ScalarExpr lambda_reported;  // declared lambda, or lambda_trace when solving
  bool lambda_is_constant = false;
  bool is_soliton = false;     // every residual component vanishes and lambda is constant
  bool used_numeric = false;
  std::vector<std::string> notes;
};

/// Evaluates the selected soliton equation for (V, p, lambda). With
/// lambda = "solve" the trace of the equation fixes lambda_trace and the
/// diagonal components give the pointwise solutions; near-misses stay
/// diagnosable through the component list.
SolitonVerdict soliton_residual(const FrameManifold& M, const Connection& C,
                                const CurvatureBundle& K, const ContactStructure& CS,
                                const SolitonProblem& P);

/// Checks the dichotomy for Ricci solitons on a constant-type structure:
/// either nabla_xi V is orthogonal to xi and lambda (in the "= lambda g"
/// convention) equals 2(alpha^2 - beta^2) with the shrinking/steady/expanding
/// label, or alpha^2 = beta^2 and nabla_xi V is that multiple of xi.
/// Throws HypothesisViolated for non-constant structure functions and
/// ContractError for a non-ricci kind.
report::CheckReport check_theorem_3_1(const FrameManifold& M, const Connection& C,
                                      const CurvatureBundle& K, const ContactStructure& CS,
                                      const SolitonProblem& P);

/// For a *-conformal soliton with constant type and alpha != 0, verifies the
/// scalar-curvature formula r = (1 - beta^2/alpha^2)(p/2 + 1/3 - lambda + 4 alpha^2).
/// Throws HypothesisViolated when alpha = 0 or the type is not constant, and
/// ContractError for a wrong kind or missing p.
report::CheckReport check_theorem_3_2(const FrameManifold& M, const Connection& C,
                                      const CurvatureBundle& K, const ContactStructure& CS,
                                      const SolitonProblem& P);

/// The closed-form right-hand side of the scalar-curvature formula above.
Rat theorem_3_2_scalar_curvature(const Rat& alpha, const Rat& beta, const Rat& p,
                                 const Rat& lambda);

}  // namespace tsm
