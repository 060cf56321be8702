// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsm/manifold.hpp"
#include "tsm/soliton.hpp"

namespace tsm {

/// Parsed `.tsm` manifest: a line-oriented `key = value` description of a
/// framed manifold, its contact data, an optional soliton problem, the suites
/// to run, and optional `audit.*` reference values to compare against.
struct Manifest {
  int format_version = 1;
  FrameManifold::Mode mode = FrameManifold::Mode::Chart;
  std::array<std::string, 3> coords{"x", "y", "z"};
  Mat3 frame = identity3();          // chart mode: rows are frame components
  StructureConstants c{};            // lie mode: [e_i,e_j] = sum_k c[i][j][k] e_k
  Mat3 metric = identity3();
  std::array<std::array<Rat, 3>, 3> phi{};  // rows: phi(e_i) frame components
  std::array<ScalarExpr, 3> xi{};
  std::optional<std::array<ScalarExpr, 3>> eta;
  std::optional<std::array<ScalarExpr, 3>> V;
  SolitonKind soliton_kind = SolitonKind::Ricci;
  std::optional<Rat> p;
  std::optional<Rat> lambda;  // nullopt: "solve"
  RatPoint base_point{Rat(0), Rat(0), Rat(0)};
  std::vector<std::string> suites{"all"};
  /// Reference values to audit, in file order: key suffix after "audit." and
  /// the comma-separated components as written.
  std::vector<std::pair<std::string, std::vector<std::string>>> audit;
};

/// All suite names a manifest or the command line may reference.
const std::vector<std::string>& known_suites();

/// Parses manifest text. Throws ParseError (with 1-based line/column) for
/// grammar violations and unknown keys, ManifestError for missing sections
/// or inconsistent values.
Manifest parse_manifest(const std::string& text);

/// Canonical text form; parse_manifest(serialize_manifest(m)) is equivalent to m.
std::string serialize_manifest(const Manifest& m);

/// Instantiates the framed manifold (runs the mode's structural validation).
FrameManifold build_manifold(const Manifest& m);

/// Instantiates (phi, xi, eta) on the built manifold.
ContactStructure build_contact(const FrameManifold& M, const Manifest& m);

}  // namespace tsm
