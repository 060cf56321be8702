// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tsm/scalar.hpp"

namespace tsm::report {

/// Outcome of one checked identity / claim.
enum class Status {
  Pass,           // residuals vanish under symbolic canonicalization
  Fail,           // at least one residual is provably nonzero
  NumericPass,    // residuals vanish, but only the sampling fallback could tell
  NotApplicable,  // hypotheses not met; excluded from the exit-code verdict
};

std::string status_name(Status s);

/// One checked identity with its source reference and the evidence gathered.
struct CheckItem {
  std::string id;    // stable machine name of the check
  std::string ref;   // where the claimed identity/value comes from
  Status status = Status::Pass;
  std::vector<std::string> residual_components;  // canonical strings of nonzero residuals
  std::string notes;
  /// Set when the engine's verdict contradicts the source's printed value;
  /// independent of status so a fixture can record known errata.
  bool conflicts_with_paper = false;
};

/// All items of one named suite.
struct CheckReport {
  std::string suite;
  std::vector<CheckItem> items;

  CheckItem& add(CheckItem item);
  int count(Status s) const;
};

/// Full run: ordered suites plus engine metadata.
struct RunReport {
  std::vector<CheckReport> suites;
  std::string engine_version;

  bool all_passing() const;
  int conflict_count() const;
};

inline constexpr const char* kEngineVersion = "0.1.0";

/// Labelled residual expression feeding a CheckItem verdict.
using Residual = std::pair<std::string, ScalarExpr>;

/// Builds an item by running the zero test on every residual: Pass when all
/// vanish structurally/symbolically, NumericPass when any needed the sampling
/// fallback, Fail otherwise (with the nonzero components listed).
CheckItem check_residuals(const std::string& id, const std::string& ref,
                          const std::vector<Residual>& residuals,
                          const std::array<std::string, 3>& names = {"x", "y", "z"});

std::string render_text(const RunReport& rep);
std::string render_json(const RunReport& rep);

/// 0 when every non-NotApplicable item passes (symbolically or numerically),
/// 2 when any item fails.
int exit_code(const RunReport& rep);

}  // namespace tsm::report
