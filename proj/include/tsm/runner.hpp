// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "tsm/manifest.hpp"
#include "tsm/report.hpp"

namespace tsm {

struct RunOptions {
  std::string suite;  // empty: run the manifest's suite list
  bool oracle = false;
  std::uint64_t seed = 0;  // oracle sampling seed
};

/// Executes the selected suites (plus their dependencies) in fixed order and
/// assembles the full report, including any audit comparisons the manifest
/// declares. Deterministic: identical manifest and options give identical
/// report text.
report::RunReport run_suites(const Manifest& m, const RunOptions& opt = {});

}  // namespace tsm
