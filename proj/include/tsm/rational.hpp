// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

namespace tsm {

/// Exact rational number with arbitrary-precision numerator/denominator.
using Rat = mpq_class;

/// Parses "a", "-a" or "a/b" (b > 0 after canonicalization). Throws tsm::Error on
/// malformed input or zero denominator.
Rat rat_from_string(const std::string& text);

/// Canonical text form: "a" when the denominator is 1, else "a/b".
std::string rat_to_string(const Rat& q);

double rat_to_double(const Rat& q);

/// Strict total order usable as a map/sort comparator.
inline bool rat_less(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }

using RatPoint = std::array<Rat, 3>;

}  // namespace tsm
