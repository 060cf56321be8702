// SPDX-License-Identifier: Apache-2.0
#include "tsm/rational.hpp"

#include <cctype>

#include "tsm/errors.hpp"

namespace tsm {

Rat rat_from_string(const std::string& text) {
  if (text.empty()) throw Error("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) {
      throw Error("malformed rational literal: '" + text + "'");
    }
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw Error("malformed rational literal: '" + text + "'");
  if (q.get_den() == 0) throw Error("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  return q.get_str();
}

double rat_to_double(const Rat& q) {
  return q.get_d();
}

}  // namespace tsm
