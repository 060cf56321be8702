// SPDX-License-Identifier: Apache-2.0
#include "tsm/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "tsm/errors.hpp"

namespace tsm {

namespace {

struct RawEntry {
  std::string key;
  std::string value;
  int line = 0;
  int value_col = 0;  // 1-based column where the value text starts
};

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<RawEntry> tokenize(const std::string& text) {
  std::vector<RawEntry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, 1, "expected 'key = value'");
    RawEntry e;
    e.key = trim(line.substr(0, eq));
    e.line = lineno;
    size_t vstart = line.find_first_not_of(" \t\r", eq + 1);
    if (e.key.empty()) throw ParseError(lineno, 1, "missing key before '='");
    if (vstart == std::string::npos) throw ParseError(lineno, static_cast<int>(eq) + 2, "missing value");
    std::string rhs = line.substr(vstart);
    e.value = trim(rhs);
    e.value_col = static_cast<int>(vstart) + 1;
    entries.push_back(std::move(e));
  }
  return entries;
}

struct Component {
  std::string text;
  int col = 0;  // 1-based column in the original line
};

std::vector<Component> split_components(const RawEntry& e) {
  std::vector<Component> out;
  size_t start = 0;
  const std::string& v = e.value;
  while (true) {
    size_t comma = v.find(',', start);
    std::string piece = v.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    size_t lead = piece.find_first_not_of(" \t");
    Component c;
    c.text = trim(piece);
    c.col = e.value_col + static_cast<int>(start + (lead == std::string::npos ? 0 : lead));
    out.push_back(std::move(c));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ScalarExpr parse_expr(const RawEntry& e, const Component& c,
                      const std::array<std::string, 3>& coords) {
  if (c.text.empty()) throw ParseError(e.line, c.col, "empty expression component");
  try {
    return parse_scalar(c.text, coords);
  } catch (const ParseError& inner) {
    throw ParseError(e.line, c.col + inner.column() - 1, inner.reason());
  }
}

Rat parse_rat(const RawEntry& e, const Component& c, const std::array<std::string, 3>& coords) {
  ScalarExpr expr = parse_expr(e, c, coords);
  auto q = expr.as_rational();
  if (!q) throw ParseError(e.line, c.col, "expected a rational constant");
  return *q;
}

std::array<ScalarExpr, 3> parse_expr_triple(const RawEntry& e,
                                            const std::array<std::string, 3>& coords) {
  auto comps = split_components(e);
  if (comps.size() != 3)
    throw ParseError(e.line, e.value_col, "expected exactly 3 comma-separated components");
  return {parse_expr(e, comps[0], coords), parse_expr(e, comps[1], coords),
          parse_expr(e, comps[2], coords)};
}

std::array<Rat, 3> parse_rat_triple(const RawEntry& e, const std::array<std::string, 3>& coords) {
  auto comps = split_components(e);
  if (comps.size() != 3)
    throw ParseError(e.line, e.value_col, "expected exactly 3 comma-separated components");
  return {parse_rat(e, comps[0], coords), parse_rat(e, comps[1], coords),
          parse_rat(e, comps[2], coords)};
}

int row_suffix(const RawEntry& e, const std::string& prefix) {
  std::string suffix = e.key.substr(prefix.size());
  if (suffix.size() == 1 && suffix[0] >= '1' && suffix[0] <= '3') return suffix[0] - '1';
  throw ParseError(e.line, 1, "key '" + e.key + "' must end in a row index 1..3");
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {
      "all",        "almost-contact", "connection", "curvature",
      "trans-sasakian", "identities",     "soliton",    "theorem-3-1",
      "theorem-3-2"};
  return names;
}

Manifest parse_manifest(const std::string& text) {
  std::vector<RawEntry> entries = tokenize(text);

  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.key).second) throw ParseError(e.line, 1, "duplicate key '" + e.key + "'");
  }

  Manifest m;

  // Pass 1: mode and coordinate names decide how every other value is read.
  bool mode_seen = false;
  for (const auto& e : entries) {
    if (e.key == "mode") {
      if (e.value == "chart")
        m.mode = FrameManifold::Mode::Chart;
      else if (e.value == "lie")
        m.mode = FrameManifold::Mode::Lie;
      else
        throw ParseError(e.line, e.value_col, "mode must be 'chart' or 'lie'");
      mode_seen = true;
    } else if (e.key == "coords") {
      auto comps = split_components(e);
      if (comps.size() != 3)
        throw ParseError(e.line, e.value_col, "expected exactly 3 coordinate names");
      for (int i = 0; i < 3; ++i) {
        if (comps[i].text.empty() ||
            !std::all_of(comps[i].text.begin(), comps[i].text.end(),
                         [](unsigned char ch) { return std::isalpha(ch) || ch == '_'; }))
          throw ParseError(e.line, comps[i].col, "coordinate names must be alphabetic");
        m.coords[i] = comps[i].text;
      }
    } else if (e.key == "format_version") {
      try {
        if (std::stol(e.value) != 1) throw ManifestError("unsupported format_version " + e.value);
      } catch (const std::logic_error&) {
        throw ParseError(e.line, e.value_col, "format_version must be an integer");
      }
    }
  }
  if (!mode_seen) throw ManifestError("missing mode");
  const bool chart = m.mode == FrameManifold::Mode::Chart;

  // Pass 2: everything else, in file order.
  std::set<std::string> frame_rows, phi_rows;
  std::set<std::pair<int, int>> c_pairs;
  bool xi_seen = false;
  for (const auto& e : entries) {
    const std::string& k = e.key;
    if (k == "mode" || k == "coords" || k == "format_version") continue;
    if (k.rfind("frame.", 0) == 0) {
      if (!chart) throw ParseError(e.line, 1, "key 'frame.*' requires chart mode");
      int row = row_suffix(e, "frame.");
      m.frame[row] = parse_expr_triple(e, m.coords);
      frame_rows.insert(k);
    } else if (k.rfind("c.", 0) == 0) {
      if (chart) throw ParseError(e.line, 1, "key 'c.*' requires lie mode");
      std::string suffix = k.substr(2);
      if (suffix.size() != 2 || suffix[0] < '1' || suffix[0] > '3' || suffix[1] < '1' ||
          suffix[1] > '3' || suffix[0] == suffix[1])
        throw ParseError(e.line, 1, "structure-constant keys are c.ij with distinct i,j in 1..3");
      int i = suffix[0] - '1', j = suffix[1] - '1';
      if (!c_pairs.insert({std::min(i, j), std::max(i, j)}).second)
        throw ParseError(e.line, 1, "duplicate structure constants for the pair (" +
                                        std::to_string(std::min(i, j) + 1) + "," +
                                        std::to_string(std::max(i, j) + 1) + ")");
      auto q = parse_rat_triple(e, m.coords);
      for (int l = 0; l < 3; ++l) {
        m.c[i][j][l] = q[l];
        m.c[j][i][l] = -q[l];
      }
    } else if (k.rfind("metric.", 0) == 0) {
      int row = row_suffix(e, "metric.");
      m.metric[row] = parse_expr_triple(e, m.coords);
    } else if (k.rfind("phi.", 0) == 0) {
      int row = row_suffix(e, "phi.");
      m.phi[row] = parse_rat_triple(e, m.coords);
      phi_rows.insert(k);
    } else if (k == "xi") {
      m.xi = parse_expr_triple(e, m.coords);
      xi_seen = true;
    } else if (k == "eta") {
      m.eta = parse_expr_triple(e, m.coords);
    } else if (k == "V") {
      m.V = parse_expr_triple(e, m.coords);
    } else if (k == "soliton_kind") {
      auto kind = soliton_kind_from_name(e.value);
      if (!kind) throw ParseError(e.line, e.value_col, "unknown soliton kind '" + e.value + "'");
      m.soliton_kind = *kind;
    } else if (k == "p") {
      m.p = parse_rat(e, {e.value, e.value_col}, m.coords);
    } else if (k == "lambda") {
      if (e.value == "solve")
        m.lambda = std::nullopt;
      else
        m.lambda = parse_rat(e, {e.value, e.value_col}, m.coords);
    } else if (k == "base_point") {
      auto q = parse_rat_triple(e, m.coords);
      m.base_point = {q[0], q[1], q[2]};
    } else if (k == "suites") {
      m.suites.clear();
      for (const auto& c : split_components(e)) {
        if (std::find(known_suites().begin(), known_suites().end(), c.text) ==
            known_suites().end())
          throw ParseError(e.line, c.col, "unknown suite '" + c.text + "'");
        m.suites.push_back(c.text);
      }
      if (m.suites.empty()) throw ParseError(e.line, e.value_col, "empty suite list");
    } else if (k.rfind("audit.", 0) == 0) {
      std::vector<std::string> comps;
      for (const auto& c : split_components(e)) comps.push_back(c.text);
      m.audit.emplace_back(k.substr(6), std::move(comps));
    } else {
      throw ParseError(e.line, 1, "unknown key '" + k + "'");
    }
  }

  if (chart && frame_rows.size() != 3) throw ManifestError("missing frame rows (need frame.1..3)");
  if (phi_rows.size() != 3) throw ManifestError("missing phi rows (need phi.1..3)");
  if (!xi_seen) throw ManifestError("missing xi");
  return m;
}

namespace {

std::string join_strings(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out;
}

std::string expr_row(const std::array<ScalarExpr, 3>& row,
                     const std::array<std::string, 3>& coords) {
  return row[0].str(coords) + ", " + row[1].str(coords) + ", " + row[2].str(coords);
}

std::string rat_row(const std::array<Rat, 3>& row) {
  return rat_to_string(row[0]) + ", " + rat_to_string(row[1]) + ", " + rat_to_string(row[2]);
}

}  // namespace

std::string serialize_manifest(const Manifest& m) {
  const bool chart = m.mode == FrameManifold::Mode::Chart;
  std::ostringstream out;
  out << "format_version = " << m.format_version << "\n";
  out << "mode = " << (chart ? "chart" : "lie") << "\n";
  out << "coords = " << m.coords[0] << ", " << m.coords[1] << ", " << m.coords[2] << "\n";
  if (chart) {
    for (int i = 0; i < 3; ++i)
      out << "frame." << (i + 1) << " = " << expr_row(m.frame[i], m.coords) << "\n";
  } else {
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto [i, j] : pairs)
      out << "c." << (i + 1) << (j + 1) << " = " << rat_to_string(m.c[i][j][0]) << ", "
          << rat_to_string(m.c[i][j][1]) << ", " << rat_to_string(m.c[i][j][2]) << "\n";
  }
  for (int i = 0; i < 3; ++i)
    out << "metric." << (i + 1) << " = " << expr_row(m.metric[i], m.coords) << "\n";
  for (int i = 0; i < 3; ++i) out << "phi." << (i + 1) << " = " << rat_row(m.phi[i]) << "\n";
  out << "xi = " << expr_row(m.xi, m.coords) << "\n";
  if (m.eta) out << "eta = " << expr_row(*m.eta, m.coords) << "\n";
  if (m.V) out << "V = " << expr_row(*m.V, m.coords) << "\n";
  out << "soliton_kind = " << soliton_kind_name(m.soliton_kind) << "\n";
  if (m.p) out << "p = " << rat_to_string(*m.p) << "\n";
  out << "lambda = " << (m.lambda ? rat_to_string(*m.lambda) : "solve") << "\n";
  out << "base_point = " << rat_to_string(m.base_point[0]) << ", "
      << rat_to_string(m.base_point[1]) << ", " << rat_to_string(m.base_point[2]) << "\n";
  out << "suites = " << join_strings(m.suites) << "\n";
  for (const auto& [key, comps] : m.audit) out << "audit." << key << " = " << join_strings(comps) << "\n";
  return out.str();
}

FrameManifold build_manifold(const Manifest& m) {
  if (m.mode == FrameManifold::Mode::Chart)
    return FrameManifold::chart(m.coords, m.frame, m.metric, m.base_point);
  return FrameManifold::lie(m.c, m.metric, m.base_point);
}

ContactStructure build_contact(const FrameManifold& M, const Manifest& m) {
  FrameTensor phi{1, 1};
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) phi.at2(i, l) = ScalarExpr(m.phi[i][l]);
  VectorField xi(m.xi[0], m.xi[1], m.xi[2]);
  std::optional<FrameTensor> eta;
  if (m.eta) {
    FrameTensor t{0, 1};
    for (int i = 0; i < 3; ++i) t.at1(i) = (*m.eta)[i];
    eta = std::move(t);
  }
  return make_contact_structure(M, std::move(phi), xi, std::move(eta));
}

}  // namespace tsm
