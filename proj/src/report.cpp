// SPDX-License-Identifier: Apache-2.0
#include "tsm/report.hpp"

#include <cctype>
#include <json.hpp>
#include <sstream>

namespace tsm::report {

using ordered_json = nlohmann::ordered_json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::NumericPass:
      return "numeric-pass";
    case Status::NotApplicable:
      return "not-applicable";
  }
  return "unknown";
}

CheckItem& CheckReport::add(CheckItem item) {
  items.push_back(std::move(item));
  return items.back();
}

int CheckReport::count(Status s) const {
  int n = 0;
  for (const auto& it : items) n += (it.status == s) ? 1 : 0;
  return n;
}

bool RunReport::all_passing() const {
  for (const auto& suite : suites)
    for (const auto& it : suite.items)
      if (it.status == Status::Fail) return false;
  return true;
}

int RunReport::conflict_count() const {
  int n = 0;
  for (const auto& suite : suites)
    for (const auto& it : suite.items) n += it.conflicts_with_paper ? 1 : 0;
  return n;
}

CheckItem check_residuals(const std::string& id, const std::string& ref,
                          const std::vector<Residual>& residuals,
                          const std::array<std::string, 3>& names) {
  CheckItem item;
  item.id = id;
  item.ref = ref;
  bool numeric = false;
  bool failed = false;
  for (const auto& [label, expr] : residuals) {
    ZeroCheck zc = expr.is_zero();
    if (!zc.zero) {
      failed = true;
      item.residual_components.push_back(label + ": " + expr.str(names));
    } else if (zc.via_numeric) {
      numeric = true;
    }
  }
  item.status = failed ? Status::Fail : (numeric ? Status::NumericPass : Status::Pass);
  return item;
}

static ordered_json item_json(const CheckItem& it) {
  ordered_json j;
  j["identity_id"] = it.id;
  j["paper_ref"] = it.ref;
  j["status"] = status_name(it.status);
  j["residual_components"] = it.residual_components;
  j["notes"] = it.notes;
  j["conflicts_with_paper"] = it.conflicts_with_paper;
  return j;
}

static ordered_json summary_json(int pass, int fail, int numeric, int na) {
  ordered_json j;
  j["pass"] = pass;
  j["fail"] = fail;
  j["numeric_pass"] = numeric;
  j["not_applicable"] = na;
  return j;
}

std::string render_json(const RunReport& rep) {
  ordered_json root;
  root["engine_version"] = rep.engine_version;
  root["suites"] = ordered_json::array();
  int pass = 0, fail = 0, numeric = 0, na = 0;
  for (const auto& suite : rep.suites) {
    ordered_json js;
    js["suite"] = suite.suite;
    js["items"] = ordered_json::array();
    for (const auto& it : suite.items) js["items"].push_back(item_json(it));
    js["summary"] = summary_json(suite.count(Status::Pass), suite.count(Status::Fail),
                                 suite.count(Status::NumericPass), suite.count(Status::NotApplicable));
    root["suites"].push_back(std::move(js));
    pass += suite.count(Status::Pass);
    fail += suite.count(Status::Fail);
    numeric += suite.count(Status::NumericPass);
    na += suite.count(Status::NotApplicable);
  }
  root["summary"] = summary_json(pass, fail, numeric, na);
  root["summary"]["conflicts_with_paper"] = rep.conflict_count();
  root["exit_code"] = exit_code(rep);
  return root.dump(2) + "\n";
}

std::string render_text(const RunReport& rep) {
  std::ostringstream out;
  out << "engine " << rep.engine_version << "\n";
  for (const auto& suite : rep.suites) {
    out << "\nsuite: " << suite.suite << "\n";
    for (const auto& it : suite.items) {
      std::string tag = status_name(it.status);
      for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      out << "  [" << tag << "] " << it.id << "  (" << it.ref << ")";
      if (it.conflicts_with_paper) out << "  !conflicts-with-source";
      out << "\n";
      if (!it.notes.empty()) out << "      note: " << it.notes << "\n";
      for (const auto& res : it.residual_components) out << "      residual " << res << "\n";
    }
    out << "  " << suite.count(Status::Pass) << " pass, " << suite.count(Status::Fail) << " fail, "
        << suite.count(Status::NumericPass) << " numeric-pass, " << suite.count(Status::NotApplicable)
        << " not-applicable\n";
  }
  int fails = 0;
  for (const auto& suite : rep.suites) fails += suite.count(Status::Fail);
  out << "\noverall: " << (fails == 0 ? "PASS" : "FAIL") << " (" << fails << " failing item"
      << (fails == 1 ? "" : "s") << ", " << rep.conflict_count() << " recorded conflict"
      << (rep.conflict_count() == 1 ? "" : "s") << ")\n";
  return out.str();
}

int exit_code(const RunReport& rep) { return rep.all_passing() ? 0 : 2; }

}  // namespace tsm::report
