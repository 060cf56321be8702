// SPDX-License-Identifier: Apache-2.0
//
// Acceptance harness: one timed pass/fail line per release criterion.
// Exits 0 only when every criterion holds within its time budget.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "property_suite.hpp"
#include "tsm/errors.hpp"
#include "tsm/manifest.hpp"
#include "tsm/oracle.hpp"
#include "tsm/runner.hpp"
#include "tsm/soliton.hpp"
#include "tsm/structure.hpp"

using namespace tsm;

namespace {

struct Check {
  std::string failures;

  void expect(bool cond, const std::string& what) {
    if (!cond) failures += (failures.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures.empty(); }
};

Manifest load_fixture(const std::string& name) {
  std::ifstream in(std::string(TSM_FIXTURE_DIR) + "/" + name);
  if (!in) throw Error("cannot open fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

struct Built {
  FrameManifold M;
  Connection C;
  CurvatureBundle K;
  ContactStructure CS;
};

Built build(const std::string& name) {
  const Manifest m = load_fixture(name);
  FrameManifold M = build_manifold(m);
  Connection C = levi_civita(M);
  CurvatureBundle K = curvature_bundle(M, C);
  ContactStructure CS = build_contact(M, m);
  K.S_star = star_ricci(M, K.R, CS.phi);
  return {std::move(M), std::move(C), std::move(K), std::move(CS)};
}

bool field_equals(const VectorField& got, const std::array<Rat, 3>& want) {
  for (int i = 0; i < 3; ++i) {
    auto q = got[i].as_rational();
    if (!q || *q != want[i]) return false;
  }
  return true;
}

const report::CheckItem* find_item(const report::CheckReport& rep, const std::string& id) {
  for (const auto& it : rep.items) {
    if (it.id == id) return &it;
  }
  return nullptr;
}

bool item_passes(const report::CheckReport& rep, const std::string& id) {
  const report::CheckItem* it = find_item(rep, id);
  return it && it->status == report::Status::Pass;
}

// --- criterion bodies -------------------------------------------------------

void criterion_1(Check& c) {
  const Built b = build("example.tsm");
  c.expect(field_equals(b.M.basis_bracket(0, 2), {Rat(-2), Rat(0), Rat(0)}),
           "[e1,e3] != -2e1");
  c.expect(field_equals(b.M.basis_bracket(1, 2), {Rat(0), Rat(-2), Rat(0)}),
           "[e2,e3] != -2e2");
  c.expect(field_equals(b.M.basis_bracket(0, 1), {Rat(0), Rat(0), Rat(0)}), "[e1,e2] != 0");

  const Rat z(0), two(2);
  const std::array<Rat, 3> table[3][3] = {
      {{z, z, two}, {z, z, z}, {Rat(-2), z, z}},
      {{z, z, z}, {z, z, two}, {z, Rat(-2), z}},
      {{z, z, z}, {z, z, z}, {z, z, z}},
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c.expect(field_equals(b.C.nabla_basis(i, j), table[i][j]),
               "nabla_e" + std::to_string(i + 1) + " e" + std::to_string(j + 1) + " mismatch");
    }
  }
}

void criterion_2(Check& c) {
  const Built b = build("example.tsm");
  const TransSasakianReport T = detect_trans_sasakian(b.M, b.C, b.CS);
  c.expect(T.detected, "structure not detected");
  c.expect(!T.used_numeric, "detection needed the numeric fallback");
  c.expect(T.alpha.as_rational() == Rat(0), "alpha != 0");
  c.expect(T.beta.as_rational() == Rat(-2), "beta != -2");

  const report::CheckReport rep = structure_equation_report(b.M, b.C, b.CS, T);
  c.expect(item_passes(rep, "phi-derivative-structure"), "phi structure equation residuals");
  c.expect(item_passes(rep, "eta-derivative-structure"), "eta structure equation residuals");
}

void criterion_3(Check& c) {
  const Built b = build("example.tsm");

  // Engine-correct curvature values, including where the printed table errs.
  struct Want {
    int i, j, k;
    std::array<Rat, 3> v;
  };
  const Want wanted[] = {
      {0, 1, 1, {Rat(-4), Rat(0), Rat(0)}}, {0, 2, 2, {Rat(-4), Rat(0), Rat(0)}},
      {1, 2, 2, {Rat(0), Rat(-4), Rat(0)}}, {0, 1, 0, {Rat(0), Rat(4), Rat(0)}},
      {0, 2, 0, {Rat(0), Rat(0), Rat(4)}},  {1, 2, 1, {Rat(0), Rat(0), Rat(4)}},
  };
  for (const Want& w : wanted) {
    VectorField v;
    for (int l = 0; l < 3; ++l) v[l] = b.K.R.at4(w.i, w.j, w.k, l);
    c.expect(field_equals(v, w.v), "R(e" + std::to_string(w.i + 1) + ",e" +
                                       std::to_string(w.j + 1) + ")e" + std::to_string(w.k + 1) +
                                       " mismatch");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c.expect(b.K.S.at2(i, j).as_rational() == (i == j ? Rat(-8) : Rat(0)), "S != -8g");
    }
  }
  c.expect(b.K.r.as_rational() == Rat(-24), "r != -24");

  // The rendered report must mark exactly the six recorded errata.
  RunOptions opt;
  opt.oracle = true;
  const report::RunReport run = run_suites(load_fixture("example.tsm"), opt);
  const auto j = nlohmann::json::parse(report::render_json(run));
  std::set<std::string> conflicts;
  for (const auto& suite : j["suites"]) {
    for (const auto& item : suite["items"]) {
      if (item["conflicts_with_paper"] == true) conflicts.insert(item["identity_id"]);
    }
  }
  const std::set<std::string> expected = {"audit.R.121", "audit.R.131",      "audit.R.232",
                                          "audit.S.11",  "audit.S.22-and-r", "audit.lambda"};
  c.expect(conflicts == expected, "conflict set is not exactly the six recorded errata");
  c.expect(j["exit_code"] == 2, "exit code != 2");

  // Finite-difference cross-check at 8 random points within 1e-5.
  const OracleResult oracle = finite_difference_oracle(b.M, b.C, b.K.R);
  c.expect(oracle.points == 8, "oracle did not sample 8 points");
  c.expect(oracle.ok(), "finite-difference cross-check out of tolerance");
  bool oracle_item_ok = false;
  for (const auto& suite : run.suites) {
    if (suite.suite != "oracle") continue;
    oracle_item_ok = suite.count(report::Status::NumericPass) == 2;
  }
  c.expect(oracle_item_ok, "--oracle report items not numeric-pass");
}

void criterion_4(Check& c) {
  const struct {
    const char* name;
    Rat alpha, beta;
  } cases[] = {{"example.tsm", Rat(0), Rat(-2)}, {"s3.tsm", Rat(1), Rat(0)},
               {"flat.tsm", Rat(0), Rat(0)}};
  for (const auto& f : cases) {
    const Built b = build(f.name);
    const report::CheckReport axioms = validate_almost_contact(b.M, b.CS);
    for (const char* id : {"phi-squared", "eta-of-reeb", "metric-phi-compatibility",
                           "phi-of-reeb", "eta-after-phi", "reeb-metric-duality",
                           "phi-skew-adjoint"}) {
      c.expect(item_passes(axioms, id), std::string(f.name) + ": " + id);
    }
    const report::CheckReport closed =
        identity_suite_constant(b.M, b.C, b.K, b.CS, f.alpha, f.beta);
    for (const char* id : {"curvature-of-reeb", "ricci-closed-form", "ricci-of-reeb",
                           "ricci-operator-closed-form", "star-ricci-closed-form",
                           "reeb-scalar-curvature"}) {
      c.expect(item_passes(closed, id), std::string(f.name) + ": " + id);
    }
    const report::CheckReport general = identity_suite_general(
        b.M, b.C, b.K, b.CS, ScalarExpr(f.alpha), ScalarExpr(f.beta));
    c.expect(item_passes(general, "ricci-from-curvature-contraction"),
             std::string(f.name) + ": contraction cross-check");
  }
}

void criterion_5(Check& c) {
  {
    const Built b = build("flat.tsm");
    SolitonProblem p;
    p.V = VectorField(ScalarExpr::variable(0), ScalarExpr::variable(1), ScalarExpr::variable(2));
    const SolitonVerdict v = soliton_residual(b.M, b.C, b.K, b.CS, p);
    c.expect(v.is_soliton, "flat dilation field is not reported as a soliton");
    c.expect(v.lambda_reported.as_rational() == Rat(-1), "flat lambda != -1");

    const report::CheckReport t1 = check_theorem_3_1(b.M, b.C, b.K, b.CS, p);
    const report::CheckItem* ii = find_item(t1, "case-ii-reeb-covariant-potential");
    c.expect(ii && ii->status == report::Status::Pass,
             "equal-type case not verified for the flat potential");
  }
  {
    const Built b = build("example.tsm");
    SolitonProblem p;
    p.V = VectorField::basis(2);
    const SolitonVerdict v = soliton_residual(b.M, b.C, b.K, b.CS, p);
    c.expect(!v.is_soliton, "example Reeb potential wrongly accepted");
    c.expect(v.lambda_trace.as_rational() == Rat(28, 3), "lambda_trace != 28/3");
    bool pointwise_ok = v.lambda_pointwise.size() == 3;
    const Rat want[3] = {Rat(10), Rat(10), Rat(8)};
    for (size_t i = 0; pointwise_ok && i < 3; ++i) {
      pointwise_ok = v.lambda_pointwise[i].second.as_rational() == want[i];
    }
    c.expect(pointwise_ok, "lambda_pointwise != {10, 10, 8}");
  }
}

void criterion_6(Check& c) {
  const struct {
    const char* name;
    Rat alpha, beta;
  } cases[] = {{"example.tsm", Rat(0), Rat(-2)}, {"s3.tsm", Rat(1), Rat(0)},
               {"flat.tsm", Rat(0), Rat(0)}};
  for (const auto& f : cases) {
    const Built b = build(f.name);
    const report::CheckReport closed =
        identity_suite_constant(b.M, b.C, b.K, b.CS, f.alpha, f.beta);
    c.expect(item_passes(closed, "star-ricci-closed-form"),
             std::string(f.name) + ": trace definition deviates from the closed form");
  }
  const Built s3 = build("s3.tsm");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Rat want = (i == j && i != 2) ? Rat(1) : Rat(0);
      c.expect(s3.K.S_star->at2(i, j).as_rational() == want, "S3: S* != g - eta x eta");
    }
  }
}

void criterion_7(Check& c) {
  bool threw = false;
  try {
    theorem_3_2_scalar_curvature(Rat(0), Rat(-2), Rat(2), Rat(1));
  } catch (const HypothesisViolated&) {
    threw = true;
  }
  c.expect(threw, "alpha = 0 did not raise the hypothesis violation");
  c.expect(theorem_3_2_scalar_curvature(Rat(1), Rat(0), Rat(2), Rat(1)) == Rat(13, 3),
           "formula at (1,0,2,1) != 13/3");

  const Built b = build("s3.tsm");
  SolitonProblem p;
  p.kind = SolitonKind::StarConformalRicci;
  p.p = Rat(2);  // V stays zero
  const report::CheckReport rep = check_theorem_3_2(b.M, b.C, b.K, b.CS, p);
  const report::CheckItem* it = find_item(rep, "star-conformal-soliton");
  c.expect(it && it->status == report::Status::NotApplicable &&
               it->notes.find("no *-conformal soliton") != std::string::npos,
           "S3 with zero potential did not report the no-soliton verdict");
}

void criterion_8(Check& c) {
  const tsmtest::PropertyOutcome out = tsmtest::run_property_suite(20260826u, 50);
  c.expect(out.samples >= 150, "fewer than 50 samples per fixture");
  c.expect(out.failures == 0,
           "property failures: " +
               (out.failure_notes.empty() ? std::string("?") : out.failure_notes.front()));
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<void(Check&)> body;
    double budget_seconds;
  };
  const Criterion criteria[] = {
      {"1. example brackets and connection table, exact", criterion_1, 1.0},
      {"2. example classified as type (0,-2) with zero residuals", criterion_2, 0.0},
      {"3. example curvature audit: six recorded conflicts + numeric cross-check", criterion_3,
       0.0},
      {"4. axiom and identity suites pass on all fixtures", criterion_4, 5.0},
      {"5. soliton verdicts: flat lambda=-1 / example {10,10,8}, 28/3", criterion_5, 0.0},
      {"6. star-Ricci trace matches its closed form; S3 gives g - eta x eta", criterion_6, 0.0},
      {"7. scalar-curvature formula plumbing and hypothesis guard", criterion_7, 0.0},
      {"8. randomized property suite, 50 samples per fixture", criterion_8, 30.0},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_seconds > 0 && secs > cr.budget_seconds) {
      check.expect(false, "over time budget of " + std::to_string(cr.budget_seconds) + " s");
    }
    if (check.ok()) {
      std::printf("[PASS] %s (%.2f s)\n", cr.label, secs);
    } else {
      ++failed;
      std::printf("[FAIL] %s (%.2f s): %s\n", cr.label, secs, check.failures.c_str());
    }
  }
  if (failed) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
