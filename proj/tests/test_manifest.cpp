// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tsm/errors.hpp"
#include "tsm/manifest.hpp"

using namespace tsm;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(TSM_FIXTURE_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "cannot open fixture " << name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kMinimalLie =
    "mode = lie\n"
    "c.12 = 0, 0, 2\n"
    "c.23 = 2, 0, 0\n"
    "c.31 = 0, 2, 0\n"
    "phi.1 = 0, 1, 0\n"
    "phi.2 = -1, 0, 0\n"
    "phi.3 = 0, 0, 0\n"
    "xi = 0, 0, 1\n";

}  // namespace

TEST_CASE("parsing the example fixture") {
  const Manifest m = parse_manifest(read_file("example.tsm"));

  CHECK(m.mode == FrameManifold::Mode::Chart);
  CHECK(m.coords == std::array<std::string, 3>{"x", "y", "z"});
  CHECK(equivalent(m.frame[0][0], parse_scalar("exp(2*z)")));
  CHECK(m.frame[0][1].is_structural_zero());
  CHECK(equivalent(m.frame[2][2], parse_scalar("1")));
  CHECK(m.phi[0] == std::array<Rat, 3>{Rat(0), Rat(1), Rat(0)});
  CHECK(m.phi[1] == std::array<Rat, 3>{Rat(-1), Rat(0), Rat(0)});
  CHECK(m.xi[2].as_rational().value() == Rat(1));
  REQUIRE(m.eta.has_value());
  CHECK((*m.eta)[2].as_rational().value() == Rat(1));
  REQUIRE(m.V.has_value());
  CHECK((*m.V)[2].as_rational().value() == Rat(1));
  CHECK(m.soliton_kind == SolitonKind::Ricci);
  CHECK(m.p.value() == Rat(2));
  CHECK_FALSE(m.lambda.has_value());  // "solve"
  CHECK(m.suites == std::vector<std::string>{"all"});
  CHECK(m.audit.size() == 30);
  CHECK(m.audit.front().first == "bracket.12");
  CHECK(m.audit.back().first == "lambda");
  CHECK(m.audit.back().second == std::vector<std::string>{"4"});
}

TEST_CASE("serialization round-trips every fixture") {
  for (const char* name : {"example.tsm", "s3.tsm", "flat.tsm"}) {
    const Manifest m = parse_manifest(read_file(name));
    const std::string once = serialize_manifest(m);
    const Manifest again = parse_manifest(once);
    CHECK(serialize_manifest(again) == once);
  }
}

TEST_CASE("manifest grammar errors") {
  SUBCASE("empty input is missing the mode") {
    CHECK_THROWS_WITH_AS(parse_manifest(""), "missing mode", ManifestError);
  }

  SUBCASE("unknown keys are rejected with their line") {
    try {
      parse_manifest("mode = lie\nbogus = 3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.reason().find("bogus") != std::string::npos);
    }
  }

  SUBCASE("bad expressions carry line and column") {
    try {
      parse_manifest(std::string(kMinimalLie) + "V = 0, (2*, 1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 9);
      CHECK(e.column() > 5);
    }
  }

  SUBCASE("duplicate keys are rejected") {
    CHECK_THROWS_AS(parse_manifest("mode = lie\nxi = 0, 0, 1\nxi = 0, 0, 1\n"), ParseError);
  }

  SUBCASE("mode guards the frame description keys") {
    CHECK_THROWS_AS(parse_manifest("mode = lie\nframe.1 = 1, 0, 0\n"), ParseError);
    CHECK_THROWS_AS(parse_manifest("mode = chart\nc.12 = 0, 0, 2\n"), ParseError);
  }

  SUBCASE("duplicate bracket pairs are rejected even when written flipped") {
    CHECK_THROWS_AS(parse_manifest("mode = lie\nc.12 = 0, 0, 2\nc.21 = 0, 0, -2\n"),
                    ParseError);
  }

  SUBCASE("suite names are validated") {
    CHECK_THROWS_AS(parse_manifest(std::string(kMinimalLie) + "suites = bogus\n"), ParseError);
  }

  SUBCASE("missing structure fields") {
    CHECK_THROWS_WITH_AS(parse_manifest("mode = chart\n"), "missing frame rows (need frame.1..3)",
                         ManifestError);
    CHECK_THROWS_WITH_AS(
        parse_manifest("mode = chart\nframe.1 = 1,0,0\nframe.2 = 0,1,0\nframe.3 = 0,0,1\n"),
        "missing phi rows (need phi.1..3)", ManifestError);
  }
}

TEST_CASE("lambda accepts 'solve' or an exact rational") {
  const Manifest solved = parse_manifest(std::string(kMinimalLie) + "lambda = solve\n");
  CHECK_FALSE(solved.lambda.has_value());
  const Manifest fixed = parse_manifest(std::string(kMinimalLie) + "lambda = -2\n");
  CHECK(fixed.lambda.value() == Rat(-2));
  CHECK_THROWS_AS(parse_manifest(std::string(kMinimalLie) + "lambda = x\n"), ParseError);
}

TEST_CASE("building the manifold validates the structure constants") {
  const char* bad =
      "mode = lie\n"
      "c.12 = 0, 0, 1\n"
      "c.23 = 1, 0, 0\n"
      "c.31 = 0, 0, 1\n"
      "phi.1 = 0, 1, 0\n"
      "phi.2 = -1, 0, 0\n"
      "phi.3 = 0, 0, 0\n"
      "xi = 0, 0, 1\n";
  const Manifest m = parse_manifest(bad);
  CHECK_THROWS_AS(build_manifold(m), ManifoldError);  // Jacobi identity fails
}

TEST_CASE("building the contact structure from a fixture") {
  const Manifest m = parse_manifest(read_file("flat.tsm"));
  const FrameManifold M = build_manifold(m);
  const ContactStructure CS = build_contact(M, m);
  CHECK(CS.eta.at1(2).as_rational().value() == Rat(1));
  CHECK(CS.eta.at1(0).is_structural_zero());
  CHECK_FALSE(CS.declared_eta.has_value());
  CHECK(CS.phi.at2(0, 1).as_rational().value() == Rat(1));
}

TEST_CASE("suite list is known") {
  CHECK(known_suites().size() == 9);
  CHECK(known_suites().front() == "all");
}
