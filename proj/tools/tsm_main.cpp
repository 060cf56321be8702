// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: parses a .tsm manifest, runs the requested check
// suites, and prints a text or JSON report.
//
// Exit codes: 0 all checks pass (ignoring not-applicable items), 1 usage or
// manifest error, 2 at least one check failed.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tsm/errors.hpp"
#include "tsm/manifest.hpp"
#include "tsm/report.hpp"
#include "tsm/runner.hpp"

namespace {

int run_check(const std::string& path, const std::string& suite, const std::string& format,
              bool oracle, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "tsm: cannot open '" << path << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  tsm::Manifest m;
  try {
    m = tsm::parse_manifest(buf.str());
  } catch (const tsm::ParseError& e) {
    std::cerr << "tsm: " << path << ":" << e.line() << ":" << e.column() << ": " << e.reason()
              << "\n";
    return 1;
  } catch (const tsm::Error& e) {
    std::cerr << "tsm: " << path << ": " << e.what() << "\n";
    return 1;
  }

  tsm::RunOptions opt;
  opt.suite = suite;  // empty means: use the suite list from the manifest
  opt.oracle = oracle;
  opt.seed = seed;

  tsm::report::RunReport run;
  try {
    run = tsm::run_suites(m, opt);
  } catch (const tsm::Error& e) {
    std::cerr << "tsm: " << e.what() << "\n";
    return 1;
  }

  if (format == "json")
    std::cout << tsm::report::render_json(run);
  else
    std::cout << tsm::report::render_text(run);
  return tsm::report::exit_code(run);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsm: exact checks for frame-defined 3-manifolds with contact structure"};
  app.require_subcommand(1);

  std::string manifest_path;
  std::string suite;
  std::string format = "text";
  bool oracle = false;
  std::uint64_t seed = 0;

  CLI::App* check = app.add_subcommand("check", "run check suites from a manifest");
  check->add_option("manifest", manifest_path, "path to a .tsm manifest")->required();
  check->add_option("--suite", suite, "suite to run (with its prerequisites)")
      ->check(CLI::IsMember(tsm::known_suites()));
  check->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--oracle", oracle, "also run the finite-difference cross-check");
  check->add_option("--seed", seed, "seed for the cross-check sample points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  return run_check(manifest_path, suite, format, oracle, seed);
}
