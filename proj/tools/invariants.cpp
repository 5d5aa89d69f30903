// invariants: batch front end.
//
//   invariants run <job.json> [--json-out <path>] [--text] [--cross-check-sha] [--max-order N]
//   invariants verify [--seed N] [--cases N]
//
// Exit status: 0 success, 2 unreadable or malformed input, 3 invalid job,
// 4 failed internal certification, 1 anything else.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torinv/errors.hpp"
#include "torinv/job.hpp"

namespace {

int emit(const torinv::JobOutput& out, const std::string& json_out, bool text)
{
  const std::string body = out.report.dump(2) + "\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return 1;
    }
    f << body;
  }
  if (text) {
    std::cout << out.text;
  } else if (json_out.empty()) {
    std::cout << body;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Invariants of algebraic tori and reductive groups from Galois lattices"};
  app.require_subcommand(1);

  std::string job_path, json_out;
  bool text = false, cross_check = false;
  std::size_t max_order = 24;
  auto* run = app.add_subcommand("run", "Run a job file");
  run->add_option("job", job_path, "Job file (JSON)")->required();
  run->add_option("--json-out", json_out, "Write the JSON report to this path");
  run->add_flag("--text", text, "Print a human-readable report instead of JSON");
  run->add_flag("--cross-check-sha", cross_check, "Recompute Sha(T) from the character lattice and compare");
  run->add_option("--max-order", max_order, "Refuse groups larger than this (0: no limit)");

  std::uint64_t seed = 1;
  std::size_t cases = 20;
  auto* verify = app.add_subcommand("verify", "Run the randomised property suites");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--cases", cases, "Cases per suite")->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    torinv::Job job;
    if (*run) {
      std::ifstream in(job_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << job_path << "\n";
        return 2;
      }
      std::stringstream ss;
      ss << in.rdbuf();
      job = torinv::parse_job(ss.str(), max_order);
      if (cross_check) job.options.cross_check_sha = true;
    } else {
      job.target = "verify";
      job.options.seed = seed;
      job.verify_cases = cases;
    }
    auto out = torinv::run_job(job);
    if (out.warnings) std::cerr << "warning: some diagnostics failed, see diagnostic_warnings\n";
    int rc = emit(out, json_out, text);
    if (rc == 0 && job.target == "verify" && !out.report["all_passed"].get<bool>()) rc = 1;
    return rc;
  } catch (const torinv::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const torinv::ValidationError& e) {
    std::cerr << "invalid job: " << e.what() << "\n";
    return 3;
  } catch (const torinv::CertificationError& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid job: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
