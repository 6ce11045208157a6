#pragma once

// Verification suites shared by the CLI and the acceptance runner.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "flowvol/graph.hpp"
#include "json.hpp"

namespace flowvol {

struct VerificationReport {
  std::string claim;
  std::string params;
  std::string lhs;
  std::string rhs;
  bool pass = false;           // lhs == rhs exactly
  bool expected_fail = false;  // a documented discrepancy, reported but not counted
  double seconds = 0;
  std::string note;

  // pass, or a documented mismatch that did not match.
  bool ok() const { return expected_fail ? !pass : pass; }
};

struct SuiteOptions {
  long max_n = -1;  // -1: the suite's default range
  std::string corpus = "loopless";
  unsigned jobs = 1;
  unsigned seed = 20170623;
  int random_graphs = 30;
};

// Suite names: thm-cry, conj-cryd, conj-cryc, thm-volD, thm-decomp,
// thm-bijection, morris, thmC, loop-range, all.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

using Check = std::function<VerificationReport()>;
std::vector<Check> suite_checks(const std::string& suite, const SuiteOptions& options);

// Runs checks on a pool of options.jobs threads; results in check order.
std::vector<VerificationReport> run_checks(const std::vector<Check>& checks, unsigned jobs);
std::vector<VerificationReport> run_suite(const std::string& suite, const SuiteOptions& options);

bool all_ok(const std::vector<VerificationReport>& reports);

nlohmann::json to_json(const VerificationReport& r, bool timing = true);
std::string reports_tsv(const std::vector<VerificationReport>& reports, bool timing = true);

// Random loopless connected graphs with an incoming negative edge at every
// v >= 2 and no edge forced to zero on F_G(2,0,...,0).
std::vector<SignedGraph> volD_corpus(int count, unsigned seed, int max_vertices = 5, int max_edges = 9);

// (0, 0, 1, ..., n-1) on n+1 vertices.
Netflow staircase_netflow(int vertex_count);

}  // namespace flowvol
