#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcforge/dgla.hpp"
#include "mcforge/io.hpp"

namespace mcforge::harness {

enum class Outcome { pass, fail, inconclusive };
std::string to_string(Outcome o);

struct Check {
  std::string name;
  Outcome outcome = Outcome::pass;
  std::string summary;
  std::vector<std::string> witnesses;  // failing items, orbit tables, exhausted budgets
  double seconds = 0;                   // wall time, serialized only on request
};

/// fail if any check fails, else inconclusive if any is, else pass.
Outcome combine(const std::vector<Check>& checks);

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Check> checks;
  std::vector<std::string> scope;  // what the verdict does not certify
  Outcome outcome() const { return combine(checks); }
};

/// Deterministic JSON with fixed key order; timings only on request.
std::string to_json(const Report& r, bool with_timings = false);
/// Conventions in force (sign choices, orders), as stored in every report.
std::vector<std::pair<std::string, std::string>> conventions();

// Suites, one per property family. Each returns a single check.
Check contraction_suite(int n_max = 3, int poly_degree = 4);
Check simplicial_suite(int n_max = 4);
Check mc0_suite(int N = 6);
Check mc1_suite(int N = 5);
Check gauge_preserves_mc_suite();
Check flow_bch_suite();
Check pi0_consistency_suite(std::uint32_t p = 5);
Check kan_suite();
Check frames_suite(int W = 4);
Check transfer_suite();
Check witt_suite();
Check char_p_guard_suite();
Check coalgebra_suite();
Check groupoid_naturality_suite();

struct GmOptions {
  std::uint32_t prime = 7;
  int weight = 5;
  double budget = kDefaultEnumerationBudget;
};
/// Weak-equivalence check on the coalgebra side, then π0 bijectivity at
/// every tower stage g/F_k, k = 2..weight.
Report verify_gm(const io::MorphismDocument& doc, const GmOptions& opt);

struct DrOptions {
  std::uint32_t prime = 7;
  int n_max = 2;
  double budget = kDefaultEnumerationBudget;
};
/// (a) π0 bijection, (b) 1-simplex π0 bijection, (c) horn filling on both
/// sides for n <= n_max.
Report verify_dr(const io::MorphismDocument& doc, const DrOptions& opt);

Report pi0_report(const DgLieAlgebra& g, double budget = kDefaultEnumerationBudget);

/// Every suite plus the GM and DR instances, checks sorted by name.
/// `threads` > 1 runs the checks in a worker pool.
Report selftest(unsigned threads = 1);

/// The same suites addressed by name (for the acceptance runner).
std::vector<std::string> selftest_check_names();
Check run_selftest_check(const std::string& name);

}  // namespace mcforge::harness
