// Runs the acceptance criteria and prints one line per criterion.
// Usage: mcforge_acceptance <path to the mcforge executable>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "mcforge/harness.hpp"
#include "mcforge/io.hpp"

using namespace mcforge;
using harness::Outcome;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> checks;  // self-test checks that must all pass
  double limit_seconds;
};

int run_cli_twice(const std::string& exe, std::string& detail) {
  std::vector<std::string> outputs;
  for (int i = 0; i < 2; ++i) {
    std::string path = "acceptance_selftest_" + std::to_string(i) + ".json";
    std::string cmd = "\"" + exe + "\" selftest --out " + path;
    int rc = std::system(cmd.c_str());
    if (rc != 0) {
      detail = "selftest run " + std::to_string(i) + " exited with status " + std::to_string(rc);
      return 1;
    }
    outputs.push_back(io::read_file(path));
    std::remove(path.c_str());
  }
  if (outputs[0] != outputs[1]) {
    detail = "reports differ";
    return 1;
  }
  detail = "two reports of " + std::to_string(outputs[0].size()) + " bytes, identical";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: mcforge_acceptance <mcforge executable>\n";
    return 2;
  }
  const std::vector<Criterion> criteria = {
      {1, "Dupont contraction identities, n <= 3, polynomial degree <= 4", {"dupont-contraction"}, 30},
      {2, "simplicial identities for forms and cochains, n <= 4", {"simplicial-identities"}, 10},
      {3, "mc_0 at weight 6: d alpha = -1/2 [alpha, alpha], d^2 = 0", {"mc0"}, 5},
      {4, "mc_1 at weight 5: gauge flow joins the endpoints, cylinder laws", {"mc1"}, 60},
      {5, "gauge flow preserves MC in the formal class-4 algebra", {"gauge-preserves-mc"}, 60},
      {6, "flow composition equals BCH, class <= 4", {"flow-bch"}, 60},
      {7, "Goldman-Millson: acyclic extensions pass over F_7, H^1 collapse fails",
       {"gm-acyclic-class3", "gm-acyclic-gauge2", "gm-h1-collapse-detected"}, 300},
      {8, "gauge pi0 equals 1-simplex pi0 over F_5", {"pi0-consistency"}, 300},
      {9, "horns of dimension <= 2 fill over a class-3 algebra over Q", {"kan-horns"}, 120},
      {10, "frame maps: w-side weak equivalence, p-side surjective, n <= 2", {"frame-maps"}, 120},
      {11, "transferred operations: A-infinity to arity 4, shuffles to arity 3", {"transfer"}, 120},
      {12, "free Lie dimensions match the Witt count", {"witt-dimensions"}, 30},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    double seconds = 0;
    std::string detail;
    for (const auto& name : c.checks) {
      harness::Check r = harness::run_selftest_check(name);
      seconds += r.seconds;
      ok = ok && r.outcome == Outcome::pass;
      detail += (detail.empty() ? "" : "; ") + name + ": " + r.summary;
      if (r.outcome != Outcome::pass && !r.witnesses.empty()) detail += " [" + r.witnesses.front() + "]";
    }
    bool in_time = seconds <= c.limit_seconds;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", seconds);
    std::cout << "criterion " << c.number << ": " << (ok && in_time ? "PASS" : "FAIL") << "  " << c.title << "  (" << detail
              << "; " << buf << " s of " << c.limit_seconds << " s)\n";
    failures += !(ok && in_time);
  }

  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = run_cli_twice(argv[1], detail) == 0;
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", seconds);
  std::cout << "criterion 13: " << (ok ? "PASS" : "FAIL") << "  repeated selftest runs are byte-identical  (" << detail
            << "; " << buf << " s)\n";
  failures += !ok;

  std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : std::string("all 13 criteria pass\n"));
  return failures ? 1 : 0;
}
