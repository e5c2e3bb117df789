#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mcforge/error.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/harness.hpp"
#include "mcforge/io.hpp"
#include "mcforge/transfer.hpp"

namespace fs = std::filesystem;
using namespace mcforge;

namespace {

struct Output {
  std::string out;     // report path; stdout when empty
  std::string golden;  // directory of stored reports
  bool timings = false;
};

// Golden files are named after the command and the input file stem.
std::string golden_name(const std::string& command, const std::string& input) {
  std::string name = command;
  if (!input.empty()) name += "-" + fs::path(input).stem().string();
  return name + ".json";
}

int emit(const harness::Report& r, const Output& o, const std::string& input) {
  std::string text = harness::to_json(r, o.timings);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(o.out, text);
  }
  if (!o.golden.empty()) {
    fs::path g = fs::path(o.golden) / golden_name(r.command, input);
    std::string stored = io::read_file(g.string());
    if (stored != text) {
      std::cerr << "golden mismatch: " << g.string() << "\n";
      return 1;
    }
    std::cerr << "golden match: " << g.string() << "\n";
  }
  if (o.timings)
    for (const auto& c : r.checks) std::cerr << c.name << ": " << c.seconds << " s\n";
  return r.outcome() == harness::Outcome::pass ? 0 : 1;
}

void output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_option("--golden", o.golden, "compare the report bit-exactly with <dir>/<command>-<input>.json")
      ->check(CLI::ExistingDirectory);
  cmd->add_flag("--timings", o.timings, "include per-check wall time (breaks byte-identical reruns)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mcforge: Maurer-Cartan simplicial sets, Goldman-Millson and Dolgushev-Rogers checks"};
  app.set_version_flag("--version", std::string(MCFORGE_TOOL_VERSION));
  app.require_subcommand(1);

  std::uint32_t prime = 7;
  int weight = 5, n_max = 2, n = 1;
  unsigned threads = 1;
  bool flip = false;
  std::string file;
  Output out;

  auto* gm = app.add_subcommand("verify-gm", "pi0 bijectivity along the tower for a weak equivalence");
  gm->add_option("file", file, "morphism document")->required()->check(CLI::ExistingFile);
  gm->add_option("--prime", prime, "characteristic for the enumeration")->check(CLI::Range(2u, 65521u));
  gm->add_option("--weight", weight, "top tower stage and cobar weight")->check(CLI::Range(2, 12));
  output_options(gm, out);

  auto* dr = app.add_subcommand("verify-dr", "pi0, 1-simplex pi0 and horn filling on both sides");
  dr->add_option("file", file, "morphism document")->required()->check(CLI::ExistingFile);
  dr->add_option("--prime", prime, "characteristic for the enumeration")->check(CLI::Range(2u, 65521u));
  dr->add_option("--nmax", n_max, "largest horn dimension")->check(CLI::Range(1, 2));
  output_options(dr, out);

  auto* st = app.add_subcommand("selftest", "run every invariant suite");
  st->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 64u));
  st->add_flag("--flip-h-sign", flip, "flip the Dupont homotopy sign without recalibrating")->group("");
  output_options(st, out);

  auto* pi0 = app.add_subcommand("pi0", "gauge classes of MC elements over F_p");
  pi0->add_option("file", file, "algebra document")->required()->check(CLI::ExistingFile);
  pi0->add_option("--prime", prime, "characteristic")->check(CLI::Range(2u, 65521u));
  output_options(pi0, out);

  auto* mcn = app.add_subcommand("build-mcn", "write the truncated cosimplicial algebra mc_n");
  mcn->add_option("--n", n, "simplex dimension")->check(CLI::Range(0, 3));
  mcn->add_option("--weight", weight, "bracket weight cutoff")->check(CLI::Range(2, 8));
  mcn->add_option("--out", out.out, "algebra document path; stdout when omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    double budget = kDefaultEnumerationBudget;
    if (*gm) {
      auto doc = io::morphism_from_json(io::read_file(file), prime);
      return emit(harness::verify_gm(doc, {prime, weight, budget}), out, file);
    }
    if (*dr) {
      auto doc = io::morphism_from_json(io::read_file(file), prime);
      return emit(harness::verify_dr(doc, {prime, n_max, budget}), out, file);
    }
    if (*st) {
      set_dupont_h_sign_flipped(flip);
      return emit(harness::selftest(threads), out, "");
    }
    if (*pi0) {
      auto g = io::algebra_from_json(io::read_file(file), prime);
      return emit(harness::pi0_report(g, budget), out, file);
    }
    if (*mcn) {
      McnAlgebra m = build_mcn(n, weight);
      std::string text = io::algebra_to_json(m.lie->as_dgla());
      if (out.out.empty()) {
        std::cout << text;
      } else {
        io::write_file(out.out, text);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "mcforge: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
