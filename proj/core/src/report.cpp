#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mcforge/budget.hpp"
#include "mcforge/coalg.hpp"
#include "mcforge/corpus.hpp"
#include "mcforge/error.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/groupoid.hpp"
#include "mcforge/harness.hpp"

#ifndef MCFORGE_VERSION
#define MCFORGE_VERSION "unknown"
#endif

namespace mcforge::harness {

using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxTableLines = 64;
constexpr std::size_t kMaxHornWitnesses = 8;

std::string vec_str(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + "]";
}

DgLieMorphism reduce(const DgLieMorphism& f, std::uint32_t p) {
  auto check = [p](std::uint32_t q, const char* side) {
    if (q != 0 && q != p)
      throw InvalidInput(std::string(side) + " is over F_" + std::to_string(q) + ", requested F_" + std::to_string(p));
  };
  check(f.source.characteristic(), "source");
  check(f.target.characteristic(), "target");
  return {f.source.in_characteristic(p), f.target.in_characteristic(p), f.matrix.in_characteristic(p)};
}

std::vector<std::size_t> orbit_sizes(const Pi0Result& r) {
  std::vector<std::size_t> sizes(r.count, 0);
  for (std::size_t o : r.orbit_of) ++sizes[o];
  return sizes;
}

// One line per orbit: representative, size, and where it goes.
std::vector<std::string> orbit_table(const std::string& prefix, const Pi0Result& a, const Pi0Result* b,
                                     const Pi0Comparison* cmp) {
  std::vector<std::string> out;
  auto sa = orbit_sizes(a);
  for (std::size_t i = 0; i < a.count; ++i) {
    if (out.size() == kMaxTableLines) {
      out.push_back(prefix + "... " + std::to_string(a.count - i) + " more orbits");
      break;
    }
    std::string line = prefix + "orbit " + std::to_string(i) + " rep " + vec_str(a.representatives[i]) + " size " +
                       std::to_string(sa[i]);
    if (b && cmp) {
      std::size_t j = cmp->image[i];
      line += " -> target orbit " + std::to_string(j) + " rep " + vec_str(b->representatives[j]);
    }
    out.push_back(line);
  }
  return out;
}

Check run_guarded(const std::string& name, const std::function<Check()>& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    return {name, Outcome::inconclusive, "budget exhausted", {e.what()}};
  } catch (const std::exception& e) {
    return {name, Outcome::fail, "error", {e.what()}};
  }
}

Check pi0_stage_check(const std::string& name, const DgLieMorphism& phi, double budget) {
  return run_guarded(name, [&] {
    Pi0Result a = pi0_bruteforce(phi.source, budget), b = pi0_bruteforce(phi.target, budget);
    Pi0Comparison cmp = compare_pi0(phi, a, b);
    Check c{name, cmp.bijective() ? Outcome::pass : Outcome::fail, "", {}};
    std::ostringstream os;
    os << "orbits " << a.count << " -> " << b.count << " (MC elements " << a.mc_count() << " -> " << b.mc_count() << "), "
       << (cmp.injective ? "injective" : "not injective") << ", " << (cmp.surjective ? "surjective" : "not surjective");
    c.summary = os.str();
    c.witnesses.push_back("orbit counts: source " + std::to_string(a.count) + ", target " + std::to_string(b.count));
    for (auto& l : orbit_table("source ", a, &b, &cmp)) c.witnesses.push_back(std::move(l));
    for (auto& l : orbit_table("target ", b, nullptr, nullptr)) c.witnesses.push_back(std::move(l));
    return c;
  });
}

Check weak_equivalence_check(const DgLieMorphism& phi, int W) {
  return run_guarded("weak-equivalence", [&] {
    WeakEquivalenceResult r = is_weak_equivalence_upto(dualize_morphism(phi), W);
    Outcome o = r.verdict == Verdict::yes ? Outcome::pass : r.verdict == Verdict::no ? Outcome::fail : Outcome::inconclusive;
    Check c{"weak-equivalence", o, "dual coalgebra map, verdict " + to_string(r.verdict) + " up to cobar weight " + std::to_string(W), r.detail};
    if (o == Outcome::inconclusive) c.witnesses.push_back("exhausted budget: cobar weight " + std::to_string(W));
    return c;
  });
}

Check morphism_check(const DgLieMorphism& phi) {
  Check c{"morphism", Outcome::pass, "", phi.check()};
  c.outcome = c.witnesses.empty() ? Outcome::pass : Outcome::fail;
  c.summary = c.witnesses.empty() ? "degree-preserving dg Lie map" : "not a dg Lie morphism";
  return c;
}

int tower_top(const DgLieMorphism& phi, int weight) {
  return std::max({weight, nilpotency_degree(phi.source), nilpotency_degree(phi.target), 2});
}

// Horns: every n = 1 horn at the given points; for n = 2 the three horn
// shapes built from gauge 1-simplices x -> e^l x -> e^m e^l x.
struct HornCase {
  int n, k;
  std::map<int, MCSimplex> faces;
  std::string label;
};

std::vector<Vec> small_gauges(const DgLieAlgebra& g) {
  auto idx = g.indices_of_degree(0);
  std::vector<Vec> out{g.zero()};
  for (std::size_t i : idx) {
    out.push_back(g.basis_vector(i));
    out.push_back(scaled(g.basis_vector(i), Scalar(-1)));
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) out.push_back(add(g.basis_vector(idx[a]), g.basis_vector(idx[b])));
  for (auto& v : out) v = in_characteristic(v, g.characteristic());
  return out;
}

std::vector<HornCase> enumerate_horns(const DgLieAlgebra& g, const std::vector<Vec>& points, int n_max) {
  std::vector<HornCase> out;
  auto gauges = small_gauges(g);
  for (const auto& x : points) {
    MCSimplex p = constant_simplex(g, x);
    out.push_back({1, 0, {{1, p}}, "L^1_0 at " + vec_str(x)});
    out.push_back({1, 1, {{0, p}}, "L^1_1 at " + vec_str(x)});
    if (n_max < 2) continue;
    for (const auto& l : gauges)
      for (const auto& m : gauges) {
        std::string tag = " at " + vec_str(x) + " l=" + vec_str(l) + " m=" + vec_str(m);
        MCSimplex e01 = gauge_simplex(g, l, x);
        Vec x1 = gauge_flow(g, l, x);
        out.push_back({2, 1, {{0, gauge_simplex(g, m, x1)}, {2, e01}}, "L^2_1" + tag});
        out.push_back({2, 0, {{1, gauge_simplex(g, m, x)}, {2, e01}}, "L^2_0" + tag});
        Vec back = gauge_flow(g, scaled(m, Scalar(-1)), x1);
        out.push_back({2, 2, {{0, gauge_simplex(g, m, back)}, {1, e01}}, "L^2_2" + tag});
      }
  }
  return out;
}

bool fills(const DgLieAlgebra& g, const HornCase& h) {
  HornFill f = horn_fill(g, h.n, h.k, h.faces);
  if (!is_mc_simplex(g, f.simplex)) return false;
  for (const auto& [j, y] : h.faces)
    if (face(f.simplex, j) != y) return false;
  return true;
}

Check horn_check(const std::string& name, const DgLieAlgebra& g, const std::vector<HornCase>& horns) {
  return run_guarded(name, [&] {
    Deadline deadline = Deadline::from_env();
    Check c{name, Outcome::pass, "", {}};
    std::size_t ok = 0;
    for (const auto& h : horns) {
      deadline.check(name);
      if (fills(g, h)) {
        ++ok;
      } else if (c.witnesses.size() < kMaxHornWitnesses) {
        c.witnesses.push_back("not filled: " + h.label);
      }
    }
    if (ok != horns.size()) c.outcome = Outcome::fail;
    c.summary = std::to_string(ok) + "/" + std::to_string(horns.size()) + " horns filled, faces exact";
    return c;
  });
}

std::vector<std::string> dr_scope() {
  return {"instance-level surrogate: pi0, 1-simplex pi0 and enumerated horns only",
          "the full homotopy equivalence of the simplicial sets of MC elements is NOT certified"};
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

Outcome combine(const std::vector<Check>& checks) {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.outcome == Outcome::fail) return Outcome::fail;
    inconclusive = inconclusive || c.outcome == Outcome::inconclusive;
  }
  return inconclusive ? Outcome::inconclusive : Outcome::pass;
}

std::vector<std::pair<std::string, std::string>> conventions() {
  return {{"scalars", "exact GMP rationals, or residues mod p"},
          {"mc-equation", "dx + 1/2 [x, x] = 0"},
          {"gauge-flow", "time-1 flow of x' = [l, x] - dl"},
          {"tensor-signs", "d(x a) = dx a + (-1)^|x| x da; [x a, y b] = (-1)^(|a||y|) [x, y] ab"},
          {"dupont-h-sign", std::to_string(dupont_h_sign())},
          {"contraction", "dh + hd = ip - id"},
          {"simplex-coordinates", "t_0 = 1 - t_1 - ... - t_n; face d_j sets t_j = 0"},
          {"cochain-basis", "e_I ordered by |I|, then lexicographically"},
          {"mcn-pairing", "x_I = (-1)^(deg w_I) (s w_I)^dual"},
          {"coalgebra", "structure constants are the plain transpose of the dual Lie algebra"},
          {"free-lie-basis", "Lyndon words with standard bracketing, squares of odd Lyndon elements"},
          {"orbit-representatives", "first MC element in enumeration order"}};
}

std::string to_json(const Report& r, bool with_timings) {
  json doc;
  doc["tool"] = "mcforge";
  doc["version"] = MCFORGE_VERSION;
  doc["command"] = r.command;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  doc["parameters"] = params;
  json conv = json::object();
  for (const auto& [k, v] : conventions()) conv[k] = v;
  doc["conventions"] = conv;
  doc["verdict"] = to_string(r.outcome());
  json checks = json::array();
  for (const auto& c : r.checks) {
    json j;
    j["name"] = c.name;
    j["verdict"] = to_string(c.outcome);
    j["summary"] = c.summary;
    j["witnesses"] = c.witnesses;
    if (with_timings) j["seconds"] = c.seconds;
    checks.push_back(j);
  }
  doc["checks"] = checks;
  doc["scope"] = r.scope;
  return doc.dump(2) + "\n";
}

Report verify_gm(const io::MorphismDocument& doc, const GmOptions& opt) {
  Report r;
  r.command = "verify-gm";
  r.parameters = {{"kind", doc.kind}, {"prime", std::to_string(opt.prime)}, {"weight", std::to_string(opt.weight)}};
  r.scope = {"pi0 bijectivity is checked at the tower stages g/F_k, k = 2.." + std::to_string(opt.weight) + " only"};
  DgLieMorphism phi = reduce(doc.lie, opt.prime);
  r.checks.push_back(morphism_check(phi));
  if (r.checks.back().outcome != Outcome::pass) return r;
  r.checks.push_back(weak_equivalence_check(phi, opt.weight));

  Check tower = run_guarded("tower", [&] {
    int top = tower_top(phi, opt.weight);
    Tower tg = canonical_tower(phi.source, top), th = canonical_tower(phi.target, top);
    auto stages = tower_morphism(phi, tg, th);
    for (int k = 2; k <= opt.weight; ++k)
      r.checks.push_back(pi0_stage_check("pi0-stage-" + std::to_string(k), stages[static_cast<std::size_t>(k - 2)], opt.budget));
    return Check{"tower", Outcome::pass, "stages 2.." + std::to_string(opt.weight) + " of a tower of length " + std::to_string(top - 1), {}};
  });
  r.checks.push_back(tower);
  for (const auto& c : r.checks)
    if (c.name.rfind("pi0-stage-", 0) == 0 && c.outcome == Outcome::fail) {
      r.scope.push_back("first non-bijective stage: " + c.name.substr(10));
      break;
    }
  return r;
}

Report verify_dr(const io::MorphismDocument& doc, const DrOptions& opt) {
  if (opt.n_max < 1 || opt.n_max > 2) throw InvalidInput("verify-dr supports n_max in 1..2");
  Report r;
  r.command = "verify-dr";
  r.parameters = {{"kind", doc.kind}, {"n_max", std::to_string(opt.n_max)}, {"prime", std::to_string(opt.prime)}};
  r.scope = dr_scope();
  DgLieMorphism phi = reduce(doc.lie, opt.prime);
  r.checks.push_back(morphism_check(phi));
  if (r.checks.back().outcome != Outcome::pass) return r;

  r.checks.push_back(pi0_stage_check("a-pi0", phi, opt.budget));

  r.checks.push_back(run_guarded("b-one-simplex-pi0", [&] {
    OneSimplexPi0 a = pi0_one_simplices(phi.source, 1, opt.budget), b = pi0_one_simplices(phi.target, 1, opt.budget);
    Pi0Comparison cmp = compare_pi0(phi, a.classes, b.classes);
    bool ok = a.classes.count == b.classes.count && cmp.bijective();
    Check c{"b-one-simplex-pi0", ok ? Outcome::pass : Outcome::fail, "", {}};
    c.summary = "classes " + std::to_string(a.classes.count) + " -> " + std::to_string(b.classes.count) + ", induced map " +
                (cmp.bijective() ? "bijective" : "not bijective");
    c.witnesses.push_back("1-simplices verified: source " + std::to_string(a.simplices) + ", target " +
                          std::to_string(b.simplices));
    for (auto& l : orbit_table("source ", a.classes, &b.classes, &cmp)) c.witnesses.push_back(std::move(l));
    return c;
  }));

  std::vector<HornCase> src_horns, dst_horns, image_horns;
  Check enumerate = run_guarded("c-horn-enumeration", [&] {
    Pi0Result a = pi0_bruteforce(phi.source, opt.budget), b = pi0_bruteforce(phi.target, opt.budget);
    std::vector<Vec> src_points = a.representatives, dst_points = b.representatives;
    src_horns = enumerate_horns(phi.source, src_points, opt.n_max);
    dst_horns = enumerate_horns(phi.target, dst_points, opt.n_max);
    for (const auto& h : src_horns) {
      HornCase img{h.n, h.k, {}, "image of " + h.label};
      for (const auto& [j, y] : h.faces) img.faces.emplace(j, apply_morphism(phi, y));
      image_horns.push_back(std::move(img));
    }
    return Check{"c-horn-enumeration", Outcome::pass,
                 std::to_string(src_horns.size()) + " source, " + std::to_string(dst_horns.size()) + " target horns",
                 {"points: pi0 representatives; gauges: 0, +-e_i, e_i + e_j over the degree-0 basis"}};
  });
  r.checks.push_back(enumerate);
  if (enumerate.outcome == Outcome::pass) {
    r.checks.push_back(horn_check("c-horns-source", phi.source, src_horns));
    r.checks.push_back(horn_check("c-horns-target", phi.target, dst_horns));
    r.checks.push_back(horn_check("c-horns-image", phi.target, image_horns));
  }
  return r;
}

Report pi0_report(const DgLieAlgebra& g, double budget) {
  Report r;
  r.command = "pi0";
  r.parameters = {{"prime", std::to_string(g.characteristic())}, {"dim", std::to_string(g.dim())}};
  r.scope = {"1-simplices x(t) + z(t) dt with z of polynomial degree <= 1, closed transitively"};
  Pi0Result gauge;
  r.checks.push_back(run_guarded("pi0-gauge", [&] {
    gauge = pi0_bruteforce(g, budget);
    Check c{"pi0-gauge", Outcome::pass,
            std::to_string(gauge.count) + " gauge classes of " + std::to_string(gauge.mc_count()) + " MC elements", {}};
    c.witnesses = orbit_table("", gauge, nullptr, nullptr);
    return c;
  }));
  if (r.checks.back().outcome != Outcome::pass) return r;
  r.checks.push_back(run_guarded("pi0-one-simplices", [&] {
    OneSimplexPi0 s = pi0_one_simplices(g, 1, budget);
    bool same = s.classes.count == gauge.count;
    for (std::size_t a = 0; a < gauge.mc_count() && same; ++a)
      for (std::size_t b = a + 1; b < gauge.mc_count() && same; ++b)
        same = (gauge.orbit_of[a] == gauge.orbit_of[b]) == (s.classes.orbit_of[a] == s.classes.orbit_of[b]);
    Check c{"pi0-one-simplices", same ? Outcome::pass : Outcome::fail,
            std::to_string(s.classes.count) + " classes from " + std::to_string(s.simplices) + " 1-simplices", {}};
    if (!same) c.witnesses.push_back("partitions differ: gauge " + std::to_string(gauge.count) + ", 1-simplex " +
                                     std::to_string(s.classes.count));
    return c;
  }));
  return r;
}

namespace {

io::MorphismDocument lie_doc(DgLieMorphism phi) { return {"lie", std::move(phi), std::nullopt}; }

Check from_report(const std::string& name, const Report& r, bool expect_pass) {
  Outcome o = r.outcome();
  Check c{name, Outcome::pass, "", {}};
  if (expect_pass) {
    c.outcome = o;
    c.summary = "verdict " + to_string(o);
  } else {
    // The non-example must be caught with an orbit-count witness.
    bool witnessed = false;
    for (const auto& ch : r.checks)
      if (ch.outcome == Outcome::fail && ch.name.rfind("pi0-stage-", 0) == 0)
        for (const auto& w : ch.witnesses) witnessed = witnessed || w.rfind("orbit counts", 0) == 0;
    c.outcome = o == Outcome::fail && witnessed ? Outcome::pass : Outcome::fail;
    c.summary = "verdict " + to_string(o) + (witnessed ? ", orbit-count witness present" : ", no orbit-count witness");
  }
  for (const auto& ch : r.checks)
    c.witnesses.push_back(ch.name + ": " + to_string(ch.outcome) + " (" + ch.summary + ")");
  return c;
}

const std::map<std::string, std::function<Check()>>& registry() {
  static const std::map<std::string, std::function<Check()>> checks{
      {"char-p-guard", [] { return char_p_guard_suite(); }},
      {"coalgebra", [] { return coalgebra_suite(); }},
      {"dr-acyclic-gauge2", [] {
         return from_report("dr-acyclic-gauge2", verify_dr(lie_doc(corpus::acyclic_extension(corpus::gauge2(7))), {}), true);
       }},
      {"dupont-contraction", [] { return contraction_suite(); }},
      {"flow-bch", [] { return flow_bch_suite(); }},
      {"frame-maps", [] { return frames_suite(); }},
      {"gauge-preserves-mc", [] { return gauge_preserves_mc_suite(); }},
      {"gm-acyclic-class3", [] {
         return from_report("gm-acyclic-class3", verify_gm(lie_doc(corpus::acyclic_extension(corpus::class3(7))), {7, 4}), true);
       }},
      {"gm-acyclic-gauge2", [] {
         return from_report("gm-acyclic-gauge2", verify_gm(lie_doc(corpus::acyclic_extension(corpus::gauge2(7))), {7, 4}), true);
       }},
      {"gm-h1-collapse-detected", [] {
         return from_report("gm-h1-collapse-detected", verify_gm(lie_doc(corpus::h1_collapse(7)), {7, 4}), false);
       }},
      {"groupoid-naturality", [] { return groupoid_naturality_suite(); }},
      {"kan-horns", [] { return kan_suite(); }},
      {"mc0", [] { return mc0_suite(); }},
      {"mc1", [] { return mc1_suite(); }},
      {"pi0-consistency", [] { return pi0_consistency_suite(); }},
      {"simplicial-identities", [] { return simplicial_suite(); }},
      {"transfer", [] { return transfer_suite(); }},
      {"witt-dimensions", [] { return witt_suite(); }},
  };
  return checks;
}

}  // namespace

std::vector<std::string> selftest_check_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : registry()) out.push_back(name);
  return out;
}

Check run_selftest_check(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw InvalidInput("unknown self-test check " + name);
  auto start = std::chrono::steady_clock::now();
  Check c = run_guarded(name, it->second);
  c.name = name;
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

Report selftest(unsigned threads) {
  Report r;
  r.command = "selftest";
  r.scope = {"instance-level surrogates for the homotopy-equivalence statements; see each check",
             "the full homotopy equivalence of the simplicial sets of MC elements is NOT certified"};
  auto names = selftest_check_names();
  if (threads <= 1) {
    for (const auto& n : names) r.checks.push_back(run_selftest_check(n));
  } else {
    std::vector<std::future<Check>> pending;
    std::size_t next = 0;
    std::vector<Check> done;
    while (next < names.size() || !pending.empty()) {
      while (next < names.size() && pending.size() < threads)
        pending.push_back(std::async(std::launch::async, run_selftest_check, names[next++]));
      done.push_back(pending.front().get());
      pending.erase(pending.begin());
    }
    r.checks = std::move(done);
  }
  std::sort(r.checks.begin(), r.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return r;
}

}  // namespace mcforge::harness
