#include <functional>
#include <sstream>

#include "mcforge/coalg.hpp"
#include "mcforge/corpus.hpp"
#include "mcforge/error.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/free_lie.hpp"
#include "mcforge/groupoid.hpp"
#include "mcforge/harness.hpp"
#include "mcforge/transfer.hpp"
#include "mcforge/witt_oracle.hpp"

namespace mcforge::harness {

namespace {

constexpr std::size_t kMaxWitnesses = 8;

// Collects failures; the summary reports how many items were examined.
struct Tally {
  explicit Tally(std::string n) : name(std::move(n)) {}
  std::string name;
  std::size_t examined = 0, failed = 0;
  std::vector<std::string> witnesses;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++examined;
    if (ok) return;
    ++failed;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(what());
  }
  Check done(const std::string& unit = "cases pass") const {
    Check c{name, failed ? Outcome::fail : Outcome::pass, "", witnesses};
    c.summary = std::to_string(examined - failed) + "/" + std::to_string(examined) + " " + unit;
    return c;
  }
};

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
  os << "]";
  return os.str();
}

std::string mono_str(int n, const FormMonomial& m) { return "n=" + std::to_string(n) + " " + PolyForm::monomial(n, m).str(); }

Check guarded(const std::string& name, const std::function<Check()>& body) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    return {name, Outcome::inconclusive, "budget exhausted", {e.what()}};
  } catch (const std::exception& e) {
    return {name, Outcome::fail, "error", {e.what()}};
  }
}

}  // namespace

Check contraction_suite(int n_max, int poly_degree) {
  return guarded("dupont-contraction", [&] {
    Tally t{"dupont-contraction"};
    for (int n = 0; n <= n_max; ++n) {
      std::size_t dim = cochain_basis(n).size();
      for (std::size_t k = 0; k < dim; ++k) {
        Vec e = unit(dim, k);
        PolyForm ie = dupont_i(n, e);
        t.expect(dupont_p(ie) == e, [&] { return "p i != id on e_" + std::to_string(k) + ", n=" + std::to_string(n); });
        t.expect(dupont_h(ie).is_zero(), [&] { return "h i != 0 on e_" + std::to_string(k) + ", n=" + std::to_string(n); });
      }
      for (const auto& m : monomials_up_to(n, poly_degree)) {
        PolyForm a = PolyForm::monomial(n, m);
        PolyForm ha = dupont_h(a);
        t.expect(is_zero(dupont_p(ha)), [&] { return "p h != 0 on " + mono_str(n, m); });
        t.expect(dupont_h(ha).is_zero(), [&] { return "h h != 0 on " + mono_str(n, m); });
        t.expect(ha.d() + dupont_h(a.d()) == dupont_i(n, dupont_p(a)) - a,
                 [&] { return "dh + hd != ip - id on " + mono_str(n, m); });
      }
    }
    return t.done("identities hold");
  });
}

Check simplicial_suite(int n_max) {
  return guarded("simplicial-identities", [&] {
    Tally t{"simplicial-identities"};
    auto label = [](const char* which, int n, int i, int j) {
      return std::string(which) + " n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
    };
    // forms, on monomials of polynomial degree <= 2
    for (int n = 0; n <= n_max; ++n)
      for (const auto& m : monomials_up_to(n, 2)) {
        PolyForm x = PolyForm::monomial(n, m);
        for (int i = 0; i <= n; ++i)
          for (int j = i + 1; j <= n && n >= 2; ++j)
            t.expect(face(face(x, j), i) == face(face(x, i), j - 1), [&] { return label("forms d_i d_j", n, i, j); });
        if (n + 1 > n_max) continue;
        for (int j = 0; j <= n; ++j) {
          PolyForm s = degeneracy(x, j);
          t.expect(face(s, j) == x && face(s, j + 1) == x, [&] { return label("forms d_j s_j", n, j, j); });
          for (int i = 0; i < j; ++i)
            t.expect(face(s, i) == degeneracy(face(x, i), j - 1), [&] { return label("forms d_i s_j (i<j)", n, i, j); });
          for (int i = j + 2; i <= n + 1; ++i)
            t.expect(face(s, i) == degeneracy(face(x, i - 1), j), [&] { return label("forms d_i s_j (i>j+1)", n, i, j); });
          if (n + 2 > n_max) continue;
          for (int i = 0; i <= j; ++i)
            t.expect(degeneracy(degeneracy(x, j), i) == degeneracy(degeneracy(x, i), j + 1),
                     [&] { return label("forms s_i s_j", n, i, j); });
        }
      }
    // cochains, as matrices
    auto F = [](int n, int j) { return cochain_face_matrix(n, j); };
    auto S = [](int n, int j) { return cochain_degeneracy_matrix(n, j); };
    for (int n = 0; n <= n_max; ++n) {
      for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n && n >= 2; ++j)
          t.expect(F(n - 1, i) * F(n, j) == F(n - 1, j - 1) * F(n, i), [&] { return label("C d_i d_j", n, i, j); });
      if (n + 1 > n_max) continue;
      for (int j = 0; j <= n; ++j) {
        t.expect(F(n + 1, j) * S(n, j) == Matrix::identity(cochain_basis(n).size()) &&
                     F(n + 1, j + 1) * S(n, j) == Matrix::identity(cochain_basis(n).size()),
                 [&] { return label("C d_j s_j", n, j, j); });
        for (int i = 0; i < j; ++i)
          t.expect(F(n + 1, i) * S(n, j) == S(n - 1, j - 1) * F(n, i), [&] { return label("C d_i s_j (i<j)", n, i, j); });
        for (int i = j + 2; i <= n + 1; ++i)
          t.expect(F(n + 1, i) * S(n, j) == S(n - 1, j) * F(n, i - 1), [&] { return label("C d_i s_j (i>j+1)", n, i, j); });
        if (n + 2 > n_max) continue;
        for (int i = 0; i <= j; ++i)
          t.expect(S(n + 1, i) * S(n, j) == S(n + 1, j + 1) * S(n, i), [&] { return label("C s_i s_j", n, i, j); });
      }
    }
    return t.done("identities hold");
  });
}

Check mc0_suite(int N) {
  return guarded("mc0", [&] {
    Tally t{"mc0"};
    McnAlgebra m = build_mcn(0, N);
    const auto& L = *m.lie;
    Vec a = L.generator(0);
    t.expect(L.generators().size() == 1 && L.generators()[0].degree == 1, [] { return "mc_0 is not free on one degree-1 generator"; });
    t.expect(L.d(a) == scaled(L.bracket(a, a), Scalar(-1, 2)), [&] { return "d alpha = " + vec_str(L.d(a)); });
    for (const auto& v : L.check_d_squared()) t.expect(false, [&] { return v; });
    t.expect(mcn_curvature(m).empty(), [] { return "universal element is not MC"; });
    return t.done("properties hold");
  });
}

Check mc1_suite(int N) {
  return guarded("mc1", [&] {
    Tally t{"mc1"};
    McnAlgebra m = build_mcn(1, N);
    const auto& L = *m.lie;
    for (int k = 2; k <= N; ++k) {
      DgLieAlgebra g = L.quotient_stage(k);
      Vec b0 = g.basis_vector(m.generator_of(0b01)), b1 = g.basis_vector(m.generator_of(0b10));
      Vec lam = g.basis_vector(m.generator_of(0b11));
      t.expect(is_mc(g, b0) && is_mc(g, b1), [&] { return "endpoints not MC at stage " + std::to_string(k); });
      t.expect(gauge_flow(g, lam, b0) == b1, [&] { return "gauge_flow(lambda, beta0) != beta1 at stage " + std::to_string(k); });
    }
    CylinderMaps c = cylinder_maps(N);
    t.expect(c.i.check().empty() && c.t.check().empty(), [] { return "cylinder maps are not dg maps"; });
    Vec alpha = c.mc0.lie->generator(0);
    for (int j = 0; j < 2; ++j) {
      LieTruncationMap leg{c.mc0.lie, c.mc0_pair.lie, {c.mc0_pair.lie->generator(static_cast<std::size_t>(j))}};
      t.expect(compose(c.t, compose(c.i, leg)).images == std::vector<Vec>{alpha}, [&] { return "t i_" + std::to_string(j) + " != id"; });
    }
    t.expect(is_zero(c.t.apply(c.mc1.lie->generator(c.mc1.generator_of(0b11)))), [] { return "t(lambda) != 0"; });
    return t.done("properties hold");
  });
}

Check gauge_preserves_mc_suite() {
  return guarded("gauge-preserves-mc", [&] {
    Tally t{"gauge-preserves-mc"};
    // Free class-4 algebra on x (degree 1), lambda, and its differential;
    // d x = -1/2 [x, x] imposes the MC constraint.
    FreeLieTruncation L({{"x", 1}, {"lambda", 0}, {"dlambda", 1}}, 5);
    Vec x = L.generator(0), lam = L.generator(1), dl = L.generator(2);
    L.set_differential({scaled(L.bracket(x, x), Scalar(-1, 2)), dl, L.zero()});
    t.expect(L.check_d_squared().empty(), [] { return "d^2 != 0 on the formal algebra"; });
    DgLieAlgebra g = L.as_dgla();
    t.expect(is_mc(g, x), [] { return "x0 is not MC"; });
    Vec y = gauge_flow(g, lam, x);
    t.expect(is_zero(mc_residual(g, y)), [&] { return "mc_residual(gauge_flow(lambda, x0)) = " + vec_str(mc_residual(g, y)); });
    Vec y2 = gauge_flow(g, scaled(lam, Scalar(-3, 2)), x);
    t.expect(is_zero(mc_residual(g, y2)), [] { return "mc_residual nonzero for -3/2 lambda"; });
    return t.done("properties hold");
  });
}

Check flow_bch_suite() {
  return guarded("flow-bch", [&] {
    Tally t{"flow-bch"};
    FreeLieTruncation L({{"x", 1}, {"u", 0}, {"v", 0}, {"du", 1}, {"dv", 1}}, 5);
    Vec x = L.generator(0), u = L.generator(1), v = L.generator(2);
    L.set_differential({scaled(L.bracket(x, x), Scalar(-1, 2)), L.generator(3), L.generator(4), L.zero(), L.zero()});
    DgLieAlgebra g = L.as_dgla();
    for (const auto& [a, b] : std::vector<std::pair<Vec, Vec>>{{u, v}, {v, u}, {scaled(u, Scalar(2)), scaled(v, Scalar(-1, 3))}}) {
      Vec lhs = gauge_flow(g, a, gauge_flow(g, b, x));
      Vec rhs = gauge_flow(g, bch(g, a, b), x);
      t.expect(lhs == rhs, [] { return "gauge_flow(u, gauge_flow(v, x)) != gauge_flow(bch(u, v), x)"; });
    }
    // class <= 3 instance from the corpus as a second family
    DgLieAlgebra c3 = corpus::class3();
    Vec a = add(c3.basis_vector(0), scaled(c3.basis_vector(1), Scalar(2))), b = scaled(c3.basis_vector(0), Scalar(-1, 2));
    Vec x0 = add(c3.basis_vector(2), c3.basis_vector(4));
    t.expect(gauge_flow(c3, a, gauge_flow(c3, b, x0)) == gauge_flow(c3, bch(c3, a, b), x0), [] { return "class3 instance"; });
    return t.done("compositions hold");
  });
}

Check pi0_consistency_suite(std::uint32_t p) {
  return guarded("pi0-consistency", [&] {
    Tally t{"pi0-consistency"};
    std::vector<std::pair<std::string, DgLieAlgebra>> algebras{
        {"abelian(0,1,1)", corpus::abelian({0, 1, 1}, p)},
        {"abelian-with-d", DgLieAlgebra({{"u", 0}, {"v", 1}, {"w", 1}},
                                        {Vec{Scalar(0), Scalar(1), Scalar(0)}, zeros(3), zeros(3)}, {}, p)},
        {"gauge2", corpus::gauge2(p)},
        {"class3", corpus::class3(p)},
        {"heisenberg", corpus::heisenberg(p)}};
    std::vector<std::string> counts;
    for (const auto& [name, g] : algebras) {
      Pi0Result gauge = pi0_bruteforce(g);
      OneSimplexPi0 simp = pi0_one_simplices(g);
      bool same = gauge.count == simp.classes.count;
      for (std::size_t s = 0; s < gauge.mc_count() && same; ++s)
        for (std::size_t r = 0; r < gauge.mc_count() && same; ++r)
          same = (gauge.orbit_of[s] == gauge.orbit_of[r]) == (simp.classes.orbit_of[s] == simp.classes.orbit_of[r]);
      t.expect(same, [&, name = name] {
        return name + ": gauge classes " + std::to_string(gauge.count) + ", 1-simplex classes " + std::to_string(simp.classes.count);
      });
      counts.push_back(name + "=" + std::to_string(gauge.count));
    }
    Check c = t.done("algebras agree");
    for (const auto& s : counts) c.summary += ", " + s;
    return c;
  });
}

Check kan_suite() {
  return guarded("kan-horns", [&] {
    Tally t{"kan-horns"};
    DgLieAlgebra g = corpus::class3();
    std::vector<Vec> points, gauges;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int e = -1; e <= 1; ++e) points.push_back(Vec{0, 0, a, b, e});
    for (int l = -1; l <= 1; ++l)
      for (int m = -1; m <= 1; ++m) gauges.push_back(Vec{l, m, 0, 0, 0});

    auto fill = [&](int n, int k, const std::map<int, MCSimplex>& horn) {
      HornFill f = horn_fill(g, n, k, horn);
      bool ok = is_mc_simplex(g, f.simplex);
      for (const auto& [j, y] : horn) ok = ok && face(f.simplex, j) == y;
      t.expect(ok, [&] { return "horn n=" + std::to_string(n) + " k=" + std::to_string(k) + " not filled"; });
    };
    for (const auto& x : points) {
      MCSimplex p = constant_simplex(g, x);
      fill(1, 0, {{1, p}});
      fill(1, 1, {{0, p}});
      for (const auto& l : gauges)
        for (const auto& m : gauges) {
          MCSimplex e01 = gauge_simplex(g, l, x);
          Vec x1 = gauge_flow(g, l, x);
          fill(2, 1, {{0, gauge_simplex(g, m, x1)}, {2, e01}});
          fill(2, 0, {{1, gauge_simplex(g, m, x)}, {2, e01}});
          // Λ²₂: edges 02 and 12 ending at the same point
          Vec x2 = gauge_flow(g, l, x);
          fill(2, 2, {{0, gauge_simplex(g, m, gauge_flow(g, scaled(m, Scalar(-1)), x2))}, {1, e01}});
        }
    }
    return t.done("horns filled");
  });
}

Check frames_suite(int W) {
  return guarded("frame-maps", [&] {
    Tally t{"frame-maps"};
    for (int n = 0; n <= 2; ++n) {
      FrameMaps f = frame_maps(n, W);
      for (int k = 2; k <= W; ++k)
        t.expect(is_fibration_surrogate(dualize_morphism(f.p.stage(k))),
                 [&] { return "p-side dual not surjective, n=" + std::to_string(n) + " stage " + std::to_string(k); });
      WeakEquivalenceResult r = is_weak_equivalence_upto(dualize_morphism(f.w.stage(W)), W);
      t.expect(r.verdict == Verdict::yes, [&] { return "w-side verdict " + to_string(r.verdict) + " for n=" + std::to_string(n); });
    }
    return t.done("frame checks hold");
  });
}

Check transfer_suite() {
  return guarded("transfer", [&] {
    Tally t{"transfer"};
    for (int n = 0; n <= 2; ++n) {
      TransferredOps ops(n, 4);
      auto a = ops.check_ainfty(4), sh = ops.check_shuffles(3);
      t.expect(a.empty() && sh.empty(), [&] {
        return "n=" + std::to_string(n) + ": " + std::to_string(a.size()) + " A-infinity and " + std::to_string(sh.size()) +
               " shuffle violations, first " + (a.empty() ? sh.front() : a.front());
      });
    }
    return t.done("simplices clean");
  });
}

Check witt_suite() {
  return guarded("witt-dimensions", [&] {
    Tally t{"witt-dimensions"};
    const std::vector<std::vector<int>> cases = {{0}, {0, 0}, {0, 0, 0}, {1}, {0, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
    for (const auto& degs : cases) {
      std::vector<Generator> gens;
      for (std::size_t i = 0; i < degs.size(); ++i) gens.push_back({"g" + std::to_string(i), degs[i]});
      FreeLieTruncation L(gens, 7);
      std::map<std::pair<int, int>, long long> dims;
      for (const auto& b : L.basis()) ++dims[{b.weight, b.degree}];
      t.expect(dims == oracle::free_lie_dims(degs, 6), [&] {
        std::string s = "generator degrees";
        for (int d : degs) s += " " + std::to_string(d);
        return s;
      });
    }
    return t.done("generator sets match");
  });
}

Check char_p_guard_suite() {
  Check c{"char-p-guard", Outcome::fail, "", {}};
  DgLieAlgebra g = free_nilpotent({{"x", 0}, {"y", 1}}, 4).in_characteristic(3);
  try {
    pi0_bruteforce(g);
    c.witnesses.push_back("p = 3 accepted on a class-4 algebra");
  } catch (const ArithmeticError& e) {
    c.outcome = Outcome::pass;
    c.summary = std::string("rejected: ") + e.what();
  }
  return c;
}

Check coalgebra_suite() {
  return guarded("coalgebra", [&] {
    Tally t{"coalgebra"};
    for (const auto& g : {corpus::heisenberg(), corpus::gauge2(), corpus::class3()}) {
      LieCoalgebra c = dualize_alg(g);
      t.expect(check_coalgebra_axioms(c).empty(), [] { return "dual violates the coalgebra axioms"; });
      DgLieAlgebra back = dualize(c);
      auto be = back.bracket_entries(), ge = g.bracket_entries();
      bool same = be.size() == ge.size();
      for (std::size_t i = 0; same && i < be.size(); ++i)
        same = be[i].i == ge[i].i && be[i].j == ge[i].j && be[i].coeffs == ge[i].coeffs;
      t.expect(same, [] { return "double dual differs"; });
      Filtration f = coradical_filtration(c);
      t.expect(check_coalgebra_filtration(c, f).empty(), [] { return "coradical filtration axioms"; });
      CdgaTruncation cobar(c, 3);
      for (int w = 1; w <= 3; ++w) t.expect(cobar.piece(w).space().total_dim() > 0, [] { return "empty cobar piece"; });
      t.expect(is_weak_equivalence_upto(dualize_morphism(identity_morphism(g)), 3).verdict == Verdict::yes,
               [] { return "identity is not a weak equivalence"; });
    }
    return t.done("properties hold");
  });
}

Check groupoid_naturality_suite() {
  return guarded("groupoid-naturality", [&] {
    Tally t{"groupoid-naturality"};
    DgLieAlgebra g = corpus::class3();
    DgLieMorphism psi = corpus::acyclic_extension(g);
    Vec x0 = g.basis_vector(2), l = add(g.basis_vector(0), g.basis_vector(1));
    MCSimplex x = gauge_simplex(g, l, x0);
    MCSimplex tri = horn_fill(g, 2, 1, {{0, gauge_simplex(g, l, gauge_flow(g, l, x0))}, {2, x}}).simplex;
    for (const MCSimplex& s : {x, tri}) {
      MCSimplex y = apply_morphism(psi, s);
      t.expect(is_mc_simplex(psi.target, y), [] { return "image not MC"; });
      for (int j = 0; j <= s.n; ++j) {
        t.expect(apply_morphism(psi, face(s, j)) == face(y, j), [] { return "faces"; });
        t.expect(apply_morphism(psi, degeneracy(s, j)) == degeneracy(y, j), [] { return "degeneracies"; });
        t.expect(is_mc_simplex(g, degeneracy(s, j)), [] { return "degeneracy not MC"; });
      }
    }
    McnAlgebra m = build_mcn(1, 4);
    std::vector<Vec> f{x0, gauge_flow(g, l, x0), l}, pf;
    for (const auto& v : f) pf.push_back(psi.apply(v));
    t.expect(inclusion_to_mcn(psi.target, m, pf) == apply_morphism(psi, inclusion_to_mcn(g, m, f)),
             [] { return "inclusion_to_mcn is not natural"; });
    t.expect(inclusion_to_mcn(g, m, f) == x, [] { return "inclusion of gauge data != gauge 1-simplex"; });
    return t.done("properties hold");
  });
}

}  // namespace mcforge::harness
