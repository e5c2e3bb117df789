#include "doctest.h"

#include <random>

#include "mcforge/corpus.hpp"
#include "mcforge/dgla.hpp"
#include "mcforge/error.hpp"

using namespace mcforge;

namespace {

Vec V(std::initializer_list<long long> xs) {
  Vec v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// λ, ν, w in degree 0; a, b in degree 1; dν = a, dw = b, [λ,ν] = w, [λ,a] = b.
DgLieAlgebra class2_with_d() {
  std::vector<Vec> d(5, V({0, 0, 0, 0, 0}));
  d[1] = V({0, 0, 0, 1, 0});
  d[2] = V({0, 0, 0, 0, 1});
  return DgLieAlgebra({{"l", 0}, {"n", 0}, {"w", 0}, {"a", 1}, {"b", 1}}, d,
                      {{0, 1, V({0, 0, 1, 0, 0})}, {1, 0, V({0, 0, -1, 0, 0})},
                       {0, 3, V({0, 0, 0, 0, 1})}, {3, 0, V({0, 0, 0, 0, -1})}});
}

// Independent floating-point RK4 integration of x' = [λ,x] − dλ.
std::vector<double> rk4_flow(const DgLieAlgebra& g, const Vec& lambda, const Vec& x0, int steps) {
  const std::size_t n = g.dim();
  auto to_d = [](const Scalar& s) { return s.to_mpq().get_d(); };
  std::vector<double> lam(n), x(n), dl(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lam[i] = to_d(lambda[i]);
    x[i] = to_d(x0[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : g.d_basis(i).entries()) dl[k] += lam[i] * to_d(c);
  auto field = [&](const std::vector<double>& y) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : g.bracket_basis(i, j).entries()) out[k] += lam[i] * y[j] * to_d(c);
    for (std::size_t k = 0; k < n; ++k) out[k] -= dl[k];
    return out;
  };
  double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    auto k1 = field(x);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + h / 2 * k1[i];
    auto k2 = field(t);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + h / 2 * k2[i];
    auto k3 = field(t);
    for (std::size_t i = 0; i < n; ++i) t[i] = x[i] + h * k3[i];
    auto k4 = field(t);
    for (std::size_t i = 0; i < n; ++i) x[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return x;
}

Vec random_in_degree(const DgLieAlgebra& g, int k, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Vec v = g.zero();
  for (std::size_t i : g.indices_of_degree(k)) v[i] = Scalar(num(rng), den(rng));
  return v;
}

}  // namespace

TEST_CASE("check_axioms") {
  CHECK(check_axioms(corpus::abelian({0, 1, 1, 2})).empty());
  CHECK(check_axioms(corpus::heisenberg()).empty());
  CHECK(check_axioms(corpus::gauge2()).empty());
  CHECK(check_axioms(corpus::class3()).empty());
  CHECK(check_axioms(class2_with_d()).empty());

  DgLieAlgebra bad({{"a", 1}, {"b", 1}, {"c", 2}}, {}, {{0, 1, V({0, 0, 1})}, {1, 0, V({0, 0, -1})}});
  auto report = check_axioms(bad);
  std::size_t antisym = 0;
  for (const auto& v : report) antisym += v.kind == "antisymmetry";
  CHECK(antisym == 1);

  // λ acting on the Heisenberg algebra by [λ,a] = b breaks Jacobi:
  // [a,[λ,a]] = c but [[a,λ],a] + [λ,[a,a]] = −c.
  DgLieAlgebra ext({{"l", 0}, {"a", 1}, {"b", 1}, {"c", 2}}, {},
                   {{1, 2, V({0, 0, 0, 1})}, {2, 1, V({0, 0, 0, 1})},
                    {0, 1, V({0, 0, 1, 0})}, {1, 0, V({0, 0, -1, 0})}});
  bool jacobi = false;
  for (const auto& v : check_axioms(ext)) jacobi = jacobi || v.kind == "jacobi";
  CHECK(jacobi);
}

TEST_CASE("mc_residual examples") {
  auto ab = corpus::abelian({1, 1, 2});
  CHECK(is_zero(mc_residual(ab, V({3, -2, 0}))));
  DgLieAlgebra e({{"e1", 1}, {"e2", 2}}, {V({0, 1}), V({0, 0})}, {});
  CHECK(mc_residual(e, V({1, 0})) == V({0, 1}));
  auto h = corpus::heisenberg();
  CHECK(mc_residual(h, V({1, 1, 0})) == V({0, 0, 1}));
  CHECK_THROWS_AS(mc_residual(h, V({0, 0, 1})), InvalidInput);
  CHECK_THROWS_AS(mc_residual(corpus::heisenberg(2), V({1, 0, 0})), ArithmeticError);
}

TEST_CASE("gauge flow closed forms") {
  auto g2 = corpus::gauge2();
  // dλ = 0 and [λ,x0] = 0: constant flow.
  CHECK(gauge_flow(g2, V({1, 0, 0}), V({0, 0, 3})) == V({0, 0, 3}));

  DgLieAlgebra ab({{"u", 0}, {"v", 1}}, {V({0, 1}), V({0, 0})}, {});
  CHECK(gauge_flow(ab, V({2, 0}), V({0, 5})) == V({0, 3}));

  auto g = class2_with_d();
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vec lam = random_in_degree(g, 0, rng), x0 = random_in_degree(g, 1, rng);
    Vec dl = g.d(lam);
    Vec expect = sub(x0, dl);
    axpy(expect, Scalar(1), g.bracket(lam, x0));
    axpy(expect, Scalar(-1, 2), g.bracket(lam, dl));
    CHECK(gauge_flow(g, lam, x0) == expect);
  }
}

TEST_CASE("gauge flow agrees with numerical integration") {
  for (const auto& g : {corpus::class3(), class2_with_d()}) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
      Vec lam = random_in_degree(g, 0, rng), x0 = random_in_degree(g, 1, rng);
      Vec exact = gauge_flow(g, lam, x0);
      auto approx = rk4_flow(g, lam, x0, 2000);
      CHECK(is_mc(g, exact));
      for (std::size_t i = 0; i < g.dim(); ++i)
        CHECK(exact[i].to_mpq().get_d() == doctest::Approx(approx[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("bch") {
  auto g = class2_with_d();
  std::mt19937 rng(3);
  Vec u = random_in_degree(g, 0, rng), v = random_in_degree(g, 0, rng);
  CHECK(bch(g, u, g.zero()) == u);
  Vec expect = add(u, v);
  axpy(expect, Scalar(1, 2), g.bracket(u, v));
  CHECK(bch(g, u, v) == expect);
  auto c3 = corpus::class3();
  Vec a = random_in_degree(c3, 0, rng), b = random_in_degree(c3, 0, rng);
  CHECK(is_zero(bch(c3, a, scaled(a, Scalar(-1)))));
  for (int trial = 0; trial < 5; ++trial) {
    Vec x = random_in_degree(c3, 1, rng);
    CHECK(gauge_flow(c3, a, gauge_flow(c3, b, x)) == gauge_flow(c3, bch(c3, a, b), x));
  }
}

TEST_CASE("canonical filtration and nilpotency") {
  CHECK(nilpotency_degree(corpus::abelian({0, 1})) == 2);
  auto h = corpus::heisenberg();
  auto f = canonical_filtration(h);
  CHECK(nilpotency_degree(h) == 3);
  REQUIRE(f.F(2).size() == 1);
  CHECK(f.F(2)[0] == V({0, 0, 1}));
  CHECK(f.F(3).empty());
  CHECK(nilpotency_degree(corpus::class3()) == 4);
  for (const auto& g : {corpus::heisenberg(), corpus::class3(), class2_with_d()})
    CHECK(check_filtration(g, canonical_filtration(g)).empty());

  DgLieAlgebra nonnil({{"x", 0}, {"y", 0}}, {}, {{0, 1, V({0, 1})}, {1, 0, V({0, -1})}});
  CHECK_THROWS_AS(nilpotency_degree(nonnil), NotNilpotent);
}

TEST_CASE("twist and components") {
  auto g = corpus::class3();
  CHECK_THROWS_AS(twist(corpus::heisenberg(), V({1, 1, 0})), InvalidInput);
  auto t0 = twist(g, g.zero());
  for (std::size_t i = 0; i < g.dim(); ++i) CHECK(t0.d_basis(i) == g.d_basis(i));
  auto c0 = component_at(g, g.zero());
  CHECK(c0.algebra.dim() == 1);  // ker d in degree 0 is spanned by λ
  CHECK(c0.inclusion[0] == V({1, 0, 0, 0, 0}));

  auto ab = corpus::abelian({0, 1});
  auto ta = twist(ab, V({0, 4}));
  CHECK(ta.d_basis(0).empty());

  auto g2 = corpus::gauge2();
  auto tx = twist(g2, V({0, 1, 0}));
  CHECK(tx.d(V({1, 0, 0})) == V({0, 0, -1}));
  CHECK(check_axioms(tx).empty());

  // (d^x)^2 = ad of the MC residual, also for x that is not MC.
  auto h = corpus::heisenberg();
  Vec x = V({1, 1, 0});
  Vec res = mc_residual(h, x);
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Vec e = h.basis_vector(i);
    auto dx = [&](const Vec& v) { return add(h.d(v), h.bracket(x, v)); };
    CHECK(dx(dx(e)) == h.bracket(res, e));
  }
}

TEST_CASE("pi0 by enumeration") {
  for (std::uint32_t p : {3u, 5u}) {
    auto ab = corpus::abelian({0, 1, 1}, p);
    CHECK(pi0_bruteforce(ab).count == p * p);
    DgLieAlgebra exact({{"u", 0}, {"v", 1}}, {Vec{Scalar(0), Scalar(1)}, Vec{Scalar(0), Scalar(0)}}, {}, p);
    CHECK(pi0_bruteforce(exact).count == 1);
  }
  CHECK(pi0_bruteforce(corpus::abelian({0, 2}, 5)).count == 1);
  auto r = pi0_bruteforce(corpus::gauge2(5));
  CHECK(r.count == 9);
  CHECK(r.mc_count() == 25);
  CHECK(pi0_bruteforce(corpus::class3(5)).count == 9);
  CHECK_THROWS_AS(pi0_bruteforce(corpus::class3(3)), ArithmeticError);
  CHECK_THROWS_AS(pi0_bruteforce(corpus::class3(5), 100.0), BudgetExceeded);

  // Relabelling the basis does not change the count.
  auto g = corpus::class3();
  std::vector<std::size_t> perm = {4, 1, 3, 0, 2};
  std::vector<BasisElement> b(5);
  std::vector<Vec> d(5, V({0, 0, 0, 0, 0}));
  std::vector<BracketEntry> br;
  auto permute = [&](const Vec& v) {
    Vec w = V({0, 0, 0, 0, 0});
    for (std::size_t i = 0; i < 5; ++i) w[perm[i]] = v[i];
    return w;
  };
  for (std::size_t i = 0; i < 5; ++i) {
    b[perm[i]] = g.basis()[i];
    d[perm[i]] = permute(g.d(g.basis_vector(i)));
  }
  for (const auto& e : g.bracket_entries()) br.push_back({perm[e.i], perm[e.j], permute(e.coeffs)});
  DgLieAlgebra gp(b, d, br, 5);
  CHECK(check_axioms(gp).empty());
  CHECK(pi0_bruteforce(gp).count == 9);
}

TEST_CASE("modular kernel agrees with exact arithmetic") {
  auto g = corpus::class3(7);
  ModpAlgebra m(g);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> digit(0, 6);
  for (int t = 0; t < 20; ++t) {
    Vec lam = g.zero(), x = g.zero();
    for (std::size_t i : g.indices_of_degree(0)) lam[i] = Scalar::residue(digit(rng), 7);
    for (std::size_t i : g.indices_of_degree(1)) x[i] = Scalar::residue(digit(rng), 7);
    CHECK(m.to(m.gauge_flow(m.from(lam), m.from(x))) == gauge_flow(g, lam, x));
  }
}

TEST_CASE("filtered quasi-isomorphisms") {
  auto g = corpus::class3();
  auto f = canonical_filtration(g);
  CHECK(is_filtered_qi(identity_morphism(g), f, f).value);

  auto ext = corpus::acyclic_extension(g);
  CHECK(ext.check().empty());
  auto r = is_filtered_qi(ext, f, *ext.target.declared_filtration);
  CHECK(r.value);
  CHECK(r.graded_pieces_qi);

  DgLieAlgebra k2 = corpus::abelian({1, 1}), k1 = corpus::abelian({1});
  DgLieMorphism q{k2, k1, Matrix::from_rows(2, {V({1, 0})})};
  Filtration t2{{{V({1, 0}), V({0, 1})}}}, t1{{{V({1})}}};
  auto rq = is_filtered_qi(q, t2, t1);
  CHECK_FALSE(rq.value);
  CHECK_FALSE(rq.graded_pieces_qi);

  // Not filtered: sends F_2 outside F_2.
  auto h = corpus::heisenberg();
  Matrix swap(3, 3);
  swap.add(0, 0, Scalar(1));
  swap.add(1, 1, Scalar(1));
  swap.add(2, 2, Scalar(1));
  Filtration bad{{{V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})}, {V({0, 0, 1})}}};
  Filtration tight{{{V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})}}};
  CHECK_THROWS_AS(is_filtered_qi(DgLieMorphism{h, h, swap}, bad, tight), InvalidInput);
}

TEST_CASE("BFMT criterion on towers") {
  auto g = corpus::class3(5);
  auto tg = canonical_tower(g);
  CHECK(tg.stages.size() == 3);
  CHECK(is_bfmt_weak_equivalence(tower_morphism(identity_morphism(g), tg, tg)).value);

  auto ext = corpus::acyclic_extension(corpus::gauge2(5));
  auto th = canonical_tower(ext.target);
  auto ts = canonical_tower(ext.source);
  auto res = is_bfmt_weak_equivalence(tower_morphism(ext, ts, th));
  CHECK(res.value);

  auto col = corpus::h1_collapse(5);
  auto a = canonical_tower(col.source), b = canonical_tower(col.target, 2);
  CHECK_FALSE(is_bfmt_weak_equivalence(tower_morphism(col, a, b)).value);
}
