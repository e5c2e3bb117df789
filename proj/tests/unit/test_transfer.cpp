#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mcforge/error.hpp"
#include "mcforge/transfer.hpp"

using namespace mcforge;

namespace {

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(MCFORGE_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_images(const LieTruncationMap& f, const LieTruncationMap& g) { return f.images == g.images; }

LieTruncationMap identity_of(const McnAlgebra& m) {
  LieTruncationMap id{m.lie, m.lie, {}};
  for (std::size_t g = 0; g < m.lie->generators().size(); ++g) id.images.push_back(m.lie->generator(g));
  return id;
}

}  // namespace

TEST_CASE("transfer: point") {
  TransferredOps ops(0, 4);
  CHECK(ops.op({0, 0}) == Vec{Scalar(1)});
  CHECK(is_zero(ops.op({0, 0, 0})));
  CHECK(is_zero(ops.op({0, 0, 0, 0})));
  CHECK(ops.check_ainfty(4).empty());
}

TEST_CASE("transfer: interval values") {
  TransferredOps ops(1, 4);
  // indices: 0 = {0}, 1 = {1}, 2 = {0,1}
  CHECK(ops.op({2}) == zeros(3));
  CHECK(ops.op({0}) == Vec{0, 0, 1});  // b1 = -δ, δω_0 = -ω_01
  CHECK(ops.op({0, 0}) == Vec{1, 0, 0});
  CHECK(ops.op({0, 2}) == Vec{0, 0, Scalar(1, 2)});
  CHECK(ops.op({2, 0}) == Vec{0, 0, Scalar(-1, 2)});
  CHECK(ops.op({0, 2, 2}) == Vec{0, 0, Scalar(1, 12)});
  CHECK(ops.op({2, 0, 2}) == Vec{0, 0, Scalar(-1, 6)});
  CHECK(ops.table(4).empty());  // B_3 = 0
}

TEST_CASE("transfer: relations up to arity 4") {
  for (int n = 1; n <= 2; ++n) {
    TransferredOps ops(n, 4);
    auto a = ops.check_ainfty(4);
    CHECK_MESSAGE(a.empty(), n, " ", (a.empty() ? "" : a[0]));
    auto s = ops.check_shuffles(3);
    CHECK_MESSAGE(s.empty(), n, " ", (s.empty() ? "" : s[0]));
  }
  TransferredOps five(1, 5);
  CHECK(five.check_ainfty(5).empty());
  CHECK(five.check_shuffles(5).empty());
}

TEST_CASE("transfer: wrong homotopy sign breaks the relations") {
  set_dupont_h_sign_flipped(true);
  TransferredOps ops(2, 4);
  bool broken = !ops.check_ainfty(4).empty();
  set_dupont_h_sign_flipped(false);
  CHECK(broken);
}

TEST_CASE("transfer: golden tables") {
  for (int n = 0; n <= 2; ++n)
    CHECK(TransferredOps(n, 4).dump() == read_golden("transfer_n" + std::to_string(n) + "_K4.txt"));
}

TEST_CASE("transfer: cutoffs") {
  CHECK_THROWS_AS(TransferredOps(1, 7), BudgetExceeded);
  CHECK_THROWS_AS(TransferredOps(5, 2), InvalidInput);
  CHECK_THROWS_AS(build_mcn(1, 9), BudgetExceeded);
}

TEST_CASE("mc_0 is generated by a Maurer-Cartan element") {
  auto m = build_mcn(0, 6);
  const auto& L = *m.lie;
  REQUIRE(L.generators().size() == 1);
  CHECK(L.generators()[0].degree == 1);
  Vec a = L.generator(0);
  CHECK(L.d(a) == scaled(L.bracket(a, a), Scalar(-1, 2)));
  CHECK(L.check_d_squared().empty());
  auto g = L.as_dgla();
  CHECK(is_mc(g, g.basis_vector(0)));
}

TEST_CASE("mc_n: universal element and d^2") {
  for (int n = 0; n <= 2; ++n) {
    auto m = build_mcn(n, n == 2 ? 4 : 5);
    CHECK(m.lie->check_d_squared().empty());
    CHECK(mcn_curvature(m).empty());
    if (n < 2) CHECK(check_axioms(m.lie->as_dgla()).empty());
  }
}

TEST_CASE("mc_1: lambda is a gauge from beta0 to beta1") {
  auto m = build_mcn(1, 5);
  const auto& L = *m.lie;
  CHECK(L.generators()[m.generator_of(0b11)].degree == 0);
  for (int k = 2; k <= 5; ++k) {
    auto g = L.quotient_stage(k);
    Vec b0 = g.basis_vector(m.generator_of(0b01));
    Vec b1 = g.basis_vector(m.generator_of(0b10));
    Vec lam = g.basis_vector(m.generator_of(0b11));
    CHECK(is_mc(g, b0));
    CHECK(is_mc(g, b1));
    CHECK(gauge_flow(g, lam, b0) == b1);
    CHECK(gauge_flow(g, scaled(lam, Scalar(-1)), b1) == b0);
  }
}

TEST_CASE("mc_1: Lawrence-Sullivan comparison") {
  auto c = bernoulli_series(4);
  CHECK(c[1] == Scalar(-1, 2));
  CHECK(c[2] == Scalar(1, 12));
  CHECK(c[3] == Scalar(0));
  CHECK(c[4] == Scalar(-1, 720));
  auto m = build_mcn(1, 6);
  Vec dl = m.lie->d(m.lie->generator(m.generator_of(0b11)));
  CHECK(dl == lawrence_sullivan_dlambda(m, true));
  CHECK(dl != lawrence_sullivan_dlambda(m, false));
}

TEST_CASE("cylinder maps") {
  auto c = cylinder_maps(5);
  CHECK(c.i.check().empty());
  CHECK(c.t.check().empty());
  auto ti = compose(c.t, c.i);
  Vec alpha = c.mc0.lie->generator(0);
  CHECK(ti.images == std::vector<Vec>{alpha, alpha});
  CHECK(c.t.apply(c.mc1.lie->generator(c.mc1.generator_of(0b11))) == c.mc0.lie->zero());
  for (int j = 0; j < 2; ++j) {
    LieTruncationMap leg{c.mc0.lie, c.mc0_pair.lie, {c.mc0_pair.lie->generator(j)}};
    CHECK(same_images(compose(c.t, compose(c.i, leg)), identity_of(c.mc0)));
    auto il = compose(c.i, leg);
    for (int k = 2; k <= 5; ++k) {
      Matrix m = il.stage_matrix(k);
      CHECK(rank(m) == m.cols());  // algebra map injective, dual surjective
    }
  }
  for (int k = 2; k <= 5; ++k) {
    Matrix m = c.t.stage_matrix(k);
    CHECK(rank(m) == m.rows());  // algebra map surjective, dual injective
    CHECK(c.t.stage(k).check().empty());
    CHECK(c.i.stage(k).check().empty());
  }
}

TEST_CASE("frame maps") {
  auto c = cylinder_maps(4);
  auto f1 = frame_maps(1, 4);
  CHECK(f1.w.images == c.t.images);
  CHECK(f1.p.images == c.i.images);
  for (int n = 0; n <= 2; ++n) {
    auto f = frame_maps(n, 4);
    CHECK(f.w.check().empty());
    CHECK(f.p.check().empty());
    for (int k = 2; k <= 4; ++k) {
      Matrix m = f.p.stage_matrix(k);
      CHECK(rank(m) == m.cols());
    }
  }
}

TEST_CASE("cosimplicial structure") {
  std::vector<McnAlgebra> mc;
  for (int n = 0; n <= 2; ++n) mc.push_back(build_mcn(n, 4));
  for (int n = 1; n <= 2; ++n)
    for (int j = 0; j <= n; ++j) CHECK(coface(mc[n - 1], mc[n], j).check().empty());
  for (int n = 0; n <= 1; ++n)
    for (int j = 0; j <= n; ++j) CHECK(codegeneracy(mc[n + 1], mc[n], j).check().empty());
  // d^j d^i = d^i d^{j-1} for i < j
  for (int i = 0; i < 2; ++i)
    for (int j = i + 1; j <= 2; ++j)
      CHECK(same_images(compose(coface(mc[1], mc[2], j), coface(mc[0], mc[1], i)),
                        compose(coface(mc[1], mc[2], i), coface(mc[0], mc[1], j - 1))));
  // s^j d^i
  for (int j = 0; j <= 1; ++j)
    for (int i = 0; i <= 2; ++i) {
      auto lhs = compose(codegeneracy(mc[2], mc[1], j), coface(mc[1], mc[2], i));
      if (i == j || i == j + 1) {
        CHECK(same_images(lhs, identity_of(mc[1])));
      } else if (i < j) {
        CHECK(same_images(lhs, compose(coface(mc[0], mc[1], i), codegeneracy(mc[1], mc[0], j - 1))));
      } else {
        CHECK(same_images(lhs, compose(coface(mc[0], mc[1], i - 1), codegeneracy(mc[1], mc[0], j))));
      }
    }
}
