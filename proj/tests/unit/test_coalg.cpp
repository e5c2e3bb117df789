#include <doctest.h>

#include "mcforge/coalg.hpp"
#include "mcforge/corpus.hpp"
#include "mcforge/error.hpp"
#include "mcforge/transfer.hpp"

using namespace mcforge;

namespace {

bool same_span(std::size_t dim, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  Span sa(dim), sb(dim);
  for (const auto& v : a) sa.add(v);
  for (const auto& v : b) sb.add(v);
  if (sa.rank() != sb.rank()) return false;
  for (const auto& v : a)
    if (!sb.contains(v)) return false;
  return true;
}

bool same_structure(const DgLieAlgebra& a, const DgLieAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree(i) != b.degree(i)) return false;
    if (a.d(a.basis_vector(i)) != b.d(b.basis_vector(i))) return false;
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a.bracket(a.basis_vector(i), a.basis_vector(j)) != b.bracket(b.basis_vector(i), b.basis_vector(j)))
        return false;
  }
  return true;
}

LieCoalgebra plain_complex(const std::vector<int>& degrees, const std::vector<Vec>& d) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < degrees.size(); ++i) basis.push_back({"c" + std::to_string(i), degrees[i]});
  return LieCoalgebra(basis, d, {});
}

CoalgebraMorphism identity_of(const LieCoalgebra& c) { return {c, c, Matrix::identity(c.dim())}; }

}  // namespace

TEST_CASE("coalgebra: Heisenberg dual") {
  auto g = corpus::heisenberg();
  auto c = dualize_alg(g);
  CHECK(check_coalgebra_axioms(c).empty());
  CHECK(c.degree(0) == -1);
  CHECK(c.degree(2) == -2);
  // δ(c^v) has a^v ⊗ b^v and b^v ⊗ a^v
  auto t = c.cobracket_basis(2);
  CHECK(t.size() == 2);
  CHECK(c.cobracket_basis(0).empty());
  auto f = coradical_filtration(c);
  REQUIRE(f.length() == 2);
  CHECK(same_span(3, f.F(1), {unit(3, 0), unit(3, 1)}));
  CHECK(f.F(2).size() == 3);
  CHECK(check_coalgebra_filtration(c, f).empty());
  auto orth = orthogonal_filtration(c, f);
  auto can = canonical_filtration(g);
  CHECK(same_span(3, orth.F(1), can.F(2)));
  CHECK(orth.F(2).empty());
  CHECK(same_structure(dualize(c), g));
}

TEST_CASE("coalgebra: dualization round trips") {
  for (const auto& g : {corpus::abelian({0, 1, 1}), corpus::heisenberg(), corpus::gauge2(), corpus::class3()}) {
    auto c = dualize_alg(g);
    CHECK(check_coalgebra_axioms(c).empty());
    CHECK(same_structure(dualize(c), g));
    auto back = dualize_alg(dualize(c));
    CHECK(back.d_images() == c.d_images());
    CHECK(coradical_filtration(c).length() >= 1);
  }
  auto ab = dualize_alg(corpus::abelian({0, 1}));
  CHECK(coradical_filtration(ab).length() == 1);
}

TEST_CASE("coalgebra: non-conilpotent input") {
  // dual of [x,y] = y, both in degree 0
  std::vector<BracketEntry> br{{0, 1, {0, 1}}, {1, 0, {0, -1}}};
  DgLieAlgebra g({{"x", 0}, {"y", 0}}, {}, br);
  REQUIRE(check_axioms(g).empty());
  CHECK_THROWS_AS(coradical_filtration(dualize_alg(g)), NotNilpotent);
  CHECK_THROWS_AS(CdgaTruncation(dualize_alg(g), 2), NotNilpotent);
}

TEST_CASE("coalgebra: coradical vs canonical on mc_1 stages") {
  auto m = build_mcn(1, 5);
  for (int k = 2; k <= 5; ++k) {
    auto g = m.lie->quotient_stage(k);
    auto c = dualize_alg(g);
    auto f = coradical_filtration(c);
    CHECK(check_coalgebra_filtration(c, f).empty());
    CHECK(static_cast<int>(f.length()) == k - 1);
    auto orth = orthogonal_filtration(c, f);
    auto can = canonical_filtration(g);
    for (std::size_t n = 1; n <= f.length(); ++n) CHECK(same_span(g.dim(), orth.F(n), can.F(n + 1)));
  }
}

TEST_CASE("cobar: free commutative algebra with zero structure") {
  auto c = plain_complex({0, -1}, {});  // generators of degree 1 and 0
  CdgaTruncation t(c, 4);
  for (int w = 0; w <= 4; ++w) CHECK(t.piece(w).space().total_dim() == static_cast<std::size_t>(1 + 2 * w));
  for (std::size_t m = 0; m < t.monomials().size(); ++m) CHECK(t.d(m).empty());
  auto odd = plain_complex({0, 0, 0}, {});
  CdgaTruncation e(odd, 3);
  // exterior algebra on three odd generators
  CHECK(e.piece(3).space().total_dim() == 8);
  CHECK(e.piece(1).space().total_dim() == 4);
}

TEST_CASE("cobar: multiplication signs") {
  auto c = plain_complex({0, 0, -1}, {});
  CdgaTruncation t(c, 3);
  // generators 0, 1 odd and 2 even (adapted order follows degree blocks)
  std::vector<std::uint32_t> odd;
  for (std::uint32_t g = 0; g < 3; ++g)
    if (t.generator_degree(g) % 2) odd.push_back(g);
  REQUIRE(odd.size() == 2);
  auto [s1, m1] = t.multiply({odd[1]}, {odd[0]});
  CHECK(s1 == -1);
  CHECK(m1 == CdgaTruncation::Monomial{odd[0], odd[1]});
  CHECK(t.multiply({odd[0]}, {odd[0]}).first == 0);
}

TEST_CASE("cobar: differential squares to zero and linear part") {
  for (const auto& g : {corpus::heisenberg(), corpus::gauge2(), corpus::class3()}) {
    auto c = dualize_alg(g);
    CdgaTruncation t(c, 4);
    for (int w = 1; w <= 4; ++w) CHECK_NOTHROW(t.piece(w));
    const auto& a = t.adapted();
    Matrix lin = t.linear_part();
    for (std::size_t k = 0; k < a.dim(); ++k) {
      Vec dk = a.d(unit(a.dim(), k));
      for (std::size_t i = 0; i < a.dim(); ++i) {
        Scalar expect = dk[i] * Scalar(t.generator_degree(i) % 2 ? 1 : -1);
        CHECK(lin.at(i, k) == expect);
      }
    }
  }
  auto m = build_mcn(1, 4);
  CdgaTruncation t(dualize_alg(m.lie->as_dgla()), 4);
  CHECK_NOTHROW(t.piece(4));
}

TEST_CASE("weak equivalences up to weight") {
  auto c = dualize_alg(corpus::class3());
  auto r = is_weak_equivalence_upto(identity_of(c), 3);
  CHECK(r.verdict == Verdict::yes);

  auto one = plain_complex({0}, {});
  auto two = plain_complex({0, 0}, {});
  Matrix inc(2, 1);
  inc.add(0, 0, Scalar(1));
  CoalgebraMorphism f{one, two, inc};
  CHECK(f.check().empty());
  CHECK(is_weak_equivalence_upto(f, 3).verdict == Verdict::no);
  CdgaTruncation s1(one, 2), s2(two, 2);
  auto maps = cobar_map(f, s1, s2);
  REQUIRE(maps.size() == 2);
  CHECK_FALSE(is_quasi_iso(maps[0]));

  auto ext = corpus::acyclic_extension(corpus::gauge2());
  auto fd = dualize_morphism(ext);
  CHECK(fd.check().empty());
  auto re = is_weak_equivalence_upto(fd, 3);
  CHECK(re.verdict == Verdict::yes);
  CHECK(re.filtered_qi);
  auto back = dualize(fd);
  CHECK(is_filtered_qi(back, canonical_filtration(back.source), canonical_filtration(back.target)).value);
}

TEST_CASE("fibration surrogate") {
  auto c = dualize_alg(corpus::heisenberg());
  CHECK(is_fibration_surrogate(identity_of(c)));
  auto ext = corpus::acyclic_extension(corpus::gauge2());  // injective Lie map
  CHECK(is_fibration_surrogate(dualize_morphism(ext)));
  auto one = plain_complex({0}, {});
  auto two = plain_complex({0, 0}, {});
  Matrix inc(2, 1);
  inc.add(0, 0, Scalar(1));
  CHECK_FALSE(is_fibration_surrogate(CoalgebraMorphism{one, two, inc}));
}

TEST_CASE("frame maps on the coalgebra side") {
  for (int n = 0; n <= 2; ++n) {
    auto f = frame_maps(n, 4);
    for (int k = 2; k <= 4; ++k) {
      auto w = dualize_morphism(f.w.stage(k));
      CHECK(w.check().empty());
      auto p = dualize_morphism(f.p.stage(k));
      CHECK(is_fibration_surrogate(p));
    }
    auto w = dualize_morphism(f.w.stage(4));
    CHECK_MESSAGE(is_weak_equivalence_upto(w, 4).verdict == Verdict::yes, "n = ", n);
  }
}
