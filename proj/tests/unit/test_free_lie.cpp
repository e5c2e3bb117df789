#include "doctest.h"

#include <random>

#include "mcforge/error.hpp"
#include "mcforge/free_lie.hpp"
#include "mcforge/witt_oracle.hpp"

using namespace mcforge;

namespace {

std::map<std::pair<int, int>, long long> basis_dims(const FreeLieTruncation& L) {
  std::map<std::pair<int, int>, long long> out;
  for (const auto& b : L.basis()) ++out[{b.weight, b.degree}];
  return out;
}

Vec random_element(const FreeLieTruncation& L, int degree, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  Vec v = L.zero();
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (L.basis()[i].degree == degree) v[i] = Scalar(c(rng));
  return v;
}

}  // namespace

TEST_CASE("lyndon words") {
  CHECK(lyndon_words(2, 3) == std::vector<std::string>{std::string("\0\0\1", 3), std::string("\0\1\1", 3)});
  CHECK(lyndon_words(3, 1).size() == 3);
  for (int w = 1; w <= 6; ++w) CHECK(static_cast<long long>(lyndon_words(3, w).size()) == oracle::witt_even(3, w));
}

TEST_CASE("small bases") {
  FreeLieTruncation one({{"a", 3}}, 2);
  CHECK(one.dim() == 1);
  FreeLieTruncation two({{"a", 0}, {"b", 0}}, 3);
  REQUIRE(two.weight_indices(2).size() == 1);
  CHECK(two.basis()[2].name == "[a,b]");
  FreeLieTruncation odd({{"x", 1}}, 4);
  REQUIRE(odd.weight_indices(2).size() == 1);
  CHECK(odd.basis()[1].name == "[x,x]");
  CHECK(odd.weight_indices(3).empty());
}

TEST_CASE("dimensions match the enveloping-algebra oracle") {
  const std::vector<std::vector<int>> cases = {{0, 0}, {0, 0, 0}, {1}, {0, 1}, {1, 1, 0}, {1, 1, 1}, {-1, 0, 1}, {2, 1}};
  for (const auto& degs : cases) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < degs.size(); ++i) gens.push_back({"g" + std::to_string(i), degs[i]});
    FreeLieTruncation L(gens, 7);
    CHECK(basis_dims(L) == oracle::free_lie_dims(degs, 6));
  }
}

TEST_CASE("normal forms") {
  FreeLieTruncation L({{"a", 0}, {"b", 0}}, 5);
  CHECK(L.bracket_normalize("[b,a]") == scaled(L.bracket_normalize("[a,b]"), Scalar(-1)));
  CHECK(L.bracket_normalize("[[a,b],a]") == L.bracket_normalize("[a,[b,a]]"));
  CHECK(L.bracket_normalize("[[a,b],a]") == scaled(L.bracket_normalize("[a,[a,b]]"), Scalar(-1)));
  FreeLieTruncation O({{"x", 1}}, 5);
  CHECK(is_zero(O.bracket_normalize("[x,[x,x]]")));
  bool cut = false;
  CHECK(is_zero(L.bracket_normalize("[a,[a,[a,[a,b]]]]", &cut)));
  CHECK(cut);
  CHECK_THROWS_AS(L.normalize(AssocPoly{{std::string("\0\1", 2), Scalar(1)}}), InvalidInput);
  CHECK_THROWS_AS(L.bracket_normalize("[a,c]"), InvalidInput);
}

TEST_CASE("normalization is idempotent and brackets are Lie") {
  FreeLieTruncation L({{"a", 0}, {"b", 1}, {"c", 1}}, 7);
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    Vec x = random_element(L, t % 3, rng);
    CHECK(L.normalize(L.expand(x)) == x);
  }
  DgLieAlgebra g = L.quotient_stage(4);
  CHECK(check_axioms(g).empty());
}

TEST_CASE("derivation extension") {
  // mc_0-like: x of degree 1 with dx = −½[x,x].
  FreeLieTruncation L({{"x", 1}}, 6);
  L.set_differential({scaled(L.bracket_normalize("[x,x]"), Scalar(-1, 2))});
  CHECK(L.check_d_squared().empty());

  FreeLieTruncation M({{"l", 0}, {"a", 1}, {"b", 1}}, 5);
  M.set_differential({M.zero(), M.zero(), M.zero()});
  CHECK_THROWS_AS(M.set_differential({M.zero(), M.generator(0), M.zero()}), InvalidInput);
  Vec dl = add(M.generator(1), scaled(M.generator(2), Scalar(-1)));
  M.set_differential({dl, M.zero(), M.zero()});
  CHECK(M.check_d_squared().empty());
  std::mt19937 rng(9);
  for (int t = 0; t < 10; ++t) {
    int du = t % 2, dv = (t / 2) % 2;
    Vec u = random_element(M, du, rng), v = random_element(M, dv, rng);
    Vec lhs = M.d(M.bracket(u, v));
    Vec rhs = add(M.bracket(M.d(u), v), scaled(M.bracket(u, M.d(v)), Scalar(du % 2 ? -1 : 1)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("stages and free nilpotent algebras") {
  FreeLieTruncation L({{"a", 0}, {"b", 0}}, 4);
  DgLieAlgebra ab = L.quotient_stage(2);
  CHECK(ab.dim() == 2);
  for (const auto& s : L.tower()) CHECK(check_axioms(s).empty());
  CHECK(L.transition(2).rows() == 2);
  CHECK_THROWS(L.quotient_stage(5));

  DgLieAlgebra f3 = free_nilpotent({{"a", 0}, {"b", 0}}, 3);
  auto f = canonical_filtration(f3);
  CHECK(f.F(2).size() - f.F(3).size() == 1);
  CHECK(f.F(3).size() == 2);
  CHECK(nilpotency_degree(f3) == 4);
}

TEST_CASE("evaluation is a Lie morphism") {
  FreeLieTruncation L({{"a", 0}, {"b", 0}}, 4);
  DgLieAlgebra f3 = free_nilpotent({{"x", 0}, {"y", 0}}, 3);
  std::vector<Vec> images = {add(f3.basis_vector(0), f3.basis_vector(1)), f3.basis_vector(1)};
  Vec ab = L.bracket_normalize("[a,[a,b]]");
  Vec img = L.evaluate(ab, f3, images);
  Vec direct = f3.bracket(images[0], f3.bracket(images[0], images[1]));
  CHECK(img == direct);
}
