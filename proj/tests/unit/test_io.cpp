#include <doctest.h>

#include "mcforge/coalg.hpp"
#include "mcforge/corpus.hpp"
#include "mcforge/error.hpp"
#include "mcforge/io.hpp"

using namespace mcforge;

namespace {

bool same_algebra(const DgLieAlgebra& a, const DgLieAlgebra& b) {
  if (a.dim() != b.dim() || a.characteristic() != b.characteristic()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.name(i) != b.name(i) || a.degree(i) != b.degree(i)) return false;
    if (!(a.d_basis(i) == b.d_basis(i))) return false;
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!(a.bracket_basis(i, j) == b.bracket_basis(i, j))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("io: algebra round trip") {
  for (const DgLieAlgebra& g : {corpus::heisenberg(), corpus::gauge2(5), corpus::class3(), corpus::class3(7),
                                corpus::acyclic_extension(corpus::gauge2()).target}) {
    std::string text = io::algebra_to_json(g);
    DgLieAlgebra back = io::algebra_from_json(text);
    CHECK(same_algebra(g, back));
    CHECK(io::algebra_to_json(back) == text);
    CHECK(back.declared_filtration.has_value() == g.declared_filtration.has_value());
  }
}

TEST_CASE("io: one-sided brackets and rational literals") {
  const char* doc = R"({
    "basis": [{"name": "l", "degree": 0}, {"name": "a", "degree": 1}, {"name": "b", "degree": 1},
              {"name": "x", "degree": 1}, {"name": "c", "degree": 2}],
    "d": {"1": [[0], [0], ["1/2"]]},
    "brackets": [{"i": 0, "j": 1, "coeffs": [0, 0, 1, 0, 0]},
                 {"i": 1, "j": 3, "coeffs": [0, 0, 0, 0, "-3/4"]}]
  })";
  DgLieAlgebra g = io::algebra_from_json(doc);
  CHECK(g.bracket(g.basis_vector(1), g.basis_vector(0)) == Vec{0, 0, -1, 0, 0});
  CHECK(g.bracket(g.basis_vector(3), g.basis_vector(1)) == Vec{0, 0, 0, 0, Scalar(-3, 4)});
  CHECK(g.d(g.basis_vector(3)) == Vec{0, 0, 0, 0, Scalar(1, 2)});
  CHECK(io::algebra_from_json(doc, 5).characteristic() == 5);
}

TEST_CASE("io: malformed documents") {
  CHECK_THROWS_AS(io::algebra_from_json("{"), InvalidInput);
  CHECK_THROWS_AS(io::algebra_from_json(R"({"d": {}})"), InvalidInput);
  CHECK_THROWS_AS(io::algebra_from_json(R"({"basis": [{"name": "a"}]})"), InvalidInput);
  CHECK_THROWS_AS(io::algebra_from_json(R"({"basis": [{"name": "a", "degree": 1}], "brackets": [{"i": 0, "j": 2, "coeffs": [1]}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(io::algebra_from_json(R"({"basis": [{"name": "a", "degree": 1}], "d": {"1": [[1]]}})"), InvalidInput);
  CHECK_THROWS_AS(io::algebra_from_json(R"({"basis": [{"name": "a", "degree": 0}], "brackets": [{"i": 0, "j": 0, "coeffs": [1.5]}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(io::morphism_from_json(R"({"kind": "tower"})"), InvalidInput);
}

TEST_CASE("io: coalgebra and morphism round trips") {
  LieCoalgebra c = dualize_alg(corpus::class3());
  std::string text = io::coalgebra_to_json(c);
  LieCoalgebra back = io::coalgebra_from_json(text);
  CHECK(io::coalgebra_to_json(back) == text);
  CHECK(back.cobracket_entries().size() == c.cobracket_entries().size());
  CHECK(check_coalgebra_axioms(back).empty());

  DgLieMorphism phi = corpus::acyclic_extension(corpus::gauge2(7));
  auto doc = io::morphism_from_json(io::morphism_to_json(phi));
  CHECK(doc.kind == "lie");
  CHECK(doc.lie.matrix == phi.matrix);
  CHECK(doc.lie.check().empty());
  CHECK(doc.lie.target.declared_filtration.has_value());

  CoalgebraMorphism f = dualize_morphism(phi);
  auto cdoc = io::morphism_from_json(io::morphism_to_json(f));
  CHECK(cdoc.kind == "coalgebra");
  REQUIRE(cdoc.coalgebra.has_value());
  CHECK(cdoc.coalgebra->matrix == f.matrix);
  CHECK(cdoc.lie.matrix == phi.matrix);
}
