#include "doctest.h"

#include "mcforge/complex.hpp"
#include "mcforge/error.hpp"

using namespace mcforge;

namespace {
CochainComplex two_term(std::size_t a, std::size_t b, const std::vector<Vec>& rows, int deg = 0) {
  GradedSpace s;
  s.set(deg, a);
  s.set(deg + 1, b);
  std::map<int, Matrix> d;
  d.emplace(deg, Matrix::from_rows(a, rows));
  return CochainComplex(s, d);
}
}  // namespace

TEST_CASE("cohomology examples") {
  CochainComplex zero;
  CHECK(cohomology(zero, 3).dim == 0);
  auto acyclic = two_term(1, 1, {{Scalar(1)}});
  CHECK(cohomology(acyclic, 0).dim == 0);
  CHECK(cohomology(acyclic, 1).dim == 0);
  auto c = two_term(2, 1, {{Scalar(1), Scalar(0)}});
  auto h = cohomology(c, 0);
  CHECK(h.dim == 1);
  CHECK(h.representatives[0] == Vec{Scalar(0), Scalar(1)});
  CHECK(cohomology_dim(c, 0) == 1);
  CHECK(cohomology_dim(c, 1) == 0);
}

TEST_CASE("d squared must vanish") {
  GradedSpace s;
  s.set(0, 1);
  s.set(1, 1);
  s.set(2, 1);
  std::map<int, Matrix> d;
  d.emplace(0, Matrix::identity(1));
  d.emplace(1, Matrix::identity(1));
  CHECK_THROWS_AS(CochainComplex(s, d), InvalidInput);
}

TEST_CASE("quasi-isomorphism examples") {
  auto acyclic = two_term(1, 1, {{Scalar(1)}});
  CHECK(is_quasi_iso(identity_map(acyclic)));
  CochainComplex zero;
  CHECK(is_quasi_iso(ChainMap(zero, acyclic, {})));

  GradedSpace s2, s1;
  s2.set(0, 2);
  s1.set(0, 1);
  CochainComplex k2(s2, {}), k1(s1, {});
  std::map<int, Matrix> p;
  p.emplace(0, Matrix::from_rows(2, {{Scalar(1), Scalar(0)}}));
  CHECK_FALSE(is_quasi_iso(ChainMap(k2, k1, p)));
}

TEST_CASE("subcomplex and quotient") {
  // 0 -> k^2 --(1 0)--> k -> 0; sub = span{e0} -> k is acyclic, quotient is k e1.
  auto c = two_term(2, 1, {{Scalar(1), Scalar(0)}});
  std::map<int, std::vector<Vec>> span;
  span[0] = {Vec{Scalar(1), Scalar(0)}};
  span[1] = {Vec{Scalar(1)}};
  auto sub = subcomplex(c, span);
  CHECK(is_acyclic(sub.complex));
  auto q = quotient(c, span);
  CHECK(q.complex.dim(0) == 1);
  CHECK(q.complex.dim(1) == 0);
  CHECK(is_quasi_iso(q.projection));
}
