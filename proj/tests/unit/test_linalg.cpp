#include "doctest.h"

#include "mcforge/linalg.hpp"

using namespace mcforge;

namespace {
Matrix M(std::size_t cols, std::vector<std::vector<long long>> rows) {
  std::vector<Vec> rs;
  for (auto& r : rows) {
    Vec v;
    for (auto x : r) v.emplace_back(x);
    rs.push_back(v);
  }
  return Matrix::from_rows(cols, rs);
}
}  // namespace

TEST_CASE("rank and kernel") {
  Matrix a = M(3, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(a) == 2);
  auto k = kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(is_zero(a.apply(k[0])));
  CHECK(k[0][2] == Scalar(1));
  CHECK(rank(Matrix(0, 4)) == 0);
  CHECK(kernel(Matrix(0, 2)).size() == 2);
}

TEST_CASE("solve") {
  Matrix a = M(2, {{1, 1}, {1, -1}});
  auto x = solve(a, {Scalar(3), Scalar(1)});
  REQUIRE(x);
  CHECK((*x)[0] == Scalar(2));
  CHECK((*x)[1] == Scalar(1));
  Matrix s = M(2, {{1, 1}, {2, 2}});
  CHECK_FALSE(solve(s, {Scalar(1), Scalar(3)}));
}

TEST_CASE("span membership and rref") {
  Span s(3);
  CHECK(s.add(Vec{Scalar(0), Scalar(2), Scalar(4)}));
  CHECK(s.add(Vec{Scalar(1), Scalar(1), Scalar(1)}));
  CHECK_FALSE(s.add(Vec{Scalar(1), Scalar(3), Scalar(5)}));
  CHECK(s.contains(Vec{Scalar(2), Scalar(0), Scalar(-2)}));
  auto r = s.rref();
  REQUIRE(r.size() == 2);
  CHECK(r[0].at(1).is_zero());
  CHECK(r[1].at(1) == Scalar(1));
}

TEST_CASE("product and transpose") {
  Matrix a = M(2, {{1, 2}, {3, 4}});
  Matrix b = a * Matrix::identity(2);
  CHECK(a == b);
  CHECK(a.transpose().at(0, 1) == Scalar(3));
  CHECK((a * a).at(1, 1) == Scalar(22));
  CHECK(independent_columns(M(3, {{1, 2, 0}, {0, 0, 1}})) == std::vector<std::size_t>{0, 2});
}
