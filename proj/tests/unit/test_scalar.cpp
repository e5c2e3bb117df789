#include "doctest.h"

#include <limits>

#include "mcforge/error.hpp"
#include "mcforge/scalar.hpp"

using mcforge::Scalar;

TEST_CASE("rational arithmetic normalizes") {
  Scalar a(1, 2), b(1, 3);
  CHECK((a + b) == Scalar(5, 6));
  CHECK((a - b) == Scalar(1, 6));
  CHECK((a * b) == Scalar(1, 6));
  CHECK((a / b) == Scalar(3, 2));
  CHECK(Scalar(-4, -6) == Scalar(2, 3));
  CHECK(Scalar(3, -6).str() == "-1/2");
  CHECK(Scalar(7).str() == "7");
}

TEST_CASE("overflow spills into big rationals and comes back") {
  Scalar big(std::numeric_limits<long long>::max());
  Scalar sq = big * big;
  CHECK(sq.str() == "85070591730234615847396907784232501249");
  CHECK((sq / big) == big);
  CHECK((sq - sq).is_zero());
}

TEST_CASE("residues") {
  Scalar a = Scalar::residue(3, 7);
  CHECK((a * a.inverse()).is_one());
  CHECK((a + Scalar::residue(5, 7)).str() == "1");
  CHECK((Scalar(1, 2) * Scalar::residue(2, 7)).is_one());
  CHECK(Scalar::parse("-1/3", 7) == Scalar::residue(2, 7));
  CHECK_THROWS_AS(Scalar(1, 7) + Scalar::residue(1, 7), mcforge::ArithmeticError);
  CHECK_THROWS_AS(Scalar::residue(1, 5) + Scalar::residue(1, 7), mcforge::ArithmeticError);
  CHECK_THROWS_AS(Scalar::residue(0, 5).inverse(), mcforge::ArithmeticError);
}

TEST_CASE("factorials respect the characteristic") {
  CHECK(mcforge::factorial(5) == Scalar(120));
  CHECK(mcforge::factorial(4, 7) == Scalar::residue(24, 7));
  CHECK_THROWS(mcforge::factorial(7, 7));
}

TEST_CASE("parse") {
  CHECK(Scalar::parse("12/8") == Scalar(3, 2));
  CHECK(Scalar::parse("-5") == Scalar(-5));
  CHECK_THROWS(Scalar::parse("1/0"));
  CHECK_THROWS(Scalar::parse("abc"));
}
