#include "doctest.h"

#include "mcforge/forms.hpp"

using namespace mcforge;

namespace {

PolyForm T(int n, int i) { return PolyForm::t(n, i); }
PolyForm dT(int n, int i) { return PolyForm::dt(n, i); }
PolyForm one(int n) { return PolyForm::constant(n, Scalar(1)); }

}  // namespace

TEST_CASE("elementary forms") {
  CHECK(elementary_form(2, std::vector<int>{1}) == T(2, 1));
  CHECK(elementary_form(1, std::vector<int>{0, 1}) == dT(1, 1));
  for (int n = 0; n <= 6; ++n) {
    PolyForm s(n);
    for (int i = 0; i <= n; ++i) s += elementary_form(n, std::vector<int>{i});
    CHECK(s == one(n));
  }
  CHECK(elementary_form(3, std::vector<int>{0, 2, 3}).degree() == 2);
  CHECK_THROWS(elementary_form(2, std::uint32_t{0}));
  CHECK_THROWS(elementary_form(2, std::vector<int>{3}));
}

TEST_CASE("wedge and d") {
  CHECK(T(2, 1).d() == dT(2, 1));
  CHECK(dT(2, 0) == -(dT(2, 1) + dT(2, 2)));
  CHECK(dT(2, 1) * dT(2, 2) == -(dT(2, 2) * dT(2, 1)));
  CHECK((dT(2, 1) * dT(2, 1)).is_zero());
  PolyForm a = T(3, 1) * T(3, 2) * dT(3, 3), b = T(3, 3) * T(3, 3) * dT(3, 1);
  CHECK((a * b).d() == a.d() * b - a * b.d());
  CHECK(a.d().d().is_zero());
  CHECK_THROWS(T(1, 1) * T(2, 1));
}

TEST_CASE("integration") {
  CHECK(integrate_over_face(dT(1, 1), std::vector<int>{0, 1}) == Scalar(1));
  CHECK(integrate_over_face(T(1, 1) * dT(1, 1), std::vector<int>{0, 1}) == Scalar(1, 2));
  // ∫_{Δ²} t1 t2^2 dt1 dt2 = 1!2!/5!
  CHECK(integrate_over_face(T(2, 1) * T(2, 2) * T(2, 2) * dT(2, 1) * dT(2, 2), std::vector<int>{0, 1, 2}) ==
        Scalar(2, 120));
  CHECK(integrate_over_face(T(2, 2), std::vector<int>{2}) == Scalar(1));
  CHECK(integrate_over_face(T(2, 2), std::vector<int>{1}) == Scalar(0));
}

TEST_CASE("faces and degeneracies of forms") {
  CHECK(face(one(2), 1) == one(1));
  PolyForm w = elementary_form(1, std::vector<int>{0, 1});
  CHECK(face(w, 0).is_zero());
  CHECK(face(w, 1).is_zero());
  CHECK(face(T(2, 2), 0) == T(1, 1));
  CHECK(face(T(2, 1), 0) == T(1, 0));
  CHECK(degeneracy(T(1, 1), 0) == T(2, 2));
  CHECK(degeneracy(T(1, 0), 0) == T(2, 0) + T(2, 1));
}

TEST_CASE("dupont contraction on small simplices") {
  PolyForm x = T(1, 1) * dT(1, 1);
  PolyForm hx = dupont_h(x);
  PolyForm half = (T(1, 1) * T(1, 1) - T(1, 1)) * Scalar(1, 2);
  CHECK((hx == half || hx == -half));
  CHECK(dupont_h(dT(1, 1)).is_zero());
  CHECK(dupont_h(T(2, 1) * T(2, 2)).is_zero());
  for (int n = 0; n <= 2; ++n) {
    std::size_t dim = cochain_basis(n).size();
    for (std::size_t k = 0; k < dim; ++k) {
      Vec e = unit(dim, k);
      CHECK(dupont_p(dupont_i(n, e)) == e);
      CHECK(dupont_h(dupont_i(n, e)).is_zero());
    }
    for (const auto& m : monomials_up_to(n, 2)) {
      PolyForm a = PolyForm::monomial(n, m);
      PolyForm ha = dupont_h(a);
      CHECK(is_zero(dupont_p(ha)));
      CHECK(dupont_h(ha).is_zero());
      CHECK(ha.d() + dupont_h(a.d()) == dupont_i(n, dupont_p(a)) - a);
    }
  }
}

TEST_CASE("cochain operations match the combinatorial rules") {
  for (int n = 1; n <= 3; ++n) {
    const auto& basis = cochain_basis(n);
    for (int j = 0; j <= n; ++j) {
      Matrix f = cochain_face_matrix(n, j);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        std::uint32_t I = basis[k];
        Vec expect = zeros(cochain_basis(n - 1).size());
        if (!(I & (1u << j))) {
          std::uint32_t low = I & ((1u << j) - 1), high = I >> (j + 1);
          expect[cochain_index(n - 1, low | (high << j))] = Scalar(1);
        }
        CHECK(f.column(k) == expect);
      }
    }
    // δ e_I = Σ_{v ∉ I} ± e_{I ∪ v}, with i a chain map.
    Matrix d = cochain_d_matrix(n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      PolyForm lhs = dupont_i(n, d.column(k));
      CHECK(lhs == elementary_form(n, basis[k]).d());
    }
  }
}
