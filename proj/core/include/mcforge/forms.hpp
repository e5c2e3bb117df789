#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mcforge/linalg.hpp"
#include "mcforge/scalar.hpp"

namespace mcforge {

/// Monomial t_1^{e_1}...t_n^{e_n} dt_{j_1}...dt_{j_k} in canonical
/// coordinates (t_0 and dt_0 eliminated). Exponents are packed 8 bits per
/// variable, dt_j is bit j-1 of mask.
struct FormMonomial {
  std::uint64_t exps = 0;
  std::uint32_t mask = 0;

  int exponent(int var) const { return static_cast<int>((exps >> (8 * (var - 1))) & 0xff); }
  int form_degree() const { return __builtin_popcount(mask); }
  int poly_degree() const;

  friend bool operator<(const FormMonomial& a, const FormMonomial& b) {
    return a.mask != b.mask ? a.mask < b.mask : a.exps < b.exps;
  }
  friend bool operator==(const FormMonomial& a, const FormMonomial& b) { return a.mask == b.mask && a.exps == b.exps; }
};

/// Polynomial differential form on the n-simplex with exact coefficients.
class PolyForm {
 public:
  static constexpr int kMaxVars = 8;

  PolyForm() = default;
  explicit PolyForm(int n) : n_(n) { check_n(n); }

  static PolyForm constant(int n, const Scalar& c);
  /// Barycentric coordinate t_i, 0 <= i <= n (t_0 = 1 − Σ t_i).
  static PolyForm t(int n, int i);
  /// dt_i, 0 <= i <= n (dt_0 = −Σ dt_i).
  static PolyForm dt(int n, int i);
  static PolyForm monomial(int n, const FormMonomial& m, const Scalar& c = Scalar(1));

  int n() const { return n_; }
  const std::map<FormMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Form degree when homogeneous; -1 for the zero form; throws otherwise.
  int degree() const;
  /// Largest polynomial degree among the terms.
  int poly_degree() const;
  /// Part of form degree k.
  PolyForm component(int k) const;

  void add_term(const FormMonomial& m, const Scalar& c);
  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  PolyForm& operator*=(const Scalar& c);
  PolyForm operator-() const;
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(PolyForm a, const Scalar& c) { return a *= c; }
  friend PolyForm operator*(const Scalar& c, PolyForm a) { return a *= c; }
  /// Wedge product.
  friend PolyForm operator*(const PolyForm& a, const PolyForm& b);
  friend bool operator==(const PolyForm& a, const PolyForm& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator!=(const PolyForm& a, const PolyForm& b) { return !(a == b); }

  PolyForm d() const;
  PolyForm in_characteristic(std::uint32_t prime) const;
  /// "poly * dt{j1,j2}" groups joined by " + ".
  std::string str() const;

 private:
  static void check_n(int n);
  int n_ = 0;
  std::map<FormMonomial, Scalar> terms_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// Pullback along the map sending canonical coordinate t_j (1 <= j <= n) to
/// the 0-form t_images[j-1] on the m-simplex; dt_j goes to d(t_images[j-1]).
PolyForm substitute(const PolyForm& a, int m, const std::vector<PolyForm>& t_images);
/// Pullback along the affine map Δ^m -> Δ^n with vertex k of Δ^m sent to
/// the barycentric point bary[k] (length n+1) of Δ^n.
PolyForm pullback_affine(const PolyForm& a, int m, const std::vector<Vec>& bary);

/// Face d_j: Ω_n -> Ω_{n-1} (pull back along the coface setting t_j = 0).
PolyForm face(const PolyForm& a, int j);
/// Degeneracy s_j: Ω_n -> Ω_{n+1} (pull back along t_j -> t_j + t_{j+1}).
PolyForm degeneracy(const PolyForm& a, int j);

/// ∫ over the face spanned by the sorted vertex list I, oriented by the
/// vertex order (only the degree |I|-1 part contributes).
Scalar integrate_over_face(const PolyForm& a, const std::vector<int>& I);
Scalar integrate_over_face(const PolyForm& a, std::uint32_t face_mask);

/// All monomials of the given simplex dimension with polynomial degree <= D
/// (every form degree).
std::vector<FormMonomial> monomials_up_to(int n, int D);

// ---------------------------------------------------------------------------
// Cocellular complex C_n: basis e_I over nonempty I ⊆ {0..n}, stored as
// bitmasks ordered by |I| and then lexicographically.

const std::vector<std::uint32_t>& cochain_basis(int n);
std::size_t cochain_index(int n, std::uint32_t I);
std::vector<int> vertices(std::uint32_t I);
inline int face_degree(std::uint32_t I) { return __builtin_popcount(I) - 1; }

PolyForm elementary_form(int n, std::uint32_t I);
PolyForm elementary_form(int n, const std::vector<int>& I);

/// Cochain (vector over cochain_basis(n)) -> form.
PolyForm dupont_i(int n, const Vec& c);
Vec dupont_p(const PolyForm& a);
PolyForm dupont_h(const PolyForm& a);

/// Fiber integration along (u, t) -> (1-u)t + u e_i, one factor of h.
/// Preserves forms vanishing on the faces through vertex i.
PolyForm dilation_homotopy(const PolyForm& a, int i);

/// Global sign s in h = s·Σ ω_I (h_{i_k}∘...∘h_{i_0}), fixed once so that
/// dh + hd = ip − id.
int dupont_h_sign();
/// Flips the sign without recalibrating (self-test demonstration only).
void set_dupont_h_sign_flipped(bool flipped);

/// C_n face, degeneracy and differential, computed as p∘(Ω op)∘i.
Vec cochain_face(int n, const Vec& c, int j);
Vec cochain_degeneracy(int n, const Vec& c, int j);
Vec cochain_d(int n, const Vec& c);
/// Matrices of the same maps in the e_I bases.
Matrix cochain_face_matrix(int n, int j);
Matrix cochain_degeneracy_matrix(int n, int j);
Matrix cochain_d_matrix(int n);

}  // namespace mcforge
