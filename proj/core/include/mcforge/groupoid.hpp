#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mcforge/dgla.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/transfer.hpp"

namespace mcforge {

/// Element Σ e_i ⊗ coeffs[i] of g ⊗ Ω_n. An MC simplex has total degree 1,
/// i.e. coeffs[i] has form degree 1 - |e_i|, and satisfies the MC equation.
struct MCSimplex {
  int n = 0;
  std::vector<PolyForm> coeffs;

  friend bool operator==(const MCSimplex& a, const MCSimplex& b) { return a.n == b.n && a.coeffs == b.coeffs; }
  friend bool operator!=(const MCSimplex& a, const MCSimplex& b) { return !(a == b); }
  bool is_zero() const;
};

MCSimplex zero_simplex(const DgLieAlgebra& g, int n);
/// The 0-simplex of an element of g (Ω_0 = k).
MCSimplex constant_simplex(const DgLieAlgebra& g, const Vec& x);
/// Value at the 0-simplex; requires n = 0.
Vec point_value(const DgLieAlgebra& g, const MCSimplex& x);

MCSimplex operator+(const MCSimplex& a, const MCSimplex& b);
MCSimplex operator-(const MCSimplex& a, const MCSimplex& b);
MCSimplex scaled(const MCSimplex& a, const Scalar& c);

/// d(x ⊗ α) = dx ⊗ α + (-1)^{|x|} x ⊗ dα.
MCSimplex simplex_d(const DgLieAlgebra& g, const MCSimplex& x);
/// [x ⊗ α, y ⊗ β] = (-1)^{|α||y|} [x, y] ⊗ αβ.
MCSimplex simplex_bracket(const DgLieAlgebra& g, const MCSimplex& x, const MCSimplex& y);
/// dX + ½[X, X].
MCSimplex curvature(const DgLieAlgebra& g, const MCSimplex& x);

/// Throws InvalidInput unless every coefficient has the form degree giving
/// total degree `degree`.
void check_total_degree(const DgLieAlgebra& g, const MCSimplex& x, int degree = 1);
/// Degree is checked first (mismatch throws), then the MC residual.
bool is_mc_simplex(const DgLieAlgebra& g, const MCSimplex& x);

MCSimplex face(const MCSimplex& x, int j);
MCSimplex degeneracy(const MCSimplex& x, int j);
/// (φ ⊗ 1)(X).
MCSimplex apply_morphism(const DgLieMorphism& phi, const MCSimplex& x);

/// One "name: form" line per nonzero coefficient, or "0".
std::string str(const DgLieAlgebra& g, const MCSimplex& x);
/// Coefficient forms as strings, one per basis element.
std::vector<std::string> coefficient_strings(const MCSimplex& x);

/// The 1-simplex x(t) - λ dt with x(t) the gauge flow of tλ from x0
/// (x' = [λ, x] - dλ), so face 1 is x0 and face 0 is gauge_flow(λ, x0).
MCSimplex gauge_simplex(const DgLieAlgebra& g, const Vec& lambda, const Vec& x0);

struct HornFill {
  MCSimplex simplex;
  MCSimplex extension;  // linear extension of the horn before correction
  int iterations = 0;   // correction steps that changed the candidate
};

/// Fills the horn Λ^n_k given faces[j] for every j != k.
///
/// The horn is first extended linearly (pulling face j back along the
/// affine map merging vertex j into vertex k), then corrected by the fixed
/// point Y = H(curv(X0) + [X0, Y] + ½[Y, Y]) where H is the dilation
/// homotopy towards vertex k, which contracts the forms vanishing on the
/// horn. Nilpotency makes the iteration stop.
HornFill horn_fill(const DgLieAlgebra& g, int n, int k, const std::map<int, MCSimplex>& faces);

/// Relation "joined by an MC 1-simplex x(t) + z(t)dt with z of polynomial
/// degree <= z_degree", closed transitively. Over F_p the path x(t) is
/// determined by x(0) and z through k x_k = [t^{k-1}](dz + [x, z]).
struct OneSimplexPi0 {
  Pi0Result classes;
  std::size_t simplices = 0;   // 1-simplices built and verified
  int max_poly_degree = 0;     // largest polynomial degree of x(t)
};
OneSimplexPi0 pi0_one_simplices(const DgLieAlgebra& g, int z_degree = 1,
                                double budget = kDefaultEnumerationBudget);

/// Dg Lie morphisms mc_n -> g given by generator images.
struct HomMcn {
  int n = 0;
  /// Defining system: one line per generator, d(phi(x)) = phi(d x).
  std::vector<std::string> equations;
  /// All solutions (over F_p only; empty over Q).
  std::vector<std::vector<Vec>> morphisms;
};

/// Throws InvalidInput when the truncation of mc_n is too shallow for g
/// (its cutoff must reach the nilpotency degree of g).
void check_stage(const DgLieAlgebra& g, const McnAlgebra& m);
/// d∘φ - φ∘d on every generator, as violations.
std::vector<std::string> check_mcn_morphism(const DgLieAlgebra& g, const McnAlgebra& m, const std::vector<Vec>& images);
HomMcn hom_mcn(const DgLieAlgebra& g, const McnAlgebra& m, double budget = kDefaultEnumerationBudget);
/// φ ⊗ 1 applied to the universal element Φ of mc_n ⊗ Ω_n.
MCSimplex inclusion_to_mcn(const DgLieAlgebra& g, const McnAlgebra& m, const std::vector<Vec>& images);

}  // namespace mcforge
