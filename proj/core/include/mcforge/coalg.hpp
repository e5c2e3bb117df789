#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcforge/complex.hpp"
#include "mcforge/dgla.hpp"
#include "mcforge/linalg.hpp"

namespace mcforge {

/// Finite-dimensional dg Lie coalgebra. Structure constants are the plain
/// transpose of those of the dual Lie algebra C^∨ (basis e^i of degree
/// -|c_i|): coefficient of c_i ⊗ c_j in δ(c_k) = coefficient of e^k in
/// [e^i, e^j], and coefficient of c_i in d(c_k) = coefficient of e^k in
/// d(e^i). The coalgebra axioms are by definition the transposed Lie axioms.
class LieCoalgebra {
 public:
  LieCoalgebra() = default;
  /// d_images[k] = d(c_k); cobrackets[...].coeffs[k] = coefficient of
  /// c_i ⊗ c_j in δ(c_k), with both orders (i,j), (j,i) listed.
  LieCoalgebra(std::vector<BasisElement> basis, std::vector<Vec> d_images, const std::vector<BracketEntry>& cobrackets,
               std::uint32_t prime = 0);

  std::size_t dim() const { return basis_.size(); }
  std::uint32_t characteristic() const { return dual_.characteristic(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_[i].degree; }

  Vec d(const Vec& c) const;
  /// δ(c_k) as (i, j, coefficient) triples.
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> cobracket_basis(std::size_t k) const;
  std::vector<Vec> d_images() const;
  std::vector<BracketEntry> cobracket_entries() const;
  CochainComplex complex() const;
  const DgLieAlgebra& dual() const { return dual_; }

  /// Ascending filtration: stages[n-1] spans F_n.
  std::optional<Filtration> declared_filtration;

 private:
  std::vector<BasisElement> basis_;
  DgLieAlgebra dual_;
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Scalar>>> delta_;
};

std::vector<std::string> check_coalgebra_axioms(const LieCoalgebra& c);

DgLieAlgebra dualize(const LieCoalgebra& c);
LieCoalgebra dualize_alg(const DgLieAlgebra& g);

/// F_1 = ker δ, F_n = δ^{-1}(F_{n-1} ⊗ C), computed degreewise. Throws
/// NotNilpotent when the filtration stops below C.
Filtration coradical_filtration(const LieCoalgebra& c);
/// (F_n C)^⊥ in the dual Lie algebra, n = 1..length.
Filtration orthogonal_filtration(const LieCoalgebra& c, const Filtration& f);
/// Exhaustive, d(F_n) ⊆ F_n, δ(F_n) ⊆ Σ_{a+b=n} F_a ⊗ F_b.
std::vector<std::string> check_coalgebra_filtration(const LieCoalgebra& c, const Filtration& f);

/// Homogeneous basis adapted to an ascending filtration, with weights
/// (weight of b = least n with b ∈ F_n).
struct AdaptedBasis {
  std::vector<Vec> vectors;
  std::vector<int> weights;
  Matrix change;   // columns are the vectors
  Matrix inverse;  // coordinates in the adapted basis
};
AdaptedBasis adapted_basis(const LieCoalgebra& c, const Filtration& f);
/// The same coalgebra written in another basis (columns of `b`).
LieCoalgebra change_basis(const LieCoalgebra& c, const Matrix& b, const Matrix& b_inverse);

struct CoalgebraMorphism {
  LieCoalgebra source, target;
  Matrix matrix;  // target.dim x source.dim

  Vec apply(const Vec& c) const { return matrix.apply(c); }
  std::vector<std::string> check() const;
};

/// φ: g -> h gives φ^∨: h^∨ -> g^∨ (plain transpose).
CoalgebraMorphism dualize_morphism(const DgLieMorphism& phi);
DgLieMorphism dualize(const CoalgebraMorphism& f);

/// Cobar construction Ω_κ C: free graded-commutative algebra on generators
/// θ_k = s c_k (degree |c_k| + 1) with
///   dθ_k = -Σ_i (-1)^{|θ_i|} d_{ki} θ_i - ½ Σ_{i,j} (-1)^{|c_i||θ_j|} δ^k_{ij} θ_i θ_j
/// where d(c_k) = Σ d_{ki} c_i. Generators are taken in a basis adapted to
/// the coradical filtration, and a monomial has total weight = sum of the
/// generator weights. Total weight <= w spans a subcomplex; everything up
/// to weight W is kept.
class CdgaTruncation {
 public:
  using Monomial = std::vector<std::uint32_t>;  // nondecreasing generator indices

  CdgaTruncation(const LieCoalgebra& c, int W);

  int cutoff() const { return W_; }
  const LieCoalgebra& adapted() const { return adapted_; }
  const AdaptedBasis& basis() const { return basis_; }
  std::size_t generator_count() const { return gen_degree_.size(); }
  int generator_degree(std::size_t g) const { return gen_degree_[g]; }
  int generator_weight(std::size_t g) const { return basis_.weights[g]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  int weight(const Monomial& m) const;
  int degree(const Monomial& m) const;
  std::size_t index(const Monomial& m) const;  // throws if absent

  /// d of a monomial, as (monomial index, coefficient); weight-preserving
  /// filtration guarantees the result stays inside the truncation.
  const std::vector<std::pair<std::size_t, Scalar>>& d(std::size_t m) const { return d_[m]; }
  /// Product of two monomials with its Koszul sign (0 when it vanishes).
  std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const;

  /// Subcomplex of total weight <= w (w <= W).
  CochainComplex piece(int w) const;
  /// Linear part of d on the generators: matrix with entry (i, k) the
  /// coefficient of θ_i in dθ_k.
  Matrix linear_part() const;

 private:
  LieCoalgebra adapted_;
  AdaptedBasis basis_;
  int W_;
  std::vector<int> gen_degree_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> d_;
};

/// Ω_κ f restricted to the weight <= w subcomplexes, w = 1..W.
std::vector<ChainMap> cobar_map(const CoalgebraMorphism& f, const CdgaTruncation& source, const CdgaTruncation& target);

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

struct WeakEquivalenceResult {
  Verdict verdict = Verdict::inconclusive;
  bool underlying_qi = false;
  bool filtered_qi = false;
  std::vector<bool> cobar_qi;  // weights 1..W
  std::vector<std::string> detail;
};

/// yes: f is a filtered quasi-isomorphism for the coradical filtrations and
/// Ω_κ f is a quasi-isomorphism in every weight <= W. no: f is not even a
/// quasi-isomorphism (weak equivalences are quasi-isomorphisms).
/// inconclusive: anything else.
WeakEquivalenceResult is_weak_equivalence_upto(const CoalgebraMorphism& f, int W);

/// Surrogate for "f is a fibration": f is degreewise surjective,
/// equivalently its algebra-side dual is injective.
bool is_fibration_surrogate(const CoalgebraMorphism& f);

}  // namespace mcforge
