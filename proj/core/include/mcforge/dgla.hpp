#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcforge/complex.hpp"
#include "mcforge/linalg.hpp"

namespace mcforge {

struct BasisElement {
  std::string name;
  int degree = 0;
};

struct BracketEntry {
  std::size_t i = 0, j = 0;
  Vec coeffs;  // [e_i, e_j] in the basis
};

/// Descending filtration F_1 ⊇ F_2 ⊇ ... given by spanning vectors; stages
/// past the stored ones are zero.
struct Filtration {
  std::vector<std::vector<Vec>> stages;  // stages[n-1] spans F_n

  const std::vector<Vec>& F(std::size_t n) const;
  std::size_t length() const { return stages.size(); }
};

/// Finite-dimensional graded dg Lie algebra with an ordered homogeneous basis.
class DgLieAlgebra {
 public:
  DgLieAlgebra() = default;
  /// d_images[i] is d(e_i). No axioms are checked here, see check_axioms.
  DgLieAlgebra(std::vector<BasisElement> basis, std::vector<Vec> d_images,
               const std::vector<BracketEntry>& brackets, std::uint32_t prime = 0);

  std::size_t dim() const { return basis_.size(); }
  std::uint32_t characteristic() const { return prime_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  const std::string& name(std::size_t i) const { return basis_[i].name; }
  std::vector<std::size_t> indices_of_degree(int k) const;
  std::vector<int> degrees() const;

  const SparseVec& d_basis(std::size_t i) const { return d_[i]; }
  /// [e_i, e_j]; empty when zero.
  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const;
  Vec d(const Vec& x) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  Vec zero() const { return zeros(dim()); }
  Vec basis_vector(std::size_t i) const { return unit(dim(), i); }
  /// Degree of a nonzero homogeneous vector; throws if it is not homogeneous.
  int degree_of(const Vec& x) const;
  bool is_homogeneous(const Vec& x, int k) const;

  /// Underlying cochain complex; degree k uses the basis indices of degree k
  /// in ascending order.
  CochainComplex complex() const;
  /// Vector of the complex in degree k <-> vector of g.
  Vec restrict_to_degree(const Vec& x, int k) const;
  Vec extend_from_degree(const Vec& xk, int k) const;

  DgLieAlgebra in_characteristic(std::uint32_t prime) const;
  /// Same bracket, differential replaced.
  DgLieAlgebra with_differential(std::vector<Vec> d_images) const;
  std::vector<BracketEntry> bracket_entries() const;

  std::optional<Filtration> declared_filtration;

 private:
  std::vector<BasisElement> basis_;
  std::vector<SparseVec> d_;
  std::vector<std::vector<std::pair<std::size_t, SparseVec>>> table_;
  std::uint32_t prime_ = 0;
};

struct AxiomViolation {
  std::string kind;  // antisymmetry | jacobi | leibniz | d2 | degree
  std::vector<std::size_t> indices;
  std::string str() const;
};

std::vector<AxiomViolation> check_axioms(const DgLieAlgebra& g);

/// Linear map between dg Lie algebras; matrix is target.dim x source.dim.
struct DgLieMorphism {
  DgLieAlgebra source, target;
  Matrix matrix;

  Vec apply(const Vec& x) const { return matrix.apply(x); }
  /// Degree-preserving, commutes with d and brackets (violations as text).
  std::vector<std::string> check() const;
};

DgLieMorphism identity_morphism(const DgLieAlgebra& g);
DgLieMorphism compose(const DgLieMorphism& g, const DgLieMorphism& f);

Vec mc_residual(const DgLieAlgebra& g, const Vec& x);
bool is_mc(const DgLieAlgebra& g, const Vec& x);

/// Time-1 flow of x' = [λ, x] − dλ starting at x0; the series terminates by
/// nilpotency.
Vec gauge_flow(const DgLieAlgebra& g, const Vec& lambda, const Vec& x0);
Vec bch(const DgLieAlgebra& g, const Vec& u, const Vec& v);

/// Lower central series F_1 = g, F_{n+1} = [g, F_n]; the last stored stage
/// is nonzero.
Filtration canonical_filtration(const DgLieAlgebra& g);
/// Least N with F_N = 0; throws NotNilpotent when the series stalls.
int nilpotency_degree(const DgLieAlgebra& g);
/// Violations of nesting, d-stability, [F_i,F_j] ⊆ F_{i+j}, termination.
std::vector<std::string> check_filtration(const DgLieAlgebra& g, const Filtration& f);

/// Algebra spanned by the given homogeneous vectors (closed under d and
/// bracket), in the given basis; names are "v0", "v1", ... unless provided.
DgLieAlgebra subalgebra(const DgLieAlgebra& g, const std::vector<Vec>& basis,
                        std::vector<std::string> names = {});
struct QuotientAlgebra {
  DgLieAlgebra algebra;
  Matrix projection;                 // quotient.dim x g.dim
  std::vector<std::size_t> kept;     // basis indices of g kept as quotient basis
};
/// g / I for a dg ideal I given by spanning vectors.
QuotientAlgebra quotient_algebra(const DgLieAlgebra& g, const std::vector<Vec>& ideal);

DgLieAlgebra twist(const DgLieAlgebra& g, const Vec& x);
struct Component {
  DgLieAlgebra algebra;
  std::vector<Vec> inclusion;  // basis of the component as vectors of g
};
/// ... -> g^{-1} -> ker d^x -> 0 with the inherited bracket.
Component component_at(const DgLieAlgebra& g, const Vec& x);

/// Canonical tower g/F_2 <- g/F_3 <- ... <- g/F_M.
struct Tower {
  std::vector<QuotientAlgebra> stages;  // stages[s] = g / F_{s+2}
  std::vector<Matrix> transitions;      // transitions[s]: stage s+1 -> stage s
};
Tower canonical_tower(const DgLieAlgebra& g, int top = 0);
/// Stage-wise maps g/F_n -> h/F_n induced by φ.
std::vector<DgLieMorphism> tower_morphism(const DgLieMorphism& phi, const Tower& tg, const Tower& th);

struct FilteredQiResult {
  bool value = false;
  std::string detail;
  /// Secondary diagnostic: associated graded pieces F_n/F_{n+1} are all qi.
  bool graded_pieces_qi = false;
};
/// Quasi-iso on g and on every g/F_n; throws if φ is not filtered.
FilteredQiResult is_filtered_qi(const DgLieMorphism& phi, const Filtration& fg, const Filtration& fh);
/// Matrix of the chain map induced by φ on the underlying complexes.
ChainMap underlying_chain_map(const DgLieMorphism& phi);

/// Arithmetic kernel for char-p enumeration: residues held as uint32.
class ModpAlgebra {
 public:
  explicit ModpAlgebra(const DgLieAlgebra& g);

  using Elt = std::vector<std::uint32_t>;
  std::uint32_t prime() const { return p_; }
  Elt d(const Elt& x) const;
  Elt bracket(const Elt& x, const Elt& y) const;
  Elt mc_residual(const Elt& x) const;
  Elt gauge_flow(const Elt& lambda, const Elt& x0) const;
  Elt from(const Vec& v) const;
  Vec to(const Elt& e) const;

 private:
  std::uint32_t p_;
  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> d_;
  std::vector<std::vector<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::uint32_t>>>>> table_;
  std::vector<std::uint32_t> inv_;
  std::uint32_t half_;
};

struct Pi0Result {
  std::size_t count = 0;
  std::vector<Vec> representatives;  // smallest element (in enumeration order) of each orbit
  std::vector<Vec> mc_elements;
  std::vector<std::size_t> orbit_of;  // parallel to mc_elements, index into representatives
  std::size_t mc_count() const { return mc_elements.size(); }
  /// Orbit index of an MC element; throws if it is not one.
  std::size_t orbit(const Vec& x) const;
};

/// Budget on the enumeration size p^{dim g^1 + dim g^0}.
inline constexpr double kDefaultEnumerationBudget = 5e7;
Pi0Result pi0_bruteforce(const DgLieAlgebra& g, double budget = kDefaultEnumerationBudget);

struct Pi0Comparison {
  bool injective = false, surjective = false;
  std::vector<std::size_t> image;  // orbit index in target for each source orbit
  bool bijective() const { return injective && surjective; }
};
Pi0Comparison compare_pi0(const DgLieMorphism& phi, const Pi0Result& src, const Pi0Result& dst);

struct BfmtResult {
  bool value = false;
  std::vector<std::string> stages;  // one line per stage
};
/// Per tower stage: π0 bijection and quasi-iso of components at every MC
/// representative (char-p data required).
BfmtResult is_bfmt_weak_equivalence(const std::vector<DgLieMorphism>& stages,
                                    double budget = kDefaultEnumerationBudget);

}  // namespace mcforge
