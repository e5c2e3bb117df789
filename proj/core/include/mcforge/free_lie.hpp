#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mcforge/dgla.hpp"
#include "mcforge/linalg.hpp"
#include "mcforge/scalar.hpp"

namespace mcforge {

/// Element of a truncated free associative algebra, stored as word ->
/// coefficient. Letters are generator indices stored as chars.
using AssocPoly = std::map<std::string, Scalar>;

/// log(exp(X) exp(Y)) in the free associative algebra on 'x','y' (degree 0),
/// truncated to words of length <= max_weight.
AssocPoly bch_associative(int max_weight);

/// The same series as a Lie polynomial: pairs (c, w) meaning c times the
/// left-normed bracket [...[[w_1, w_2], w_3], ..., w_k].
std::vector<std::pair<Scalar, std::string>> bch_left_normed(int max_weight);

/// Lyndon words of length exactly `length` over letters 0..alphabet-1,
/// ascending.
std::vector<std::string> lyndon_words(int alphabet, int length);

struct Generator {
  std::string name;
  int degree = 0;
};

/// Free graded Lie algebra on finitely many generators modulo brackets of
/// weight >= N, realized inside the tensor algebra.
///
/// Basis: P(l) for every Lyndon word l (standard bracketing) and [P(l),P(l)]
/// for every Lyndon word l of odd degree, ordered by weight and then by
/// leading word. The smallest word of P(l) is l with coefficient 1 and that
/// of [P(l),P(l)] is ll with coefficient 2, which makes coordinates a
/// triangular solve.
class FreeLieTruncation {
 public:
  struct BasisElement {
    std::string lead;  // leading (smallest) word
    bool square = false;
    int weight = 0, degree = 0;
    long left = -1, right = -1;  // factors for brackets; -1 for generators
    std::string name;
    AssocPoly expansion;
  };

  FreeLieTruncation(std::vector<Generator> generators, int N, std::uint32_t prime = 0);

  int cutoff() const { return N_; }
  std::uint32_t characteristic() const { return prime_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<BasisElement>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  /// Number of basis elements of weight < k.
  std::size_t dim_below(int k) const;
  std::vector<std::size_t> weight_indices(int w) const;
  std::size_t generator_index(std::size_t g) const { return g; }
  Vec generator(std::size_t g) const { return unit(dim(), g); }
  Vec zero() const { return zeros(dim()); }

  int word_degree(const std::string& w) const;
  AssocPoly expand(const Vec& x) const;
  /// Coordinates of a Lie polynomial; words of length >= N are dropped and
  /// reported through `truncated`. Throws if the input is not a Lie element.
  Vec normalize(const AssocPoly& p, bool* truncated = nullptr) const;
  /// Parses a bracket expression over generator names, e.g. "[b,[a,b]]".
  AssocPoly parse(const std::string& expr) const;
  Vec bracket_normalize(const std::string& expr, bool* truncated = nullptr) const;

  Vec bracket(const Vec& x, const Vec& y) const;
  const SparseVec& bracket_basis(std::size_t i, std::size_t j) const;

  /// Sets d on generators (elements of this truncation) and extends it as a
  /// derivation. Throws if d has the wrong degree.
  void set_differential(const std::vector<Vec>& on_generators);
  const std::vector<Vec>& differential_on_generators() const { return d_gens_; }
  Vec d(const Vec& x) const;
  /// d² on every generator, as violations (empty when d² = 0 below N).
  std::vector<std::string> check_d_squared() const;

  /// Finite-dimensional nilpotent dg Lie algebra on basis elements of
  /// weight < k (2 <= k <= N).
  DgLieAlgebra quotient_stage(int k) const;
  DgLieAlgebra as_dgla() const { return quotient_stage(N_); }
  /// Stages k = 2..N with the canonical projections.
  std::vector<DgLieAlgebra> tower() const;
  Matrix transition(int k) const;  // stage k+1 -> stage k

  /// Image of x under the Lie morphism sending generator g to images[g].
  Vec evaluate(const Vec& x, const DgLieAlgebra& h, const std::vector<Vec>& images) const;
  /// Same, into another truncation.
  Vec evaluate(const Vec& x, const FreeLieTruncation& h, const std::vector<Vec>& images) const;

 private:
  AssocPoly lie_bracket(const AssocPoly& p, int dp, const AssocPoly& q, int dq) const;
  void multiply_into(AssocPoly& out, const AssocPoly& p, const AssocPoly& q, const Scalar& c) const;
  AssocPoly d_word(const std::string& w) const;

  std::vector<Generator> gens_;
  int N_;
  std::uint32_t prime_;
  std::vector<BasisElement> basis_;
  std::map<std::string, std::size_t> lead_index_;
  std::vector<std::vector<std::pair<std::size_t, SparseVec>>> table_;
  std::vector<Vec> d_gens_;
  std::vector<AssocPoly> d_gens_poly_;
  std::vector<SparseVec> d_basis_;
};

/// Free nilpotent dg Lie algebra of class `cls` (brackets of cls+1 letters
/// vanish) on the given generators with zero differential.
DgLieAlgebra free_nilpotent(const std::vector<Generator>& generators, int cls, std::uint32_t prime = 0);

}  // namespace mcforge
