#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcforge/dgla.hpp"
#include "mcforge/forms.hpp"
#include "mcforge/free_lie.hpp"
#include "mcforge/linalg.hpp"

namespace mcforge {

/// Operations transferred from Ω_n to C_n along the Dupont contraction.
///
/// Everything lives on the suspension sC_n (|sω_I| = |I| - 2) where every
/// operation has degree +1:
///   b_1(sa) = -s(da),  b_2(sa, sb) = (-1)^{|a|} s(ab),
///   λ_1 = i,  λ_k = Σ_{j} -(h_s b_2)(λ_j ⊗ λ_{k-j}),  b'_k = Σ_j p b_2(λ_j ⊗ λ_{k-j})
/// with h_s(sa) = -s(ha). The λ_k have degree 0, so no Koszul sign appears
/// when they are applied side by side.
class TransferredOps {
 public:
  TransferredOps(int n, int K);

  int n() const { return n_; }
  int max_arity() const { return K_; }
  std::size_t dim() const { return basis_.size(); }
  /// Degree of sω_I for the i-th cochain basis element.
  int shifted_degree(std::size_t i) const { return face_degree(basis_[i]) - 1; }

  /// b'_k on a tuple of basis indices (1 <= k <= K), as a cochain vector.
  Vec op(const std::vector<std::size_t>& tuple) const;
  /// Nonzero entries of b'_k, in lexicographic tuple order.
  std::vector<std::pair<std::vector<std::size_t>, Vec>> table(int k) const;

  /// Σ_{r+s+t=k} b'_{r+1+t}(1^r ⊗ b'_s ⊗ 1^t) on every basis tuple of
  /// length k <= upto; returns the violating tuples.
  std::vector<std::string> check_ainfty(int upto) const;
  /// b'_k on sums of (p,q)-shuffles with Koszul signs, k <= upto.
  std::vector<std::string> check_shuffles(int upto) const;

  /// Plain text dump of all tables (the golden format).
  std::string dump() const;

 private:
  const PolyForm& lambda(const std::vector<std::size_t>& tuple) const;

  int n_, K_;
  std::vector<std::uint32_t> basis_;
  std::vector<std::map<std::vector<std::size_t>, Vec>> ops_;  // ops_[k]
  mutable std::map<std::vector<std::size_t>, PolyForm> lambda_;
};

/// Element of L ⊗ Ω_n: free Lie basis index -> form coefficient.
using LieForm = std::map<std::size_t, PolyForm>;

/// Sign of the pairing between the generator x_I of mc_n and sω_I:
/// x_I = (-1)^{deg ω_I} (sω_I)^∨. The only sign table shared by transfer and
/// the coalgebra side.
inline int suspension_sign(std::uint32_t I) { return face_degree(I) % 2 ? -1 : 1; }

/// The cosimplicial Lie algebra mc_n truncated at bracket weight N: free on
/// x_I (degree 2 - |I|) with the differential dual to the transferred
/// operations. `phi` is the universal Maurer-Cartan element of mc_n ⊗ Ω_n
/// built from τ = Σ ε_I x_I ⊗ ω_I by Φ = iτ + h(½[Φ,Φ]).
struct McnAlgebra {
  int n = 0;
  std::shared_ptr<const FreeLieTruncation> lie;
  LieForm phi;

  std::size_t generator_of(std::uint32_t I) const { return cochain_index(n, I); }
};

McnAlgebra build_mcn(int n, int N);

/// Generator names: n = 0 "alpha"; n = 1 "beta0", "beta1", "lambda";
/// otherwise "a0", "a01", ...
std::vector<Generator> mcn_generators(int n);

LieForm lie_form_bracket(const FreeLieTruncation& L, const LieForm& x, const LieForm& y);
LieForm lie_form_d(const FreeLieTruncation& L, const LieForm& x);
/// dΦ + ½[Φ,Φ] for the universal element (zero below the cutoff).
LieForm mcn_curvature(const McnAlgebra& m);

/// Morphism of truncated free Lie algebras given on generators.
struct LieTruncationMap {
  std::shared_ptr<const FreeLieTruncation> source, target;
  std::vector<Vec> images;  // one per source generator

  Vec apply(const Vec& x) const { return source->evaluate(x, *target, images); }
  /// Matrix of the induced map between quotient stages of weight < k.
  Matrix stage_matrix(int k) const;
  DgLieMorphism stage(int k) const;
  /// d∘f - f∘d on every source generator.
  std::vector<std::string> check() const;
};

LieTruncationMap compose(const LieTruncationMap& g, const LieTruncationMap& f);

/// Coefficients B_k/k! of x/(e^x - 1), k = 0..m.
std::vector<Scalar> bernoulli_series(int m);
/// Lawrence-Sullivan series [λ,b] + Σ B_k/k! ad_λ^k(b - a) in the mc_1
/// truncation, with (a, b) = (β0, β1), or (β1, β0) when `swapped`.
Vec lawrence_sullivan_dlambda(const McnAlgebra& mc1, bool swapped);

/// Coface/codegeneracy style maps mc_m -> mc_n dual to a linear map
/// C_n -> C_m given by its matrix in the e_I bases.
LieTruncationMap dual_of_cochain_map(const McnAlgebra& source, const McnAlgebra& target, const Matrix& c_map);
/// mc_{n-1} -> mc_n dual to the face d_j: C_n -> C_{n-1}.
LieTruncationMap coface(const McnAlgebra& source, const McnAlgebra& target, int j);
/// mc_{n+1} -> mc_n dual to the degeneracy s_j: C_n -> C_{n+1}.
LieTruncationMap codegeneracy(const McnAlgebra& source, const McnAlgebra& target, int j);

/// Free product of k copies of mc_0, generators alpha0..alpha{k-1}.
McnAlgebra mc0_coproduct(int copies, int N);

struct CylinderMaps {
  McnAlgebra mc0, mc1, mc0_pair;
  LieTruncationMap i, t;  // i: mc0_pair -> mc1, t: mc1 -> mc0
};
CylinderMaps cylinder_maps(int N);

struct FrameMaps {
  McnAlgebra mc0, mcn, mc0_copies;
  LieTruncationMap w;  // mc_n -> mc_0, dual of C_0 -> C_n, 1 -> Σ ω_i
  LieTruncationMap p;  // mc_0^{⊔(n+1)} -> mc_n, dual of restriction to vertices
};
FrameMaps frame_maps(int n, int N);

}  // namespace mcforge
