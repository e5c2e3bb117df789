#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcforge/linalg.hpp"

namespace mcforge {

class GradedSpace {
 public:
  GradedSpace() = default;

  void set(int degree, std::size_t dim);
  void set(int degree, std::vector<std::string> labels);
  std::size_t dim(int degree) const;
  std::size_t total_dim() const;
  /// Degrees with nonzero dimension, ascending.
  std::vector<int> degrees() const;
  const std::vector<std::string>& labels(int degree) const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.dims_ == b.dims_; }

 private:
  std::map<int, std::size_t> dims_;
  std::map<int, std::vector<std::string>> labels_;
};

/// Finite cochain complex; d(k) is the matrix of C^k -> C^{k+1}.
class CochainComplex {
 public:
  CochainComplex() = default;
  /// Validates shapes and d∘d = 0.
  CochainComplex(GradedSpace space, std::map<int, Matrix> d);

  const GradedSpace& space() const { return space_; }
  std::size_t dim(int k) const { return space_.dim(k); }
  /// Zero matrix of the right shape when there is no data for k.
  Matrix d(int k) const;
  std::vector<int> degrees() const { return space_.degrees(); }
  CochainComplex in_characteristic(std::uint32_t prime) const;

 private:
  GradedSpace space_;
  std::map<int, Matrix> d_;
};

struct Cohomology {
  std::size_t dim = 0;
  std::vector<Vec> representatives;
};

Cohomology cohomology(const CochainComplex& c, int k);
/// dim H^k computed from ranks alone (no representatives).
std::size_t cohomology_dim(const CochainComplex& c, int k);

class ChainMap {
 public:
  ChainMap() = default;
  /// Validates shapes and f d = d f.
  ChainMap(CochainComplex source, CochainComplex target, std::map<int, Matrix> f);

  const CochainComplex& source() const { return source_; }
  const CochainComplex& target() const { return target_; }
  Matrix f(int k) const;

  friend ChainMap compose(const ChainMap& g, const ChainMap& f);

 private:
  CochainComplex source_, target_;
  std::map<int, Matrix> f_;
};

ChainMap identity_map(const CochainComplex& c);
/// cone(f)^k = C^{k+1} ⊕ D^k with d(c, x) = (-dc, f c + dx).
CochainComplex mapping_cone(const ChainMap& f);
/// f is a quasi-isomorphism iff its mapping cone is acyclic.
bool is_quasi_iso(const ChainMap& f);
bool is_acyclic(const CochainComplex& c);

/// Subcomplex spanned per degree by the given vectors (which must span a
/// d-stable subspace); the result is expressed in the given bases together
/// with the inclusion map.
struct Subcomplex {
  CochainComplex complex;
  ChainMap inclusion;
};
Subcomplex subcomplex(const CochainComplex& c, const std::map<int, std::vector<Vec>>& spanning);

/// Quotient C / S for a d-stable subspace S given by spanning vectors; the
/// quotient basis is the set of standard basis vectors not among the pivots
/// of S, and the projection is returned alongside.
struct Quotient {
  CochainComplex complex;
  ChainMap projection;
  /// Per degree: the standard basis indices kept in the quotient.
  std::map<int, std::vector<std::size_t>> kept;
};
Quotient quotient(const CochainComplex& c, const std::map<int, std::vector<Vec>>& spanning);

}  // namespace mcforge
