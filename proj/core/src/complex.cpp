#include "mcforge/complex.hpp"

#include "mcforge/error.hpp"

namespace mcforge {

void GradedSpace::set(int degree, std::size_t dim) {
  if (dim == 0) {
    dims_.erase(degree);
    labels_.erase(degree);
    return;
  }
  dims_[degree] = dim;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("e" + std::to_string(degree) + "_" + std::to_string(i));
  labels_[degree] = std::move(names);
}

void GradedSpace::set(int degree, std::vector<std::string> labels) {
  if (labels.empty()) {
    dims_.erase(degree);
    labels_.erase(degree);
    return;
  }
  dims_[degree] = labels.size();
  labels_[degree] = std::move(labels);
}

std::size_t GradedSpace::dim(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? 0 : it->second;
}

std::size_t GradedSpace::total_dim() const {
  std::size_t n = 0;
  for (const auto& [k, d] : dims_) n += d;
  return n;
}

std::vector<int> GradedSpace::degrees() const {
  std::vector<int> out;
  for (const auto& [k, d] : dims_) out.push_back(k);
  return out;
}

const std::vector<std::string>& GradedSpace::labels(int degree) const {
  static const std::vector<std::string> none;
  auto it = labels_.find(degree);
  return it == labels_.end() ? none : it->second;
}

CochainComplex::CochainComplex(GradedSpace space, std::map<int, Matrix> d)
    : space_(std::move(space)), d_(std::move(d)) {
  for (auto it = d_.begin(); it != d_.end();) {
    int k = it->first;
    if (it->second.cols() != space_.dim(k) || it->second.rows() != space_.dim(k + 1))
      throw InvalidInput("differential in degree " + std::to_string(k) + " has the wrong shape");
    if (it->second.is_zero())
      it = d_.erase(it);
    else
      ++it;
  }
  for (const auto& [k, m] : d_) {
    auto next = d_.find(k + 1);
    if (next != d_.end() && !(next->second * m).is_zero())
      throw InvalidInput("d∘d != 0 starting in degree " + std::to_string(k));
  }
}

Matrix CochainComplex::d(int k) const {
  auto it = d_.find(k);
  if (it != d_.end()) return it->second;
  return Matrix(space_.dim(k + 1), space_.dim(k));
}

CochainComplex CochainComplex::in_characteristic(std::uint32_t prime) const {
  std::map<int, Matrix> d;
  for (const auto& [k, m] : d_) d.emplace(k, m.in_characteristic(prime));
  return CochainComplex(space_, std::move(d));
}

Cohomology cohomology(const CochainComplex& c, int k) {
  Cohomology h;
  if (c.dim(k) == 0) return h;
  Span image(c.dim(k));
  Matrix in = c.d(k - 1);
  Matrix in_t = in.transpose();
  for (std::size_t j = 0; j < in_t.rows(); ++j) image.add(in_t.row(j));
  for (auto& z : kernel(c.d(k))) {
    if (image.add(z)) h.representatives.push_back(std::move(z));
  }
  h.dim = h.representatives.size();
  return h;
}

std::size_t cohomology_dim(const CochainComplex& c, int k) {
  std::size_t n = c.dim(k);
  if (n == 0) return 0;
  return n - rank(c.d(k)) - rank(c.d(k - 1));
}

ChainMap::ChainMap(CochainComplex source, CochainComplex target, std::map<int, Matrix> f)
    : source_(std::move(source)), target_(std::move(target)), f_(std::move(f)) {
  for (const auto& [k, m] : f_)
    if (m.cols() != source_.dim(k) || m.rows() != target_.dim(k))
      throw InvalidInput("chain map in degree " + std::to_string(k) + " has the wrong shape");
  std::vector<int> ks = source_.degrees();
  for (int k : target_.degrees()) ks.push_back(k - 1);
  for (int k : ks) {
    if (!(this->f(k + 1) * source_.d(k) == target_.d(k) * this->f(k)))
      throw InvalidInput("map does not commute with d in degree " + std::to_string(k));
  }
}

Matrix ChainMap::f(int k) const {
  auto it = f_.find(k);
  if (it != f_.end()) return it->second;
  return Matrix(target_.dim(k), source_.dim(k));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::map<int, Matrix> m;
  for (int k : f.source().degrees()) m.emplace(k, g.f(k) * f.f(k));
  return ChainMap(f.source(), g.target(), std::move(m));
}

ChainMap identity_map(const CochainComplex& c) {
  std::map<int, Matrix> m;
  for (int k : c.degrees()) m.emplace(k, Matrix::identity(c.dim(k)));
  return ChainMap(c, c, std::move(m));
}

CochainComplex mapping_cone(const ChainMap& f) {
  const auto& C = f.source();
  const auto& D = f.target();
  std::vector<int> ks;
  for (int k : C.degrees()) ks.push_back(k - 1);
  for (int k : D.degrees()) ks.push_back(k);
  GradedSpace space;
  for (int k : ks) space.set(k, C.dim(k + 1) + D.dim(k));
  std::map<int, Matrix> d;
  for (int k : space.degrees()) {
    std::size_t c0 = C.dim(k + 1), c1 = C.dim(k + 2);
    Matrix m(space.dim(k + 1), space.dim(k));
    Matrix dc = C.d(k + 1), fk = f.f(k + 1), dd = D.d(k);
    for (std::size_t i = 0; i < dc.rows(); ++i)
      for (const auto& [j, v] : dc.row(i).entries()) m.add(i, j, -v);
    for (std::size_t i = 0; i < fk.rows(); ++i)
      for (const auto& [j, v] : fk.row(i).entries()) m.add(c1 + i, j, v);
    for (std::size_t i = 0; i < dd.rows(); ++i)
      for (const auto& [j, v] : dd.row(i).entries()) m.add(c1 + i, c0 + j, v);
    d.emplace(k, std::move(m));
  }
  return CochainComplex(std::move(space), std::move(d));
}

bool is_acyclic(const CochainComplex& c) {
  std::map<int, std::size_t> ranks;
  auto rk = [&](int k) {
    auto it = ranks.find(k);
    if (it != ranks.end()) return it->second;
    std::size_t r = (c.dim(k) == 0 || c.dim(k + 1) == 0) ? 0 : rank(c.d(k));
    ranks.emplace(k, r);
    return r;
  };
  for (int k : c.degrees())
    if (c.dim(k) != rk(k) + rk(k - 1)) return false;
  return true;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(mapping_cone(f)); }

Subcomplex subcomplex(const CochainComplex& c, const std::map<int, std::vector<Vec>>& spanning) {
  std::map<int, std::vector<Vec>> basis;
  for (const auto& [k, vs] : spanning) {
    Span s(c.dim(k));
    for (const auto& v : vs)
      if (s.add(v)) basis[k].push_back(v);
  }
  GradedSpace space;
  for (const auto& [k, b] : basis) space.set(k, b.size());
  std::map<int, Matrix> d, inc;
  for (const auto& [k, b] : basis) {
    Matrix dk = c.d(k);
    auto next = basis.find(k + 1);
    Matrix coords(space.dim(k + 1), b.size());
    Matrix cols = next == basis.end() ? Matrix(c.dim(k + 1), 0) : Matrix::from_columns(c.dim(k + 1), next->second);
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vec img = dk.apply(b[j]);
      if (is_zero(img)) continue;
      auto x = solve(cols, img);
      if (!x) throw InvalidInput("subspace is not closed under d in degree " + std::to_string(k));
      for (std::size_t i = 0; i < x->size(); ++i)
        if (!(*x)[i].is_zero()) coords.add(i, j, (*x)[i]);
    }
    d.emplace(k, std::move(coords));
    inc.emplace(k, Matrix::from_columns(c.dim(k), b));
  }
  CochainComplex sub(std::move(space), std::move(d));
  ChainMap i(sub, c, std::move(inc));
  return {std::move(sub), std::move(i)};
}

Quotient quotient(const CochainComplex& c, const std::map<int, std::vector<Vec>>& spanning) {
  std::map<int, std::vector<SparseVec>> rref;
  std::map<int, std::vector<std::size_t>> kept;
  for (int k : c.degrees()) {
    Span s(c.dim(k));
    auto it = spanning.find(k);
    if (it != spanning.end())
      for (const auto& v : it->second) s.add(v);
    rref[k] = s.rref();
    std::vector<bool> piv(c.dim(k), false);
    for (const auto& r : rref[k]) piv[r.leading()] = true;
    for (std::size_t i = 0; i < c.dim(k); ++i)
      if (!piv[i]) kept[k].push_back(i);
  }
  // Projection: clear pivot coordinates with the reduced rows, then read the
  // remaining coordinates.
  auto project = [&](int k, const Vec& v) {
    Vec w = v;
    for (const auto& r : rref[k]) {
      Scalar c0 = w[r.leading()];
      if (c0.is_zero()) continue;
      for (const auto& [j, a] : r.entries()) w[j] -= c0 * a;
    }
    Vec out;
    for (std::size_t i : kept[k]) out.push_back(w[i]);
    return out;
  };
  GradedSpace space;
  for (const auto& [k, idx] : kept) {
    std::vector<std::string> names;
    for (std::size_t i : idx) names.push_back(c.space().labels(k).at(i));
    space.set(k, std::move(names));
  }
  std::map<int, Matrix> d, proj;
  for (const auto& [k, idx] : kept) {
    if (idx.empty()) continue;
    Matrix dk = c.d(k);
    std::vector<Vec> cols;
    for (std::size_t i : idx) cols.push_back(project(k + 1, dk.apply(unit(c.dim(k), i))));
    d.emplace(k, Matrix::from_columns(space.dim(k + 1), cols));
    std::vector<Vec> pcols;
    for (std::size_t i = 0; i < c.dim(k); ++i) pcols.push_back(project(k, unit(c.dim(k), i)));
    proj.emplace(k, Matrix::from_columns(idx.size(), pcols));
  }
  CochainComplex q(std::move(space), std::move(d));
  ChainMap p(c, q, std::move(proj));
  return {std::move(q), std::move(p), std::move(kept)};
}

}  // namespace mcforge
