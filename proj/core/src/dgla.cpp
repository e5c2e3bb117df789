#include "mcforge/dgla.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "mcforge/budget.hpp"
#include "mcforge/error.hpp"
#include "mcforge/free_lie.hpp"

namespace mcforge {

namespace {

int sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

const SparseVec& empty_sparse() {
  static const SparseVec e;
  return e;
}

void require_homogeneous(const DgLieAlgebra& g, const Vec& x, int k, const char* what) {
  if (x.size() != g.dim()) throw InvalidInput(std::string(what) + ": vector has the wrong length");
  if (!g.is_homogeneous(x, k))
    throw InvalidInput(std::string(what) + ": expected a vector of degree " + std::to_string(k));
}

}  // namespace

const std::vector<Vec>& Filtration::F(std::size_t n) const {
  static const std::vector<Vec> none;
  if (n == 0) throw InvalidInput("filtration stages start at 1");
  return n <= stages.size() ? stages[n - 1] : none;
}

DgLieAlgebra::DgLieAlgebra(std::vector<BasisElement> basis, std::vector<Vec> d_images,
                           const std::vector<BracketEntry>& brackets, std::uint32_t prime)
    : basis_(std::move(basis)), prime_(prime) {
  const std::size_t n = basis_.size();
  if (d_images.empty()) d_images.assign(n, zeros(n));
  if (d_images.size() != n) throw InvalidInput("differential has " + std::to_string(d_images.size()) +
                                               " rows for a basis of size " + std::to_string(n));
  for (auto& row : d_images) {
    if (row.size() != n) throw InvalidInput("differential row has the wrong length");
    d_.emplace_back(mcforge::in_characteristic(row, prime));
  }
  std::vector<std::map<std::size_t, SparseVec>> t(n);
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n) throw InvalidInput("bracket index out of range");
    if (b.coeffs.size() != n) throw InvalidInput("bracket coefficient vector has the wrong length");
    t[b.i][b.j].axpy(Scalar(1), SparseVec(mcforge::in_characteristic(b.coeffs, prime)));
  }
  table_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto& [j, v] : t[i])
      if (!v.empty()) table_[i].emplace_back(j, std::move(v));
}

std::vector<std::size_t> DgLieAlgebra::indices_of_degree(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == k) out.push_back(i);
  return out;
}

std::vector<int> DgLieAlgebra::degrees() const {
  std::vector<int> out;
  for (const auto& b : basis_) out.push_back(b.degree);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const SparseVec& DgLieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  const auto& row = table_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == j) return it->second;
  return empty_sparse();
}

Vec DgLieAlgebra::d(const Vec& x) const {
  if (x.size() != dim()) throw InvalidInput("d: vector has the wrong length");
  Vec out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [k, c] : d_[i].entries()) out[k] += x[i] * c;
  }
  return out;
}

Vec DgLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim() || y.size() != dim()) throw InvalidInput("bracket: vector has the wrong length");
  Vec out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [j, c] : table_[i]) {
      if (y[j].is_zero()) continue;
      Scalar a = x[i] * y[j];
      for (const auto& [k, v] : c.entries()) out[k] += a * v;
    }
  }
  return out;
}

bool DgLieAlgebra::is_homogeneous(const Vec& x, int k) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero() && basis_[i].degree != k) return false;
  return true;
}

int DgLieAlgebra::degree_of(const Vec& x) const {
  std::optional<int> deg;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (deg && *deg != basis_[i].degree) throw InvalidInput("vector is not homogeneous");
    deg = basis_[i].degree;
  }
  if (!deg) throw InvalidInput("zero vector has no degree");
  return *deg;
}

CochainComplex DgLieAlgebra::complex() const {
  GradedSpace space;
  std::map<int, std::vector<std::size_t>> idx;
  for (int k : degrees()) {
    idx[k] = indices_of_degree(k);
    std::vector<std::string> names;
    for (std::size_t i : idx[k]) names.push_back(basis_[i].name);
    space.set(k, std::move(names));
  }
  std::map<int, Matrix> d;
  for (const auto& [k, src] : idx) {
    auto it = idx.find(k + 1);
    std::vector<long> pos(dim(), -1);
    if (it != idx.end())
      for (std::size_t r = 0; r < it->second.size(); ++r) pos[it->second[r]] = static_cast<long>(r);
    Matrix m(space.dim(k + 1), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [t, v] : d_[src[c]].entries()) {
        if (pos[t] < 0) throw InvalidInput("d(" + basis_[src[c]].name + ") is not of degree " + std::to_string(k + 1));
        m.add(static_cast<std::size_t>(pos[t]), c, v);
      }
    d.emplace(k, std::move(m));
  }
  return CochainComplex(std::move(space), std::move(d));
}

Vec DgLieAlgebra::restrict_to_degree(const Vec& x, int k) const {
  Vec out;
  for (std::size_t i : indices_of_degree(k)) out.push_back(x.at(i));
  return out;
}

Vec DgLieAlgebra::extend_from_degree(const Vec& xk, int k) const {
  auto idx = indices_of_degree(k);
  if (xk.size() != idx.size()) throw InvalidInput("degree-" + std::to_string(k) + " vector has the wrong length");
  Vec out = zero();
  for (std::size_t r = 0; r < idx.size(); ++r) out[idx[r]] = xk[r];
  return out;
}

DgLieAlgebra DgLieAlgebra::in_characteristic(std::uint32_t prime) const {
  std::vector<Vec> d;
  for (const auto& r : d_) d.push_back(r.dense(dim()));
  DgLieAlgebra out(basis_, std::move(d), bracket_entries(), prime);
  if (declared_filtration) {
    Filtration f;
    for (const auto& st : declared_filtration->stages) {
      f.stages.emplace_back();
      for (const auto& v : st) f.stages.back().push_back(mcforge::in_characteristic(v, prime));
    }
    out.declared_filtration = std::move(f);
  }
  return out;
}

DgLieAlgebra DgLieAlgebra::with_differential(std::vector<Vec> d_images) const {
  DgLieAlgebra out(basis_, std::move(d_images), bracket_entries(), prime_);
  out.declared_filtration = declared_filtration;
  return out;
}

std::vector<BracketEntry> DgLieAlgebra::bracket_entries() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [j, v] : table_[i]) out.push_back({i, j, v.dense(dim())});
  return out;
}

std::string AxiomViolation::str() const {
  std::ostringstream os;
  os << kind << "(";
  for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? "," : "") << indices[k];
  os << ")";
  return os.str();
}

std::vector<AxiomViolation> check_axioms(const DgLieAlgebra& g) {
  std::vector<AxiomViolation> out;
  const std::size_t n = g.dim();
  auto e = [&](std::size_t i) { return g.basis_vector(i); };
  for (std::size_t i = 0; i < n; ++i) {
    Vec di = g.d(e(i));
    if (!g.is_homogeneous(di, g.degree(i) + 1)) out.push_back({"degree", {i}});
    if (!is_zero(g.d(di))) out.push_back({"d2", {i}});
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& b = g.bracket_basis(i, j);
      Vec bij = b.dense(n);
      if (!g.is_homogeneous(bij, g.degree(i) + g.degree(j))) out.push_back({"degree", {i, j}});
      if (j >= i) {
        Vec s = g.bracket(e(j), e(i));
        if (!is_zero(add(bij, scaled(s, Scalar(sign(g.degree(i) * g.degree(j)))))))
          out.push_back({"antisymmetry", {i, j}});
        Vec lhs = g.d(bij);
        Vec rhs = add(g.bracket(di, e(j)), scaled(g.bracket(e(i), g.d(e(j))), Scalar(sign(g.degree(i)))));
        if (lhs != rhs) out.push_back({"leibniz", {i, j}});
      }
    }
  }
  // Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]].
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = g.bracket(e(i), g.bracket(e(j), e(k)));
        Vec r1 = g.bracket(g.bracket(e(i), e(j)), e(k));
        Vec r2 = g.bracket(e(j), g.bracket(e(i), e(k)));
        axpy(r1, Scalar(sign(g.degree(i) * g.degree(j))), r2);
        if (lhs != r1) out.push_back({"jacobi", {i, j, k}});
      }
  return out;
}

std::vector<std::string> DgLieMorphism::check() const {
  std::vector<std::string> out;
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) {
    out.push_back("matrix shape does not match source/target dimensions");
    return out;
  }
  for (std::size_t i = 0; i < source.dim(); ++i) {
    Vec fi = apply(source.basis_vector(i));
    if (!is_zero(fi) && !target.is_homogeneous(fi, source.degree(i)))
      out.push_back("degree not preserved on " + source.name(i));
    if (target.d(fi) != apply(source.d(source.basis_vector(i))))
      out.push_back("does not commute with d on " + source.name(i));
    for (std::size_t j = 0; j < source.dim(); ++j) {
      Vec lhs = apply(source.bracket_basis(i, j).dense(source.dim()));
      Vec rhs = target.bracket(fi, apply(source.basis_vector(j)));
      if (lhs != rhs) out.push_back("does not preserve [" + source.name(i) + "," + source.name(j) + "]");
    }
  }
  return out;
}

DgLieMorphism identity_morphism(const DgLieAlgebra& g) { return {g, g, Matrix::identity(g.dim())}; }

DgLieMorphism compose(const DgLieMorphism& g, const DgLieMorphism& f) {
  return {f.source, g.target, g.matrix * f.matrix};
}

Vec mc_residual(const DgLieAlgebra& g, const Vec& x) {
  if (g.characteristic() == 2) throw ArithmeticError("MC residual needs 1/2, unavailable in characteristic 2");
  require_homogeneous(g, x, 1, "mc_residual");
  Vec r = g.d(x);
  axpy(r, Scalar(1, 2), g.bracket(x, x));
  return r;
}

bool is_mc(const DgLieAlgebra& g, const Vec& x) { return is_zero(mc_residual(g, x)); }

Vec gauge_flow(const DgLieAlgebra& g, const Vec& lambda, const Vec& x0) {
  require_homogeneous(g, lambda, 0, "gauge_flow");
  require_homogeneous(g, x0, 1, "gauge_flow");
  // x(1) = x0 + sum_{k>=1} ad_λ^{k-1}([λ,x0] − dλ) / k!
  Vec term = sub(g.bracket(lambda, x0), g.d(lambda));
  Vec x = x0;
  for (int k = 1; !is_zero(term); ++k) {
    if (static_cast<std::size_t>(k) > g.dim() + 1) throw NotNilpotent("gauge_flow: ad_λ is not nilpotent");
    axpy(x, factorial(k, g.characteristic()).inverse(), term);
    term = g.bracket(lambda, term);
  }
  return x;
}

Vec bch(const DgLieAlgebra& g, const Vec& u, const Vec& v) {
  require_homogeneous(g, u, 0, "bch");
  require_homogeneous(g, v, 0, "bch");
  int N = nilpotency_degree(g);
  std::map<std::string, Vec> prefix;
  prefix["x"] = u;
  prefix["y"] = v;
  Vec out = g.zero();
  for (const auto& [c, w] : bch_left_normed(std::max(N - 1, 1))) {
    for (std::size_t len = 2; len <= w.size(); ++len) {
      std::string p = w.substr(0, len);
      if (prefix.count(p)) continue;
      prefix[p] = g.bracket(prefix.at(p.substr(0, len - 1)), w[len - 1] == 'x' ? u : v);
    }
    Scalar cc = c.in_characteristic(g.characteristic());
    axpy(out, cc, prefix.at(w));
  }
  return out;
}

Filtration canonical_filtration(const DgLieAlgebra& g) {
  Filtration f;
  std::vector<Vec> current;
  for (std::size_t i = 0; i < g.dim(); ++i) current.push_back(g.basis_vector(i));
  while (!current.empty()) {
    if (!f.stages.empty() && f.stages.back().size() == current.size())
      throw NotNilpotent("lower central series stalls at dimension " + std::to_string(current.size()));
    f.stages.push_back(current);
    Span next(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (const auto& v : current) next.add(g.bracket(g.basis_vector(i), v));
    current.clear();
    for (const auto& r : next.rref()) current.push_back(r.dense(g.dim()));
  }
  return f;
}

int nilpotency_degree(const DgLieAlgebra& g) {
  return static_cast<int>(canonical_filtration(g).length()) + 1;
}

std::vector<std::string> check_filtration(const DgLieAlgebra& g, const Filtration& f) {
  std::vector<std::string> out;
  std::vector<Span> spans;
  for (std::size_t n = 1; n <= f.length() + 1; ++n) {
    Span s(g.dim());
    for (const auto& v : f.F(n)) {
      if (v.size() != g.dim()) {
        out.push_back("F" + std::to_string(n) + ": vector has the wrong length");
        return out;
      }
      try {
        if (!is_zero(v)) g.degree_of(v);
      } catch (const InvalidInput&) {
        out.push_back("F" + std::to_string(n) + ": vector is not homogeneous");
      }
      s.add(v);
    }
    spans.push_back(std::move(s));
  }
  auto in = [&](std::size_t n, const Vec& v) { return n > f.length() ? is_zero(v) : spans[n - 1].contains(v); };
  for (std::size_t n = 1; n <= f.length(); ++n) {
    for (const auto& v : f.F(n + 1))
      if (!in(n, v)) out.push_back("F" + std::to_string(n + 1) + " not contained in F" + std::to_string(n));
    for (const auto& v : f.F(n))
      if (!in(n, g.d(v))) out.push_back("d(F" + std::to_string(n) + ") not contained in F" + std::to_string(n));
    for (std::size_t m = n; m <= f.length(); ++m)
      for (const auto& v : f.F(n))
        for (const auto& w : f.F(m))
          if (!in(n + m, g.bracket(v, w)))
            out.push_back("[F" + std::to_string(n) + ",F" + std::to_string(m) + "] not contained in F" +
                          std::to_string(n + m));
  }
  return out;
}

DgLieAlgebra subalgebra(const DgLieAlgebra& g, const std::vector<Vec>& basis, std::vector<std::string> names) {
  CoordinateSystem coords(g.dim(), basis);
  std::vector<BasisElement> b;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string name = i < names.size() ? names[i] : "v" + std::to_string(i);
    b.push_back({name, g.degree_of(basis[i])});
  }
  auto coordinates = [&](const Vec& v, const std::string& what) {
    auto c = coords.coordinates(v);
    if (!c) throw InvalidInput("subalgebra is not closed under " + what);
    return *c;
  };
  std::vector<Vec> d;
  for (const auto& v : basis) d.push_back(coordinates(g.d(v), "d"));
  std::vector<BracketEntry> br;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Vec c = coordinates(g.bracket(basis[i], basis[j]), "the bracket");
      if (!is_zero(c)) br.push_back({i, j, std::move(c)});
    }
  return DgLieAlgebra(std::move(b), std::move(d), br, g.characteristic());
}

QuotientAlgebra quotient_algebra(const DgLieAlgebra& g, const std::vector<Vec>& ideal) {
  Span s(g.dim());
  for (const auto& v : ideal) s.add(v);
  auto rows = s.rref();
  std::vector<bool> piv(g.dim(), false);
  for (const auto& r : rows) piv[r.leading()] = true;
  QuotientAlgebra q;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (!piv[i]) q.kept.push_back(i);
  auto project = [&](const Vec& v) {
    Vec w = v;
    for (const auto& r : rows) {
      Scalar c = w[r.leading()];
      if (c.is_zero()) continue;
      for (const auto& [j, a] : r.entries()) w[j] -= c * a;
    }
    Vec out;
    for (std::size_t i : q.kept) out.push_back(w[i]);
    return out;
  };
  std::vector<BasisElement> basis;
  std::vector<Vec> d, pcols;
  for (std::size_t i : q.kept) {
    basis.push_back(g.basis()[i]);
    d.push_back(project(g.d(g.basis_vector(i))));
  }
  std::vector<BracketEntry> br;
  for (std::size_t a = 0; a < q.kept.size(); ++a)
    for (std::size_t b = 0; b < q.kept.size(); ++b) {
      const SparseVec& v = g.bracket_basis(q.kept[a], q.kept[b]);
      if (v.empty()) continue;
      Vec c = project(v.dense(g.dim()));
      if (!is_zero(c)) br.push_back({a, b, std::move(c)});
    }
  for (std::size_t i = 0; i < g.dim(); ++i) pcols.push_back(project(g.basis_vector(i)));
  q.algebra = DgLieAlgebra(std::move(basis), std::move(d), br, g.characteristic());
  q.projection = Matrix::from_columns(q.kept.size(), pcols);
  return q;
}

DgLieAlgebra twist(const DgLieAlgebra& g, const Vec& x) {
  if (!is_mc(g, x)) throw InvalidInput("twist: element is not Maurer-Cartan");
  std::vector<Vec> d;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Vec e = g.basis_vector(i);
    d.push_back(add(g.d(e), g.bracket(x, e)));
  }
  return g.with_differential(std::move(d));
}

Component component_at(const DgLieAlgebra& g, const Vec& x) {
  DgLieAlgebra gx = twist(g, x);
  Component c;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g.degree(i) < 0) {
      c.inclusion.push_back(g.basis_vector(i));
      names.push_back(g.name(i));
    }
  CochainComplex cx = gx.complex();
  std::size_t z = 0;
  for (const auto& k : kernel(cx.d(0))) {
    c.inclusion.push_back(gx.extend_from_degree(k, 0));
    names.push_back("z" + std::to_string(z++));
  }
  c.algebra = subalgebra(gx, c.inclusion, names);
  return c;
}

Tower canonical_tower(const DgLieAlgebra& g, int top) {
  Filtration f = canonical_filtration(g);
  int M = top > 0 ? top : static_cast<int>(f.length()) + 1;
  Tower t;
  for (int n = 2; n <= M; ++n) t.stages.push_back(quotient_algebra(g, f.F(static_cast<std::size_t>(n))));
  for (std::size_t s = 0; s + 1 < t.stages.size(); ++s) {
    // stage s+1 -> stage s: lift kept basis vectors to g and project.
    const auto& hi = t.stages[s + 1];
    const auto& lo = t.stages[s];
    std::vector<Vec> cols;
    for (std::size_t i : hi.kept) cols.push_back(lo.projection.apply(g.basis_vector(i)));
    t.transitions.push_back(Matrix::from_columns(lo.kept.size(), cols));
  }
  return t;
}

std::vector<DgLieMorphism> tower_morphism(const DgLieMorphism& phi, const Tower& tg, const Tower& th) {
  if (tg.stages.size() != th.stages.size()) throw InvalidInput("towers have different lengths");
  std::vector<DgLieMorphism> out;
  for (std::size_t s = 0; s < tg.stages.size(); ++s) {
    const auto& a = tg.stages[s];
    const auto& b = th.stages[s];
    std::vector<Vec> cols;
    for (std::size_t i : a.kept) cols.push_back(b.projection.apply(phi.apply(phi.source.basis_vector(i))));
    out.push_back({a.algebra, b.algebra, Matrix::from_columns(b.kept.size(), cols)});
  }
  return out;
}

ChainMap underlying_chain_map(const DgLieMorphism& phi) {
  std::map<int, Matrix> m;
  for (int k : phi.source.degrees()) {
    auto src = phi.source.indices_of_degree(k);
    auto dst = phi.target.indices_of_degree(k);
    Matrix mk(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (std::size_t r = 0; r < dst.size(); ++r) {
        Scalar v = phi.matrix.at(dst[r], src[c]);
        if (!v.is_zero()) mk.add(r, c, v);
      }
    m.emplace(k, std::move(mk));
  }
  return ChainMap(phi.source.complex(), phi.target.complex(), std::move(m));
}

namespace {

std::map<int, std::vector<Vec>> split_by_degree(const DgLieAlgebra& g, const std::vector<Vec>& vs) {
  std::map<int, std::vector<Vec>> out;
  for (const auto& v : vs) {
    if (is_zero(v)) continue;
    int k = g.degree_of(v);
    out[k].push_back(g.restrict_to_degree(v, k));
  }
  return out;
}

ChainMap induced_on_quotients(const DgLieMorphism& phi, const std::vector<Vec>& fg, const std::vector<Vec>& fh) {
  CochainComplex cg = phi.source.complex(), ch = phi.target.complex();
  Quotient qg = quotient(cg, split_by_degree(phi.source, fg));
  Quotient qh = quotient(ch, split_by_degree(phi.target, fh));
  ChainMap f = underlying_chain_map(phi);
  std::map<int, Matrix> m;
  for (const auto& [k, kept] : qg.kept) {
    std::vector<Vec> cols;
    for (std::size_t i : kept) cols.push_back(qh.projection.f(k).apply(f.f(k).apply(unit(cg.dim(k), i))));
    m.emplace(k, Matrix::from_columns(qh.complex.dim(k), cols));
  }
  return ChainMap(qg.complex, qh.complex, std::move(m));
}

}  // namespace

FilteredQiResult is_filtered_qi(const DgLieMorphism& phi, const Filtration& fg, const Filtration& fh) {
  std::size_t L = std::max(fg.length(), fh.length());
  for (std::size_t n = 1; n <= L; ++n) {
    Span target(phi.target.dim());
    for (const auto& v : fh.F(n)) target.add(v);
    for (const auto& v : fg.F(n))
      if (!target.contains(phi.apply(v)))
        throw InvalidInput("morphism is not filtered: F" + std::to_string(n) + " is not preserved");
  }
  FilteredQiResult r;
  r.value = is_quasi_iso(underlying_chain_map(phi));
  if (!r.value) r.detail = "not a quasi-isomorphism";
  for (std::size_t n = 2; n <= L + 1 && r.value; ++n) {
    if (!is_quasi_iso(induced_on_quotients(phi, fg.F(n), fh.F(n)))) {
      r.value = false;
      r.detail = "g/F" + std::to_string(n) + " -> h/F" + std::to_string(n) + " is not a quasi-isomorphism";
    }
  }
  // Associated graded: F_n/F_{n+1} as the kernel of g/F_{n+1} -> g/F_n is
  // qi for all n iff all quotient maps are (five lemma); checked directly.
  r.graded_pieces_qi = true;
  for (std::size_t n = 1; n <= L; ++n) {
    CochainComplex cg = phi.source.complex(), ch = phi.target.complex();
    auto sg = subcomplex(cg, split_by_degree(phi.source, fg.F(n)));
    auto sh = subcomplex(ch, split_by_degree(phi.target, fh.F(n)));
    // Express F_{n+1} inside the stage-n bases and take quotients.
    auto relative = [&](const DgLieAlgebra& alg, const Subcomplex& s, const std::vector<Vec>& next) {
      std::map<int, std::vector<Vec>> out;
      for (const auto& [k, vs] : split_by_degree(alg, next)) {
        std::vector<Vec> basis;
        for (int d : s.complex.degrees())
          if (d == k)
            for (std::size_t c = 0; c < s.complex.dim(k); ++c) basis.push_back(s.inclusion.f(k).apply(unit(s.complex.dim(k), c)));
        CoordinateSystem cs(alg.indices_of_degree(k).size(), basis);
        for (const auto& v : vs) out[k].push_back(*cs.coordinates(v));
      }
      return out;
    };
    Quotient qg = quotient(sg.complex, relative(phi.source, sg, fg.F(n + 1)));
    Quotient qh = quotient(sh.complex, relative(phi.target, sh, fh.F(n + 1)));
    ChainMap f = underlying_chain_map(phi);
    std::map<int, Matrix> m;
    for (const auto& [k, kept] : qg.kept) {
      std::vector<Vec> basis_h;
      for (std::size_t c = 0; c < sh.complex.dim(k); ++c) basis_h.push_back(sh.inclusion.f(k).apply(unit(sh.complex.dim(k), c)));
      CoordinateSystem cs(phi.target.indices_of_degree(k).size(), basis_h);
      std::vector<Vec> cols;
      for (std::size_t i : kept) {
        Vec img = f.f(k).apply(sg.inclusion.f(k).apply(unit(sg.complex.dim(k), i)));
        cols.push_back(qh.projection.f(k).apply(*cs.coordinates(img)));
      }
      m.emplace(k, Matrix::from_columns(qh.complex.dim(k), cols));
    }
    if (!is_quasi_iso(ChainMap(qg.complex, qh.complex, std::move(m)))) r.graded_pieces_qi = false;
  }
  return r;
}

ModpAlgebra::ModpAlgebra(const DgLieAlgebra& g) : p_(g.characteristic()), n_(g.dim()) {
  if (p_ == 0) throw InvalidInput("ModpAlgebra needs an algebra over F_p");
  if (p_ == 2) throw ArithmeticError("characteristic 2 is not supported (1/2 is needed)");
  d_.resize(n_);
  table_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (const auto& [k, v] : g.d_basis(i).entries())
      d_[i].emplace_back(k, static_cast<std::uint32_t>(v.residue_value()));
    for (std::size_t j = 0; j < n_; ++j) {
      const SparseVec& b = g.bracket_basis(i, j);
      if (b.empty()) continue;
      std::vector<std::pair<std::size_t, std::uint32_t>> e;
      for (const auto& [k, v] : b.entries()) e.emplace_back(k, static_cast<std::uint32_t>(v.residue_value()));
      table_[i].emplace_back(j, std::move(e));
    }
  }
  inv_.assign(p_, 0);
  for (std::uint32_t a = 1; a < p_; ++a) inv_[a] = static_cast<std::uint32_t>(Scalar::residue(a, p_).inverse().residue_value());
  half_ = inv_[2];
}

ModpAlgebra::Elt ModpAlgebra::d(const Elt& x) const {
  std::vector<std::uint64_t> acc(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    for (const auto& [k, v] : d_[i]) acc[k] = (acc[k] + std::uint64_t(x[i]) * v) % p_;
  }
  return Elt(acc.begin(), acc.end());
}

ModpAlgebra::Elt ModpAlgebra::bracket(const Elt& x, const Elt& y) const {
  std::vector<std::uint64_t> acc(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    for (const auto& [j, c] : table_[i]) {
      if (!y[j]) continue;
      std::uint64_t a = std::uint64_t(x[i]) * y[j] % p_;
      for (const auto& [k, v] : c) acc[k] = (acc[k] + a * v) % p_;
    }
  }
  return Elt(acc.begin(), acc.end());
}

ModpAlgebra::Elt ModpAlgebra::mc_residual(const Elt& x) const {
  Elt r = d(x), b = bracket(x, x);
  for (std::size_t k = 0; k < n_; ++k) r[k] = static_cast<std::uint32_t>((r[k] + std::uint64_t(half_) * b[k]) % p_);
  return r;
}

ModpAlgebra::Elt ModpAlgebra::gauge_flow(const Elt& lambda, const Elt& x0) const {
  Elt term = bracket(lambda, x0), dl = d(lambda);
  for (std::size_t k = 0; k < n_; ++k) term[k] = (term[k] + p_ - dl[k]) % p_;
  Elt x = x0;
  std::uint64_t inv_fact = 1;
  for (std::uint32_t k = 1;; ++k) {
    if (std::all_of(term.begin(), term.end(), [](std::uint32_t v) { return v == 0; })) break;
    if (k >= p_) throw ArithmeticError("gauge flow needs 1/" + std::to_string(k) + "! which is not invertible mod " + std::to_string(p_));
    if (k > n_ + 1) throw NotNilpotent("gauge_flow: ad_λ is not nilpotent");
    inv_fact = inv_fact * inv_[k] % p_;
    for (std::size_t i = 0; i < n_; ++i) x[i] = static_cast<std::uint32_t>((x[i] + inv_fact * term[i]) % p_);
    term = bracket(lambda, term);
  }
  return x;
}

ModpAlgebra::Elt ModpAlgebra::from(const Vec& v) const {
  Elt e(n_);
  for (std::size_t i = 0; i < n_; ++i) e[i] = static_cast<std::uint32_t>(v.at(i).in_characteristic(p_).residue_value());
  return e;
}

Vec ModpAlgebra::to(const Elt& e) const {
  Vec v;
  for (auto x : e) v.push_back(Scalar::residue(x, p_));
  return v;
}

std::size_t Pi0Result::orbit(const Vec& x) const {
  for (std::size_t i = 0; i < mc_elements.size(); ++i)
    if (mc_elements[i] == x) return orbit_of[i];
  throw InvalidInput("element is not Maurer-Cartan");
}

Pi0Result pi0_bruteforce(const DgLieAlgebra& g, double budget) {
  const std::uint32_t p = g.characteristic();
  if (p == 0) throw InvalidInput("pi0_bruteforce needs an algebra over F_p");
  int N = nilpotency_degree(g);
  if (static_cast<int>(p) <= N)
    throw ArithmeticError("p = " + std::to_string(p) + " does not exceed the nilpotency degree " + std::to_string(N) +
                          "; factorial denominators up to " + std::to_string(N) + "! are not invertible");
  auto i1 = g.indices_of_degree(1), i0 = g.indices_of_degree(0);
  double size = std::pow(double(p), double(i1.size() + i0.size()));
  if (size > budget)
    throw BudgetExceeded("enumeration of p^(dim g1 + dim g0) = " + std::to_string(static_cast<long long>(size)) +
                         " candidates exceeds the budget");
  Deadline deadline = Deadline::from_env();
  ModpAlgebra a(g);

  auto enumerate = [&](const std::vector<std::size_t>& idx, auto&& visit) {
    ModpAlgebra::Elt e(g.dim(), 0);
    while (true) {
      visit(e);
      std::size_t pos = 0;
      for (; pos < idx.size(); ++pos) {
        if (++e[idx[pos]] < p) break;
        e[idx[pos]] = 0;
      }
      if (pos == idx.size()) return;
    }
  };
  auto key = [&](const ModpAlgebra::Elt& e) {
    std::uint64_t k = 0;
    for (auto it = i1.rbegin(); it != i1.rend(); ++it) k = k * p + e[*it];
    return k;
  };

  std::vector<ModpAlgebra::Elt> mc;
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::size_t visited = 0;
  enumerate(i1, [&](const ModpAlgebra::Elt& x) {
    if ((++visited & 1023) == 0) deadline.check("pi0 enumeration");
    auto r = a.mc_residual(x);
    if (std::all_of(r.begin(), r.end(), [](std::uint32_t v) { return v == 0; })) {
      index.emplace(key(x), mc.size());
      mc.push_back(x);
    }
  });

  std::vector<std::size_t> parent(mc.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t m = 0; m < mc.size(); ++m) {
    enumerate(i0, [&](const ModpAlgebra::Elt& lambda) {
      if ((++visited & 1023) == 0) deadline.check("pi0 gauge orbits");
      auto y = a.gauge_flow(lambda, mc[m]);
      auto it = index.find(key(y));
      if (it == index.end()) throw Error("gauge flow left the Maurer-Cartan locus (internal error)");
      std::size_t ra = find(m), rb = find(it->second);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    });
  }

  Pi0Result r;
  std::map<std::size_t, std::size_t> orbit_id;
  for (std::size_t m = 0; m < mc.size(); ++m) {
    std::size_t root = find(m);
    auto [it, fresh] = orbit_id.emplace(root, r.representatives.size());
    if (fresh) r.representatives.push_back(a.to(mc[root]));
    r.mc_elements.push_back(a.to(mc[m]));
    r.orbit_of.push_back(it->second);
  }
  r.count = r.representatives.size();
  return r;
}

Pi0Comparison compare_pi0(const DgLieMorphism& phi, const Pi0Result& src, const Pi0Result& dst) {
  Pi0Comparison c;
  std::vector<bool> hit(dst.count, false);
  c.injective = true;
  for (const auto& rep : src.representatives) {
    std::size_t o = dst.orbit(phi.apply(rep));
    if (hit[o]) c.injective = false;
    hit[o] = true;
    c.image.push_back(o);
  }
  c.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return c;
}

BfmtResult is_bfmt_weak_equivalence(const std::vector<DgLieMorphism>& stages, double budget) {
  BfmtResult r;
  r.value = true;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    const auto& phi = stages[s];
    Pi0Result a = pi0_bruteforce(phi.source, budget), b = pi0_bruteforce(phi.target, budget);
    Pi0Comparison cmp = compare_pi0(phi, a, b);
    bool components = true;
    for (const auto& x : a.representatives) {
      Component cg = component_at(phi.source, x);
      Component ch = component_at(phi.target, phi.apply(x));
      CoordinateSystem cs(phi.target.dim(), ch.inclusion);
      std::vector<Vec> cols;
      for (const auto& v : cg.inclusion) {
        auto c = cs.coordinates(phi.apply(v));
        if (!c) throw Error("morphism does not map components into components (internal error)");
        cols.push_back(*c);
      }
      DgLieMorphism m{cg.algebra, ch.algebra, Matrix::from_columns(ch.inclusion.size(), cols)};
      if (!is_quasi_iso(underlying_chain_map(m))) components = false;
    }
    bool ok = cmp.bijective() && components;
    r.value = r.value && ok;
    std::ostringstream os;
    os << "stage " << s << ": pi0 " << a.count << " -> " << b.count << (cmp.bijective() ? " bijective" : " not bijective")
       << ", components " << (components ? "quasi-isomorphic" : "not quasi-isomorphic");
    r.stages.push_back(os.str());
  }
  return r;
}

}  // namespace mcforge
