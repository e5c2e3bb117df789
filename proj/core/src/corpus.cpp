#include "mcforge/corpus.hpp"

namespace mcforge::corpus {

namespace {

Vec basis_vec(std::size_t n, std::size_t i, long long c = 1) {
  Vec v = zeros(n);
  v[i] = Scalar(c);
  return v;
}

}  // namespace

DgLieAlgebra abelian(const std::vector<int>& degrees, std::uint32_t prime) {
  std::vector<BasisElement> b;
  for (std::size_t i = 0; i < degrees.size(); ++i) b.push_back({"x" + std::to_string(i), degrees[i]});
  return DgLieAlgebra(std::move(b), {}, {}, prime);
}

DgLieAlgebra heisenberg(std::uint32_t prime) {
  return DgLieAlgebra({{"a", 1}, {"b", 1}, {"c", 2}}, {},
                      {{0, 1, basis_vec(3, 2)}, {1, 0, basis_vec(3, 2)}}, prime);
}

DgLieAlgebra gauge2(std::uint32_t prime) {
  return DgLieAlgebra({{"l", 0}, {"a", 1}, {"b", 1}}, {},
                      {{0, 1, basis_vec(3, 2)}, {1, 0, basis_vec(3, 2, -1)}}, prime);
}

DgLieAlgebra class3(std::uint32_t prime) {
  const std::size_t n = 5;  // l, m, a, b, e
  std::vector<Vec> d(n, zeros(n));
  d[1] = basis_vec(n, 4);
  return DgLieAlgebra({{"l", 0}, {"m", 0}, {"a", 1}, {"b", 1}, {"e", 1}}, d,
                      {{0, 2, basis_vec(n, 3)}, {2, 0, basis_vec(n, 3, -1)},
                       {0, 3, basis_vec(n, 4)}, {3, 0, basis_vec(n, 4, -1)}},
                      prime);
}

DgLieMorphism acyclic_extension(const DgLieAlgebra& g) {
  const std::size_t n = g.dim(), m = n + 2;
  std::vector<BasisElement> basis = g.basis();
  basis.push_back({"u", 0});
  basis.push_back({"du", 1});
  std::vector<Vec> d;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = g.d(g.basis_vector(i));
    v.resize(m, Scalar(0));
    d.push_back(std::move(v));
  }
  d.push_back(basis_vec(m, n + 1));
  d.push_back(zeros(m));
  std::vector<BracketEntry> br;
  for (auto e : g.bracket_entries()) {
    e.coeffs.resize(m, Scalar(0));
    br.push_back(std::move(e));
  }
  DgLieAlgebra h(std::move(basis), std::move(d), br, g.characteristic());
  Filtration fg = g.declared_filtration ? *g.declared_filtration : canonical_filtration(g);
  Filtration fh;
  for (std::size_t s = 0; s < fg.length(); ++s) {
    fh.stages.emplace_back();
    for (auto v : fg.stages[s]) {
      v.resize(m, Scalar(0));
      fh.stages.back().push_back(std::move(v));
    }
  }
  if (fh.stages.empty()) fh.stages.emplace_back();
  fh.stages[0].push_back(basis_vec(m, n));
  fh.stages[0].push_back(basis_vec(m, n + 1));
  h.declared_filtration = std::move(fh);
  Matrix inc(m, n);
  for (std::size_t i = 0; i < n; ++i) inc.add(i, i, Scalar(1));
  return {g, h, inc.in_characteristic(g.characteristic())};
}

DgLieMorphism h1_collapse(std::uint32_t prime) {
  DgLieAlgebra src = abelian({1}, prime);
  DgLieAlgebra dst(std::vector<BasisElement>{}, {}, {}, prime);
  return {src, dst, Matrix(0, 1)};
}

}  // namespace mcforge::corpus
