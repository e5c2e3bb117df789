#include "mcforge/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mcforge/budget.hpp"
#include "mcforge/error.hpp"

namespace mcforge {

namespace {

bool odd(int k) { return k % 2 != 0; }

void check_shape(const MCSimplex& a, const MCSimplex& b) {
  if (a.n != b.n || a.coeffs.size() != b.coeffs.size()) throw InvalidInput("simplices of different shape");
}

template <typename F>
void for_components(const PolyForm& a, F&& f) {
  for (int k = 0; k <= a.n(); ++k) {
    PolyForm c = a.component(k);
    if (!c.is_zero()) f(k, c);
  }
}

MCSimplex map_coeffs(const MCSimplex& x, int n, PolyForm (*op)(const PolyForm&, int), int j) {
  MCSimplex out{n, {}};
  out.coeffs.reserve(x.coeffs.size());
  for (const auto& a : x.coeffs) out.coeffs.push_back(op(a, j));
  return out;
}

}  // namespace

bool MCSimplex::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const PolyForm& a) { return a.is_zero(); });
}

MCSimplex zero_simplex(const DgLieAlgebra& g, int n) { return MCSimplex{n, std::vector<PolyForm>(g.dim(), PolyForm(n))}; }

MCSimplex constant_simplex(const DgLieAlgebra& g, const Vec& x) {
  if (x.size() != g.dim()) throw InvalidInput("vector length does not match the algebra");
  MCSimplex out = zero_simplex(g, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) out.coeffs[i] = PolyForm::constant(0, x[i]);
  return out;
}

Vec point_value(const DgLieAlgebra& g, const MCSimplex& x) {
  if (x.n != 0) throw InvalidInput("point_value needs a 0-simplex");
  Vec out = g.zero();
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    for (const auto& [m, c] : x.coeffs[i].terms()) out[i] += c;
  return out;
}

MCSimplex operator+(const MCSimplex& a, const MCSimplex& b) {
  check_shape(a, b);
  MCSimplex out = a;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

MCSimplex operator-(const MCSimplex& a, const MCSimplex& b) {
  check_shape(a, b);
  MCSimplex out = a;
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

MCSimplex scaled(const MCSimplex& a, const Scalar& c) {
  MCSimplex out = a;
  for (auto& f : out.coeffs) f *= c;
  return out;
}

MCSimplex simplex_d(const DgLieAlgebra& g, const MCSimplex& x) {
  MCSimplex out = zero_simplex(g, x.n);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    const PolyForm& a = x.coeffs[i];
    if (a.is_zero()) continue;
    for (const auto& [m, v] : g.d_basis(i).entries()) out.coeffs[m] += a * v;
    out.coeffs[i] += odd(g.degree(i)) ? -a.d() : a.d();
  }
  return out;
}

MCSimplex simplex_bracket(const DgLieAlgebra& g, const MCSimplex& x, const MCSimplex& y) {
  check_shape(x, y);
  MCSimplex out = zero_simplex(g, x.n);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) {
      if (y.coeffs[j].is_zero()) continue;
      const SparseVec& c = g.bracket_basis(i, j);
      if (c.entries().empty()) continue;
      PolyForm ab(x.n);
      for_components(x.coeffs[i], [&](int k, const PolyForm& ak) {
        PolyForm t = ak * y.coeffs[j];
        ab += odd(k) && odd(g.degree(j)) ? -t : t;
      });
      for (const auto& [m, v] : c.entries()) out.coeffs[m] += ab * v;
    }
  }
  return out;
}

MCSimplex curvature(const DgLieAlgebra& g, const MCSimplex& x) {
  return simplex_d(g, x) + scaled(simplex_bracket(g, x, x), Scalar(1, 2));
}

void check_total_degree(const DgLieAlgebra& g, const MCSimplex& x, int degree) {
  if (x.coeffs.size() != g.dim()) throw InvalidInput("simplex has " + std::to_string(x.coeffs.size()) +
                                                     " coefficients, algebra has dimension " + std::to_string(g.dim()));
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    const PolyForm& a = x.coeffs[i];
    if (a.is_zero()) continue;
    if (a.n() != x.n) throw InvalidInput("coefficient of " + g.name(i) + " lives on the wrong simplex");
    int want = degree - g.degree(i);
    if (a.component(want) != a)
      throw InvalidInput("degree mismatch: coefficient of " + g.name(i) + " must be a " + std::to_string(want) +
                         "-form for total degree " + std::to_string(degree));
  }
}

bool is_mc_simplex(const DgLieAlgebra& g, const MCSimplex& x) {
  check_total_degree(g, x, 1);
  return curvature(g, x).is_zero();
}

MCSimplex face(const MCSimplex& x, int j) {
  if (x.n == 0) throw InvalidInput("a 0-simplex has no faces");
  if (j < 0 || j > x.n) throw InvalidInput("face index out of range");
  PolyForm (*op)(const PolyForm&, int) = &face;
  return map_coeffs(x, x.n - 1, op, j);
}

MCSimplex degeneracy(const MCSimplex& x, int j) {
  if (j < 0 || j > x.n) throw InvalidInput("degeneracy index out of range");
  PolyForm (*op)(const PolyForm&, int) = &degeneracy;
  return map_coeffs(x, x.n + 1, op, j);
}

MCSimplex apply_morphism(const DgLieMorphism& phi, const MCSimplex& x) {
  if (x.coeffs.size() != phi.source.dim()) throw InvalidInput("simplex does not live on the source algebra");
  MCSimplex out = zero_simplex(phi.target, x.n);
  for (std::size_t r = 0; r < phi.target.dim(); ++r)
    for (const auto& [i, v] : phi.matrix.row(r).entries()) out.coeffs[r] += x.coeffs[i] * v;
  return out;
}

std::vector<std::string> coefficient_strings(const MCSimplex& x) {
  std::vector<std::string> out;
  for (const auto& a : x.coeffs) out.push_back(a.is_zero() ? "0" : a.str());
  return out;
}

std::string str(const DgLieAlgebra& g, const MCSimplex& x) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    if (any) os << "\n";
    os << g.name(i) << ": " << x.coeffs[i].str();
    any = true;
  }
  return any ? os.str() : "0";
}

MCSimplex gauge_simplex(const DgLieAlgebra& g, const Vec& lambda, const Vec& x0) {
  if (!g.is_homogeneous(lambda, 0)) throw InvalidInput("gauge parameter must have degree 0");
  MCSimplex out = zero_simplex(g, 1);
  PolyForm t = PolyForm::t(1, 1), power = PolyForm::constant(1, Scalar(1));
  Vec x = x0;
  for (int k = 0; k == 0 || !mcforge::is_zero(x); ++k) {
    if (k > static_cast<int>(g.dim()) + 2) throw NotNilpotent("gauge path does not terminate");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) out.coeffs[i] += power * x[i];
    Vec next = g.bracket(lambda, x);
    if (k == 0) next = sub(next, g.d(lambda));
    x = scaled(next, Scalar(1) / Scalar(k + 1));
    power = power * t;
  }
  PolyForm dt = PolyForm::dt(1, 1);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (!lambda[i].is_zero()) out.coeffs[i] -= dt * lambda[i];
  return out;
}

// ---------------------------------------------------------------------------
// Horn filling

namespace {

// Pulls a form on Δ^{n-1} (= face j of Δ^n) back along the affine map
// Δ^n -> Δ^{n-1} that is the identity on face j and sends vertex j where
// vertex k goes.
PolyForm extend_from_face(const PolyForm& a, int n, int j, int k) {
  auto index = [&](int v) { return v < j ? v : v - 1; };
  std::vector<Vec> bary;
  for (int v = 0; v <= n; ++v) bary.push_back(unit(static_cast<std::size_t>(n), static_cast<std::size_t>(index(v == j ? k : v))));
  return pullback_affine(a, n, bary);
}

// Sign s with d(s h_k) + (s h_k)d = -id on forms vanishing at the horn.
int relative_sign() {
  static const int s = [] {
    PolyForm a = PolyForm::t(1, 1);  // vanishes at vertex 0
    PolyForm h = dilation_homotopy(a.d(), 0);
    if (h == -a) return 1;
    if (h == a) return -1;
    throw Error("dilation homotopy calibration failed");
  }();
  return s;
}

MCSimplex relative_h(const DgLieAlgebra& g, const MCSimplex& x, int k) {
  MCSimplex out = zero_simplex(g, x.n);
  int s = relative_sign();
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    out.coeffs[i] = dilation_homotopy(x.coeffs[i], k) * Scalar(odd(g.degree(i)) ? -s : s);
  }
  return out;
}

}  // namespace

HornFill horn_fill(const DgLieAlgebra& g, int n, int k, const std::map<int, MCSimplex>& faces) {
  if (n < 1 || n > 3) throw InvalidInput("horn_fill supports simplex dimension 1..3");
  if (k < 0 || k > n) throw InvalidInput("horn index out of range");
  for (int j = 0; j <= n; ++j) {
    if (j == k) continue;
    auto it = faces.find(j);
    if (it == faces.end()) throw InvalidInput("horn is missing face " + std::to_string(j));
    if (it->second.n != n - 1) throw InvalidInput("face " + std::to_string(j) + " has the wrong dimension");
    if (!is_mc_simplex(g, it->second)) throw InvalidInput("face " + std::to_string(j) + " is not Maurer-Cartan");
  }
  for (const auto& [j, y] : faces)
    if (j == k || j < 0 || j > n) throw InvalidInput("face " + std::to_string(j) + " is not part of the horn");
  if (n >= 2)
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (i == k || j == k) continue;
        if (face(faces.at(j), i) != face(faces.at(i), j - 1))
          throw InvalidInput("incompatible horn: faces " + std::to_string(i) + " and " + std::to_string(j) +
                             " disagree on their common face");
      }

  HornFill out;
  MCSimplex x0 = zero_simplex(g, n);
  for (int j = 0; j <= n; ++j) {
    if (j == k) continue;
    MCSimplex z = faces.at(j) - face(x0, j);
    for (std::size_t i = 0; i < z.coeffs.size(); ++i)
      if (!z.coeffs[i].is_zero()) x0.coeffs[i] += extend_from_face(z.coeffs[i], n, j, k);
  }
  out.extension = x0;

  MCSimplex base = curvature(g, x0);
  MCSimplex y = zero_simplex(g, n);
  const int limit = static_cast<int>(g.dim()) + 4;
  Deadline deadline = Deadline::from_env();
  for (int step = 0;; ++step) {
    if (step > limit) throw NotNilpotent("horn filling did not stabilize; is the algebra nilpotent?");
    deadline.check("horn filling");
    MCSimplex r = base + simplex_bracket(g, x0, y) + scaled(simplex_bracket(g, y, y), Scalar(1, 2));
    MCSimplex next = relative_h(g, r, k);
    if (next == y) break;
    y = std::move(next);
    ++out.iterations;
  }
  out.simplex = x0 + y;

  if (!is_mc_simplex(g, out.simplex)) throw Error("horn filler is not Maurer-Cartan (internal error)");
  for (const auto& [j, f] : faces)
    if (face(out.simplex, j) != f) throw Error("horn filler misses face " + std::to_string(j) + " (internal error)");
  return out;
}

// ---------------------------------------------------------------------------
// π0 through 1-simplices

namespace {

std::uint32_t inverse_mod(std::uint64_t a, std::uint32_t p) {
  std::uint64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

OneSimplexPi0 pi0_one_simplices(const DgLieAlgebra& g, int z_degree, double budget) {
  const std::uint32_t p = g.characteristic();
  if (p == 0) throw InvalidInput("pi0 via 1-simplices needs an algebra over F_p");
  if (z_degree < 0) throw InvalidInput("negative polynomial degree");
  Pi0Result mc = pi0_bruteforce(g, budget);
  auto i0 = g.indices_of_degree(0);
  double paths = std::pow(double(p), double(i0.size() * static_cast<std::size_t>(z_degree + 1)));
  if (paths * double(mc.mc_count()) > budget)
    throw BudgetExceeded("1-simplex enumeration of " + std::to_string(static_cast<long long>(paths)) +
                         " paths per MC element exceeds the budget");

  ModpAlgebra a(g);
  using Elt = ModpAlgebra::Elt;
  const std::size_t dim = g.dim();
  auto add_into = [&](Elt& y, const Elt& x, std::uint64_t c) {
    for (std::size_t i = 0; i < dim; ++i) y[i] = static_cast<std::uint32_t>((y[i] + c * x[i]) % p);
  };
  auto is_zero = [](const Elt& x) { return std::all_of(x.begin(), x.end(), [](std::uint32_t v) { return v == 0; }); };

  std::map<Elt, std::size_t> index;
  std::vector<Elt> elements;
  for (const auto& v : mc.mc_elements) {
    index.emplace(a.from(v), elements.size());
    elements.push_back(a.from(v));
  }

  // z(t) = Σ_{j <= z_degree} z_j t^j with z_j ∈ g^0, enumerated as one counter.
  const std::size_t slots = i0.size() * static_cast<std::size_t>(z_degree + 1);
  OneSimplexPi0 out;
  UnionFind uf(elements.size());
  Deadline deadline = Deadline::from_env();
  for (std::size_t s = 0; s < elements.size(); ++s) {
    std::vector<std::uint32_t> counter(slots, 0);
    while (true) {
      if ((++out.simplices & 1023) == 0) deadline.check("1-simplex enumeration");
      std::vector<Elt> z(static_cast<std::size_t>(z_degree + 1), Elt(dim, 0));
      for (std::size_t c = 0; c < slots; ++c) z[c / i0.size()][i0[c % i0.size()]] = counter[c];
      std::vector<Elt> dz;
      for (const auto& zj : z) dz.push_back(a.d(zj));

      std::vector<Elt> x{elements[s]};
      for (int k = 0;; ++k) {
        if (k > z_degree) {
          bool settled = true;
          for (int j = 0; j <= z_degree && settled; ++j) settled = is_zero(x[static_cast<std::size_t>(k - j)]);
          if (settled) break;
        }
        if (k > 2 * (z_degree + 1) * static_cast<int>(dim) + 2) throw NotNilpotent("1-simplex path does not terminate");
        // (k+1) x_{k+1} = [t^k](dz + [x, z])
        Elt rhs = k <= z_degree ? dz[static_cast<std::size_t>(k)] : Elt(dim, 0);
        for (int j = 0; j <= std::min(k, z_degree); ++j)
          add_into(rhs, a.bracket(x[static_cast<std::size_t>(k - j)], z[static_cast<std::size_t>(j)]), 1);
        Elt next(dim, 0);
        if (!is_zero(rhs)) {
          if ((k + 1) % p == 0)
            throw ArithmeticError("1-simplex reaches polynomial degree " + std::to_string(k + 1) + " = 0 mod p");
          add_into(next, rhs, inverse_mod(static_cast<std::uint64_t>(k + 1), p));
        }
        x.push_back(std::move(next));
      }
      while (x.size() > 1 && is_zero(x.back())) x.pop_back();
      out.max_poly_degree = std::max(out.max_poly_degree, static_cast<int>(x.size()) - 1);

      // x(t) must be MC coefficientwise: d x_k + ½ Σ_{i+j=k} [x_i, x_j] = 0.
      std::uint32_t half = inverse_mod(2, p);
      for (std::size_t kk = 0; kk < 2 * x.size(); ++kk) {
        Elt r(dim, 0);
        if (kk < x.size()) r = a.d(x[kk]);
        for (std::size_t i = 0; i < x.size(); ++i)
          if (kk >= i && kk - i < x.size()) add_into(r, a.bracket(x[i], x[kk - i]), half);
        if (!is_zero(r)) throw Error("constructed 1-simplex is not Maurer-Cartan (internal error)");
      }

      Elt end(dim, 0);
      for (const auto& xk : x) add_into(end, xk, 1);
      auto it = index.find(end);
      if (it == index.end()) throw Error("1-simplex ends outside the MC set (internal error)");
      uf.unite(s, it->second);

      std::size_t pos = 0;
      for (; pos < slots; ++pos) {
        if (++counter[pos] < p) break;
        counter[pos] = 0;
      }
      if (pos == slots) break;
    }
  }

  Pi0Result& r = out.classes;
  r.mc_elements = mc.mc_elements;
  std::map<std::size_t, std::size_t> orbit_index;
  for (std::size_t s = 0; s < elements.size(); ++s) {
    std::size_t root = uf.find(s);
    auto [it, fresh] = orbit_index.emplace(root, r.representatives.size());
    if (fresh) r.representatives.push_back(mc.mc_elements[root]);
    r.orbit_of.push_back(it->second);
  }
  r.count = r.representatives.size();
  return out;
}

// ---------------------------------------------------------------------------
// hom(mc_n, g)

namespace {

std::string lie_vector_str(const FreeLieTruncation& L, const Vec& v) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (any) os << " + ";
    os << v[i].str() << "*phi(" << L.basis()[i].name << ")";
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace

void check_stage(const DgLieAlgebra& g, const McnAlgebra& m) {
  int M = nilpotency_degree(g);
  if (m.lie->cutoff() < M)
    throw InvalidInput("stage too shallow: mc_" + std::to_string(m.n) + " is truncated at weight " +
                       std::to_string(m.lie->cutoff()) + " but the algebra has nilpotency degree " + std::to_string(M));
}

std::vector<std::string> check_mcn_morphism(const DgLieAlgebra& g, const McnAlgebra& m, const std::vector<Vec>& images) {
  check_stage(g, m);
  const auto& gens = m.lie->generators();
  if (images.size() != gens.size()) throw InvalidInput("need one image per generator of mc_n");
  std::vector<std::string> out;
  for (std::size_t q = 0; q < gens.size(); ++q) {
    if (!g.is_homogeneous(images[q], gens[q].degree))
      out.push_back("image of " + gens[q].name + " is not of degree " + std::to_string(gens[q].degree));
    Vec rhs = m.lie->evaluate(in_characteristic(m.lie->d(m.lie->generator(q)), g.characteristic()), g, images);
    if (!mcforge::is_zero(sub(g.d(images[q]), rhs)))
      out.push_back("d(phi(" + gens[q].name + ")) != phi(d " + gens[q].name + ")");
  }
  return out;
}

HomMcn hom_mcn(const DgLieAlgebra& g, const McnAlgebra& m, double budget) {
  check_stage(g, m);
  const FreeLieTruncation& L = *m.lie;
  const auto& gens = L.generators();
  HomMcn out;
  out.n = m.n;
  for (std::size_t q = 0; q < gens.size(); ++q)
    out.equations.push_back("d(phi(" + gens[q].name + ")) = " + lie_vector_str(L, L.d(L.generator(q))));

  const std::uint32_t p = g.characteristic();
  if (p == 0) return out;

  std::vector<std::vector<std::size_t>> slots;
  double size = 1;
  for (const auto& gen : gens) {
    slots.push_back(g.indices_of_degree(gen.degree));
    size *= std::pow(double(p), double(slots.back().size()));
  }
  if (size > budget)
    throw BudgetExceeded("hom(mc_n, g) enumeration of " + std::to_string(static_cast<long long>(size)) +
                         " assignments exceeds the budget");

  std::vector<Vec> d_gens;
  for (std::size_t q = 0; q < gens.size(); ++q) d_gens.push_back(in_characteristic(L.d(L.generator(q)), p));

  std::vector<std::pair<std::size_t, std::size_t>> flat;  // (generator, basis index)
  for (std::size_t q = 0; q < gens.size(); ++q)
    for (std::size_t i : slots[q]) flat.emplace_back(q, i);
  std::vector<std::uint32_t> counter(flat.size(), 0);
  Deadline deadline = Deadline::from_env();
  std::size_t visited = 0;
  while (true) {
    if ((++visited & 1023) == 0) deadline.check("hom(mc_n, g) enumeration");
    std::vector<Vec> images(gens.size(), g.zero());
    for (std::size_t c = 0; c < flat.size(); ++c)
      images[flat[c].first][flat[c].second] = Scalar::residue(counter[c], p);
    bool ok = true;
    for (std::size_t q = 0; q < gens.size() && ok; ++q)
      ok = mcforge::is_zero(sub(g.d(images[q]), L.evaluate(d_gens[q], g, images)));
    if (ok) out.morphisms.push_back(std::move(images));

    std::size_t pos = 0;
    for (; pos < flat.size(); ++pos) {
      if (++counter[pos] < p) break;
      counter[pos] = 0;
    }
    if (pos == flat.size()) break;
  }
  return out;
}

MCSimplex inclusion_to_mcn(const DgLieAlgebra& g, const McnAlgebra& m, const std::vector<Vec>& images) {
  check_stage(g, m);
  const std::uint32_t p = g.characteristic();
  MCSimplex out = zero_simplex(g, m.n);
  for (const auto& [k, form] : m.phi) {
    Vec image = m.lie->evaluate(unit(m.lie->dim(), k), g, images);
    if (mcforge::is_zero(image)) continue;
    PolyForm f = p ? form.in_characteristic(p) : form;
    for (std::size_t i = 0; i < image.size(); ++i)
      if (!image[i].is_zero()) out.coeffs[i] += f * image[i];
  }
  return out;
}

}  // namespace mcforge
