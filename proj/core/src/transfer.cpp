#include "mcforge/transfer.hpp"

#include <functional>
#include <sstream>

#include "mcforge/error.hpp"

namespace mcforge {

namespace {

int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

std::string face_name(std::uint32_t I) {
  std::string s;
  for (int v : vertices(I)) s += std::to_string(v);
  return s;
}

// Calls f on every tuple of length k over [0, dim) whose total shifted
// degree lies in [lo, hi]; shifted degrees range over [-1, top].
void for_each_tuple(const std::vector<int>& sdeg, int k, int lo, int hi,
                    const std::function<void(const std::vector<std::size_t>&)>& f) {
  int top = -1;
  for (int d : sdeg) top = std::max(top, d);
  std::vector<std::size_t> t(k);
  std::function<void(int, int)> rec = [&](int pos, int sum) {
    int rest = k - pos;
    if (sum - rest > hi || sum + top * rest < lo) return;
    if (pos == k) {
      f(t);
      return;
    }
    for (std::size_t i = 0; i < sdeg.size(); ++i) {
      t[pos] = i;
      rec(pos + 1, sum + sdeg[i]);
    }
  };
  rec(0, 0);
}

}  // namespace

TransferredOps::TransferredOps(int n, int K) : n_(n), K_(K), basis_(cochain_basis(n)) {
  if (n < 0 || n > 4) throw InvalidInput("transfer: simplex dimension must be in [0, 4]");
  if (K < 1 || K > 6) throw BudgetExceeded("transfer: arity cutoff must be in [1, 6]");
  ops_.resize(K + 1);
  std::vector<int> sdeg(dim());
  for (std::size_t i = 0; i < dim(); ++i) sdeg[i] = shifted_degree(i);

  for (std::size_t i = 0; i < dim(); ++i) {
    Vec v = scaled(cochain_d(n, unit(dim(), i)), Scalar(-1));
    if (!is_zero(v)) ops_[1][{i}] = std::move(v);
  }
  for (int k = 2; k <= K; ++k) {
    for_each_tuple(sdeg, k, -2, n - 2, [&](const std::vector<std::size_t>& t) {
      PolyForm acc(n);
      for (int j = 1; j < k; ++j) {
        std::vector<std::size_t> a(t.begin(), t.begin() + j), b(t.begin() + j, t.end());
        const PolyForm& x = lambda(a);
        if (x.is_zero()) continue;
        const PolyForm& y = lambda(b);
        if (y.is_zero()) continue;
        PolyForm xy = x * y;
        if (x.degree() % 2) xy = -xy;
        acc += xy;
      }
      Vec v = dupont_p(acc);
      if (!is_zero(v)) ops_[k][t] = std::move(v);
    });
  }
}

const PolyForm& TransferredOps::lambda(const std::vector<std::size_t>& t) const {
  auto it = lambda_.find(t);
  if (it != lambda_.end()) return it->second;
  PolyForm out(n_);
  if (t.size() == 1) {
    out = elementary_form(n_, basis_[t[0]]);
  } else {
    int deg = 1;  // form degree of the output
    for (std::size_t i : t) deg += shifted_degree(i);
    if (deg >= 0 && deg < n_) {
      PolyForm acc(n_);
      for (std::size_t j = 1; j < t.size(); ++j) {
        std::vector<std::size_t> a(t.begin(), t.begin() + j), b(t.begin() + j, t.end());
        const PolyForm& x = lambda(a);
        if (x.is_zero()) continue;
        const PolyForm& y = lambda(b);
        if (y.is_zero()) continue;
        PolyForm xy = x * y;
        if (x.degree() % 2 == 0) xy = -xy;
        acc += xy;
      }
      out = dupont_h(acc);
    }
  }
  return lambda_.emplace(t, std::move(out)).first->second;
}

Vec TransferredOps::op(const std::vector<std::size_t>& tuple) const {
  int k = static_cast<int>(tuple.size());
  if (k < 1 || k > K_) throw InvalidInput("transfer: arity out of range");
  auto it = ops_[k].find(tuple);
  return it == ops_[k].end() ? zeros(dim()) : it->second;
}

std::vector<std::pair<std::vector<std::size_t>, Vec>> TransferredOps::table(int k) const {
  if (k < 1 || k > K_) throw InvalidInput("transfer: arity out of range");
  return {ops_[k].begin(), ops_[k].end()};
}

std::vector<std::string> TransferredOps::check_ainfty(int upto) const {
  if (upto > K_) throw InvalidInput("transfer: relation arity beyond cutoff");
  std::vector<int> sdeg(dim());
  for (std::size_t i = 0; i < dim(); ++i) sdeg[i] = shifted_degree(i);
  std::vector<std::string> bad;
  for (int k = 1; k <= upto; ++k) {
    for_each_tuple(sdeg, k, -3, n_ - 3, [&](const std::vector<std::size_t>& t) {
      Vec total = zeros(dim());
      for (int s = 1; s <= k; ++s)
        for (int r = 0; r + s <= k; ++r) {
          Vec inner = op(std::vector<std::size_t>(t.begin() + r, t.begin() + r + s));
          int pre = 0;
          for (int i = 0; i < r; ++i) pre += sdeg[t[i]];
          for (std::size_t m = 0; m < dim(); ++m) {
            if (inner[m].is_zero()) continue;
            std::vector<std::size_t> outer(t.begin(), t.begin() + r);
            outer.push_back(m);
            outer.insert(outer.end(), t.begin() + r + s, t.end());
            axpy(total, inner[m] * Scalar(sign_of(pre)), op(outer));
          }
        }
      if (!is_zero(total)) {
        std::string s = "A-infinity relation fails on (";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + face_name(basis_[t[i]]);
        bad.push_back(s + ")");
      }
    });
  }
  return bad;
}

std::vector<std::string> TransferredOps::check_shuffles(int upto) const {
  if (upto > K_) throw InvalidInput("transfer: arity beyond cutoff");
  std::vector<int> sdeg(dim());
  for (std::size_t i = 0; i < dim(); ++i) sdeg[i] = shifted_degree(i);
  std::vector<std::string> bad;
  for (int k = 2; k <= upto; ++k)
    for (int p = 1; p < k; ++p) {
      for_each_tuple(sdeg, k, -2, n_ - 2, [&](const std::vector<std::size_t>& xy) {
        Vec total = zeros(dim());
        // positions of the x's: increasing p-subsets of [0, k)
        std::vector<int> pos(p);
        std::function<void(int, int)> rec = [&](int idx, int from) {
          if (idx == p) {
            std::vector<std::size_t> word(k);
            std::vector<bool> is_x(k, false);
            for (int a = 0; a < p; ++a) is_x[pos[a]] = true;
            int xi = 0, yi = 0, sgn = 0, y_seen_deg = 0;
            for (int slot = 0; slot < k; ++slot) {
              if (is_x[slot]) {
                word[slot] = xy[xi];
                sgn += sdeg[xy[xi]] * y_seen_deg;
                ++xi;
              } else {
                word[slot] = xy[p + yi];
                y_seen_deg += sdeg[xy[p + yi]];
                ++yi;
              }
            }
            axpy(total, Scalar(sign_of(sgn)), op(word));
            return;
          }
          for (int s = from; s <= k - (p - idx); ++s) {
            pos[idx] = s;
            rec(idx + 1, s + 1);
          }
        };
        rec(0, 0);
        if (!is_zero(total)) {
          std::string s = "shuffle relation fails on (";
          for (int i = 0; i < k; ++i) s += (i == p ? "|" : (i ? "," : "")) + face_name(basis_[xy[i]]);
          bad.push_back(s + ")");
        }
      });
    }
  return bad;
}

std::string TransferredOps::dump() const {
  std::ostringstream out;
  out << "n " << n_ << " K " << K_ << "\n";
  for (int k = 1; k <= K_; ++k)
    for (const auto& [t, v] : ops_[k]) {
      out << "b" << k << " ";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << face_name(basis_[t[i]]);
      out << " =";
      for (std::size_t m = 0; m < v.size(); ++m)
        if (!v[m].is_zero()) out << " " << v[m].str() << "*e" << face_name(basis_[m]);
      out << "\n";
    }
  return out.str();
}

// ---------------------------------------------------------------------------

std::vector<Generator> mcn_generators(int n) {
  std::vector<Generator> gens;
  for (std::uint32_t I : cochain_basis(n)) {
    std::string name;
    if (n == 0) {
      name = "alpha";
    } else if (n == 1) {
      name = I == 1 ? "beta0" : I == 2 ? "beta1" : "lambda";
    } else {
      name = "a" + face_name(I);
    }
    gens.push_back({name, 1 - face_degree(I)});
  }
  return gens;
}

namespace {

template <typename F>
void for_components(const PolyForm& a, F&& f) {
  for (int k = 0; k <= a.n(); ++k) {
    PolyForm c = a.component(k);
    if (!c.is_zero()) f(k, c);
  }
}

void add_to(LieForm& x, std::size_t i, const PolyForm& a) {
  auto it = x.find(i);
  if (it == x.end()) {
    if (!a.is_zero()) x.emplace(i, a);
    return;
  }
  it->second += a;
  if (it->second.is_zero()) x.erase(it);
}

}  // namespace

LieForm lie_form_bracket(const FreeLieTruncation& L, const LieForm& x, const LieForm& y) {
  LieForm out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const SparseVec& c = L.bracket_basis(i, j);
      if (c.entries().empty()) continue;
      PolyForm ab(a.n());
      for_components(a, [&](int k, const PolyForm& ak) {
        PolyForm t = ak * b;
        if (k % 2 && L.basis()[j].degree % 2) t = -t;
        ab += t;
      });
      if (ab.is_zero()) continue;
      for (const auto& [m, v] : c.entries()) add_to(out, m, ab * v);
    }
  return out;
}

LieForm lie_form_d(const FreeLieTruncation& L, const LieForm& x) {
  LieForm out;
  for (const auto& [i, a] : x) {
    Vec dx = L.d(unit(L.dim(), i));
    for (std::size_t m = 0; m < dx.size(); ++m)
      if (!dx[m].is_zero()) add_to(out, m, a * dx[m]);
    PolyForm da = a.d();
    if (L.basis()[i].degree % 2) da = -da;
    add_to(out, i, da);
  }
  return out;
}

LieForm mcn_curvature(const McnAlgebra& m) {
  LieForm out = lie_form_d(*m.lie, m.phi);
  for (const auto& [i, a] : lie_form_bracket(*m.lie, m.phi, m.phi)) add_to(out, i, a * Scalar(1, 2));
  return out;
}

McnAlgebra build_mcn(int n, int N) {
  if (n < 0 || n > 3) throw InvalidInput("build_mcn: simplex dimension must be in [0, 3]");
  if (N < 2 || N > 7) throw BudgetExceeded("build_mcn: weight cutoff must be in [2, 7]");
  auto gens = mcn_generators(n);
  auto L = std::make_shared<FreeLieTruncation>(gens, N);
  const auto& basis = cochain_basis(n);
  std::size_t g = basis.size();

  std::vector<LieForm> phi(N);
  for (std::size_t I = 0; I < g; ++I)
    phi[1].emplace(L->generator_index(I), elementary_form(n, basis[I]) * Scalar(suspension_sign(basis[I])));
  LieForm curvature;  // ½[Φ,Φ] summed over weights < N
  for (int w = 2; w < N; ++w) {
    LieForm r;
    for (int u = 1; u < w; ++u)
      for (const auto& [i, a] : lie_form_bracket(*L, phi[u], phi[w - u])) add_to(r, i, a * Scalar(1, 2));
    for (const auto& [i, a] : r) {
      add_to(curvature, i, a);
      PolyForm ha = dupont_h(a);
      if (L->basis()[i].degree % 2) ha = -ha;
      add_to(phi[w], i, ha);
    }
  }

  // Σ_J ε_J d(x_J) ⊗ ω_J = -(1⊗δ)τ - p(½[Φ,Φ])
  std::vector<Vec> d_gens(g, L->zero());
  for (std::size_t I = 0; I < g; ++I) {
    Vec delta = cochain_d(n, unit(g, I));
    Scalar s((gens[I].degree % 2 ? 1 : -1) * suspension_sign(basis[I]));
    for (std::size_t J = 0; J < g; ++J)
      if (!delta[J].is_zero()) d_gens[J][L->generator_index(I)] += s * delta[J];
  }
  for (const auto& [i, a] : curvature) {
    Vec pa = dupont_p(a);
    for (std::size_t J = 0; J < g; ++J)
      if (!pa[J].is_zero()) d_gens[J][i] -= pa[J];
  }
  for (std::size_t J = 0; J < g; ++J) d_gens[J] = scaled(d_gens[J], Scalar(suspension_sign(basis[J])));
  L->set_differential(d_gens);

  McnAlgebra out;
  out.n = n;
  for (int w = 1; w < N; ++w)
    for (const auto& [i, a] : phi[w]) add_to(out.phi, i, a);
  out.lie = std::move(L);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vec> basis_images(const LieTruncationMap& f) {
  const auto& basis = f.source->basis();
  std::vector<Vec> val(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    val[i] = b.left < 0 ? f.images.at(static_cast<unsigned char>(b.lead[0]))
                        : f.target->bracket(val[static_cast<std::size_t>(b.left)], val[static_cast<std::size_t>(b.right)]);
  }
  return val;
}

}  // namespace

Matrix LieTruncationMap::stage_matrix(int k) const {
  std::size_t cols = source->dim_below(k), rows = target->dim_below(k);
  auto val = basis_images(*this);
  std::vector<Vec> columns;
  for (std::size_t i = 0; i < cols; ++i) columns.emplace_back(val[i].begin(), val[i].begin() + static_cast<long>(rows));
  return Matrix::from_columns(rows, columns);
}

DgLieMorphism LieTruncationMap::stage(int k) const {
  return {source->quotient_stage(k), target->quotient_stage(k), stage_matrix(k)};
}

std::vector<std::string> LieTruncationMap::check() const {
  std::vector<std::string> bad;
  if (images.size() != source->generators().size()) return {"wrong number of generator images"};
  for (std::size_t g = 0; g < images.size(); ++g) {
    int deg = source->generators()[g].degree;
    for (std::size_t m = 0; m < images[g].size(); ++m)
      if (!images[g][m].is_zero() && target->basis()[m].degree != deg)
        bad.push_back("image of " + source->generators()[g].name + " has the wrong degree");
    Vec lhs = target->d(images[g]);
    Vec rhs = apply(source->d(source->generator(g)));
    if (lhs != rhs) bad.push_back("d does not commute on " + source->generators()[g].name);
  }
  return bad;
}

LieTruncationMap compose(const LieTruncationMap& g, const LieTruncationMap& f) {
  if (f.target != g.source) throw InvalidInput("compose: maps do not match");
  LieTruncationMap out{f.source, g.target, {}};
  for (const Vec& v : f.images) out.images.push_back(g.apply(v));
  return out;
}

std::vector<Scalar> bernoulli_series(int m) {
  std::vector<Scalar> c(m + 1), inv_fact(m + 2);
  inv_fact[0] = Scalar(1);
  for (int k = 1; k <= m + 1; ++k) inv_fact[k] = inv_fact[k - 1] * Scalar(1, k);
  c[0] = Scalar(1);
  for (int n = 1; n <= m; ++n) {
    Scalar s(0);
    for (int k = 0; k < n; ++k) s += c[k] * inv_fact[n + 1 - k];
    c[n] = -s;
  }
  return c;
}

Vec lawrence_sullivan_dlambda(const McnAlgebra& mc1, bool swapped) {
  if (mc1.n != 1) throw InvalidInput("lawrence_sullivan_dlambda: needs mc_1");
  const auto& L = *mc1.lie;
  Vec a = L.generator(mc1.generator_of(0b01)), b = L.generator(mc1.generator_of(0b10));
  if (swapped) std::swap(a, b);
  Vec lambda = L.generator(mc1.generator_of(0b11));
  auto c = bernoulli_series(L.cutoff());
  Vec out = L.bracket(lambda, b);
  Vec term = sub(b, a);
  for (int k = 0; k < L.cutoff(); ++k) {
    axpy(out, c[k], term);
    term = L.bracket(lambda, term);
  }
  return out;
}

LieTruncationMap dual_of_cochain_map(const McnAlgebra& source, const McnAlgebra& target, const Matrix& c_map) {
  std::size_t gs = source.lie->generators().size(), gt = target.lie->generators().size();
  if (c_map.rows() != gs || c_map.cols() != gt) throw InvalidInput("cochain map has the wrong shape");
  // degree-preserving, so the suspension signs on both sides agree
  LieTruncationMap f{source.lie, target.lie, {}};
  for (std::size_t J = 0; J < gs; ++J) {
    Vec v = target.lie->zero();
    for (std::size_t I = 0; I < gt; ++I) v[target.lie->generator_index(I)] = c_map.at(J, I);
    f.images.push_back(std::move(v));
  }
  return f;
}

LieTruncationMap coface(const McnAlgebra& source, const McnAlgebra& target, int j) {
  if (source.n + 1 != target.n) throw InvalidInput("coface: dimensions must differ by one");
  return dual_of_cochain_map(source, target, cochain_face_matrix(target.n, j));
}

LieTruncationMap codegeneracy(const McnAlgebra& source, const McnAlgebra& target, int j) {
  if (source.n != target.n + 1) throw InvalidInput("codegeneracy: dimensions must differ by one");
  return dual_of_cochain_map(source, target, cochain_degeneracy_matrix(target.n, j));
}

McnAlgebra mc0_coproduct(int copies, int N) {
  std::vector<Generator> gens;
  for (int j = 0; j < copies; ++j) gens.push_back({"alpha" + std::to_string(j), 1});
  auto L = std::make_shared<FreeLieTruncation>(gens, N);
  std::vector<Vec> d;
  for (int j = 0; j < copies; ++j) {
    Vec a = L->generator(j);
    d.push_back(scaled(L->bracket(a, a), Scalar(-1, 2)));
  }
  L->set_differential(d);
  McnAlgebra out;
  out.n = 0;
  out.lie = std::move(L);
  return out;
}

CylinderMaps cylinder_maps(int N) {
  CylinderMaps c{build_mcn(0, N), build_mcn(1, N), mc0_coproduct(2, N), {}, {}};
  const auto& L1 = *c.mc1.lie;
  std::size_t b0 = c.mc1.generator_of(0b01), b1 = c.mc1.generator_of(0b10);
  c.i = {c.mc0_pair.lie, c.mc1.lie, {L1.generator(b0), L1.generator(b1)}};
  Vec alpha = c.mc0.lie->generator(0);
  std::vector<Vec> t_images(3, c.mc0.lie->zero());
  t_images[b0] = alpha;
  t_images[b1] = alpha;
  c.t = {c.mc1.lie, c.mc0.lie, t_images};
  return c;
}

FrameMaps frame_maps(int n, int N) {
  FrameMaps f{build_mcn(0, N), build_mcn(n, N), mc0_coproduct(n + 1, N), {}, {}};
  // C_0 -> C_n, e_0 -> Σ e_i
  std::size_t g = cochain_basis(n).size();
  Matrix w_c(g, 1);
  for (int i = 0; i <= n; ++i) w_c.add(cochain_index(n, 1u << i), 0, Scalar(1));
  f.w = dual_of_cochain_map(f.mcn, f.mc0, w_c);
  std::vector<Vec> p_images;
  for (int i = 0; i <= n; ++i) p_images.push_back(f.mcn.lie->generator(f.mcn.generator_of(1u << i)));
  f.p = {f.mc0_copies.lie, f.mcn.lie, p_images};
  return f;
}

}  // namespace mcforge
