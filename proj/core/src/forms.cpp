#include "mcforge/forms.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <tuple>
#include <sstream>

#include "mcforge/error.hpp"

namespace mcforge {

namespace {

std::uint64_t exp_unit(int var) { return std::uint64_t(1) << (8 * (var - 1)); }

}  // namespace

int FormMonomial::poly_degree() const {
  int s = 0;
  for (int v = 1; v <= PolyForm::kMaxVars; ++v) s += exponent(v);
  return s;
}

void PolyForm::check_n(int n) {
  if (n < 0 || n > kMaxVars) throw InvalidInput("simplex dimension " + std::to_string(n) + " is out of range");
}

PolyForm PolyForm::constant(int n, const Scalar& c) {
  PolyForm f(n);
  f.add_term({}, c);
  return f;
}

PolyForm PolyForm::t(int n, int i) {
  if (i < 0 || i > n) throw InvalidInput("coordinate index out of range");
  PolyForm f(n);
  if (i > 0) {
    f.add_term({exp_unit(i), 0}, Scalar(1));
    return f;
  }
  f.add_term({}, Scalar(1));
  for (int v = 1; v <= n; ++v) f.add_term({exp_unit(v), 0}, Scalar(-1));
  return f;
}

PolyForm PolyForm::dt(int n, int i) {
  if (i < 0 || i > n) throw InvalidInput("coordinate index out of range");
  PolyForm f(n);
  if (i > 0) {
    f.add_term({0, 1u << (i - 1)}, Scalar(1));
    return f;
  }
  for (int v = 1; v <= n; ++v) f.add_term({0, 1u << (v - 1)}, Scalar(-1));
  return f;
}

PolyForm PolyForm::monomial(int n, const FormMonomial& m, const Scalar& c) {
  PolyForm f(n);
  f.add_term(m, c);
  return f;
}

int PolyForm::degree() const {
  int k = -1;
  for (const auto& [m, c] : terms_) {
    if (k >= 0 && m.form_degree() != k) throw InvalidInput("form is not homogeneous");
    k = m.form_degree();
  }
  return k;
}

int PolyForm::poly_degree() const {
  int k = 0;
  for (const auto& [m, c] : terms_) k = std::max(k, m.poly_degree());
  return k;
}

PolyForm PolyForm::component(int k) const {
  PolyForm f(n_);
  for (const auto& [m, c] : terms_)
    if (m.form_degree() == k) f.terms_.emplace(m, c);
  return f;
}

void PolyForm::add_term(const FormMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.n_ != n_) throw InvalidInput("adding forms on simplices of different dimension");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  if (o.n_ != n_) throw InvalidInput("subtracting forms on simplices of different dimension");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyForm& PolyForm::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

PolyForm PolyForm::operator-() const {
  PolyForm f = *this;
  for (auto& [m, v] : f.terms_) v = -v;
  return f;
}

PolyForm operator*(const PolyForm& a, const PolyForm& b) {
  if (a.n_ != b.n_) throw InvalidInput("wedge of forms on simplices of different dimension");
  PolyForm out(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.mask & mb.mask) continue;
      int inversions = 0;
      for (std::uint32_t bits = mb.mask; bits; bits &= bits - 1) {
        int bit = __builtin_ctz(bits);
        inversions += __builtin_popcount(ma.mask >> (bit + 1));
      }
      Scalar c = ca * cb;
      if (inversions % 2) c = -c;
      out.add_term({ma.exps + mb.exps, ma.mask | mb.mask}, c);
    }
  return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) { return a * b; }

PolyForm PolyForm::d() const {
  PolyForm out(n_);
  for (const auto& [m, c] : terms_)
    for (int v = 1; v <= n_; ++v) {
      int e = m.exponent(v);
      std::uint32_t bit = 1u << (v - 1);
      if (e == 0 || (m.mask & bit)) continue;
      int before = __builtin_popcount(m.mask & (bit - 1));
      Scalar coeff = c * Scalar(e);
      if (before % 2) coeff = -coeff;
      out.add_term({m.exps - exp_unit(v), m.mask | bit}, coeff);
    }
  return out;
}

PolyForm PolyForm::in_characteristic(std::uint32_t prime) const {
  PolyForm f(n_);
  for (const auto& [m, c] : terms_) f.add_term(m, c.in_characteristic(prime));
  return f;
}

std::string PolyForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  std::uint32_t current = ~0u;
  bool first_group = true, first_term = true;
  auto close = [&] {
    if (first_group) return;
    os << ")";
    if (current) {
      os << " * dt{";
      bool first = true;
      for (int v = 1; v <= n_; ++v)
        if (current & (1u << (v - 1))) {
          os << (first ? "" : ",") << v;
          first = false;
        }
      os << "}";
    }
  };
  for (const auto& [m, c] : terms_) {
    if (m.mask != current) {
      close();
      os << (first_group ? "(" : " + (");
      first_group = false;
      first_term = true;
      current = m.mask;
    }
    if (!first_term) os << " + ";
    first_term = false;
    os << c.str();
    for (int v = 1; v <= n_; ++v) {
      int e = m.exponent(v);
      if (e == 1) os << "*t" << v;
      if (e > 1) os << "*t" << v << "^" << e;
    }
  }
  close();
  return os.str();
}

PolyForm substitute(const PolyForm& a, int m, const std::vector<PolyForm>& t_images) {
  if (static_cast<int>(t_images.size()) != a.n()) throw InvalidInput("substitute: need one image per coordinate");
  std::vector<PolyForm> dts;
  for (const auto& img : t_images) {
    if (img.n() != m) throw InvalidInput("substitute: image on the wrong simplex");
    dts.push_back(img.d());
  }
  std::vector<std::vector<PolyForm>> powers(a.n() + 1);
  auto power = [&](int v, int e) -> const PolyForm& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(PolyForm::constant(m, Scalar(1)));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * t_images[v - 1]);
    return pw[e];
  };
  PolyForm out(m);
  for (const auto& [mono, c] : a.terms()) {
    PolyForm term = PolyForm::constant(m, c);
    for (int v = 1; v <= a.n(); ++v)
      if (int e = mono.exponent(v)) term = term * power(v, e);
    for (int v = 1; v <= a.n(); ++v)
      if (mono.mask & (1u << (v - 1))) term = term * dts[v - 1];
    out += term;
  }
  return out;
}

PolyForm pullback_affine(const PolyForm& a, int m, const std::vector<Vec>& bary) {
  if (static_cast<int>(bary.size()) != m + 1) throw InvalidInput("pullback_affine: need m+1 vertex images");
  std::vector<PolyForm> imgs;
  for (int j = 1; j <= a.n(); ++j) {
    PolyForm img(m);
    for (int k = 0; k <= m; ++k) {
      if (bary[k].size() != static_cast<std::size_t>(a.n() + 1)) throw InvalidInput("pullback_affine: bad barycentric point");
      if (!bary[k][j].is_zero()) img += PolyForm::t(m, k) * bary[k][j];
    }
    imgs.push_back(std::move(img));
  }
  return substitute(a, m, imgs);
}

PolyForm face(const PolyForm& a, int j) {
  int n = a.n();
  if (n == 0 || j < 0 || j > n) throw InvalidInput("face index out of range");
  std::vector<Vec> bary;
  for (int k = 0; k < n; ++k) bary.push_back(unit(n + 1, k < j ? k : k + 1));
  return pullback_affine(a, n - 1, bary);
}

PolyForm degeneracy(const PolyForm& a, int j) {
  int n = a.n();
  if (j < 0 || j > n) throw InvalidInput("degeneracy index out of range");
  std::vector<Vec> bary;
  for (int k = 0; k <= n + 1; ++k) bary.push_back(unit(n + 1, k <= j ? k : k - 1));
  return pullback_affine(a, n + 1, bary);
}

Scalar integrate_over_face(const PolyForm& a, const std::vector<int>& I) {
  if (I.empty()) throw InvalidInput("integration over an empty face");
  int m = static_cast<int>(I.size()) - 1;
  std::vector<Vec> bary;
  for (int v : I) {
    if (v < 0 || v > a.n()) throw InvalidInput("face vertex out of range");
    bary.push_back(unit(a.n() + 1, v));
  }
  PolyForm top = pullback_affine(a.component(m), m, bary);
  std::uint32_t full = m == 0 ? 0 : ((1u << m) - 1);
  std::uint32_t prime = 0;
  for (const auto& [mono, c] : top.terms()) prime = std::max(prime, c.characteristic());
  Scalar total(0);
  for (const auto& [mono, c] : top.terms()) {
    if (mono.mask != full) continue;
    Scalar num = c;
    int sum = 0;
    for (int v = 1; v <= m; ++v) {
      num *= factorial(mono.exponent(v), prime);
      sum += mono.exponent(v);
    }
    total += num / factorial(m + sum, prime);
  }
  return total;
}

Scalar integrate_over_face(const PolyForm& a, std::uint32_t face_mask) {
  return integrate_over_face(a, vertices(face_mask));
}

std::vector<FormMonomial> monomials_up_to(int n, int D) {
  std::vector<std::uint64_t> exps{0};
  for (int v = 1; v <= n; ++v) {
    std::vector<std::uint64_t> next;
    for (auto e : exps) {
      FormMonomial probe{e, 0};
      int used = probe.poly_degree();
      for (int k = 0; used + k <= D; ++k) next.push_back(e + exp_unit(v) * static_cast<std::uint64_t>(k));
    }
    exps = std::move(next);
  }
  std::vector<FormMonomial> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    for (auto e : exps) out.push_back({e, mask});
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::uint32_t>& cochain_basis(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 0 || n > PolyForm::kMaxVars) throw InvalidInput("simplex dimension out of range");
  std::vector<std::uint32_t> b;
  for (std::uint32_t I = 1; I < (1u << (n + 1)); ++I) b.push_back(I);
  std::sort(b.begin(), b.end(), [](std::uint32_t x, std::uint32_t y) {
    int px = __builtin_popcount(x), py = __builtin_popcount(y);
    if (px != py) return px < py;
    return vertices(x) < vertices(y);
  });
  return cache.emplace(n, std::move(b)).first->second;
}

std::size_t cochain_index(int n, std::uint32_t I) {
  const auto& b = cochain_basis(n);
  auto it = std::find(b.begin(), b.end(), I);
  if (it == b.end()) throw InvalidInput("face is not a subset of the simplex");
  return static_cast<std::size_t>(it - b.begin());
}

std::vector<int> vertices(std::uint32_t I) {
  std::vector<int> v;
  for (int i = 0; i < 32; ++i)
    if (I & (1u << i)) v.push_back(i);
  return v;
}

PolyForm elementary_form(int n, std::uint32_t I) {
  if (I == 0) throw InvalidInput("elementary form of the empty face");
  if (I >> (n + 1)) throw InvalidInput("face vertex out of range");
  auto idx = vertices(I);
  int k = static_cast<int>(idx.size()) - 1;
  PolyForm out(n);
  for (int j = 0; j <= k; ++j) {
    PolyForm term = PolyForm::t(n, idx[j]);
    for (int l = 0; l <= k; ++l)
      if (l != j) term = term * PolyForm::dt(n, idx[l]);
    if (j % 2) term = -term;
    out += term;
  }
  return out * factorial(k);
}

PolyForm elementary_form(int n, const std::vector<int>& I) {
  std::uint32_t mask = 0;
  for (int v : I) {
    if (v < 0 || v > n) throw InvalidInput("face vertex out of range");
    mask |= 1u << v;
  }
  return elementary_form(n, mask);
}

PolyForm dupont_i(int n, const Vec& c) {
  const auto& basis = cochain_basis(n);
  if (c.size() != basis.size()) throw InvalidInput("cochain has the wrong length");
  PolyForm out(n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!c[k].is_zero()) out += elementary_form(n, basis[k]) * c[k];
  return out;
}

Vec dupont_p(const PolyForm& a) {
  const auto& basis = cochain_basis(a.n());
  Vec out(basis.size(), Scalar(0));
  for (std::size_t k = 0; k < basis.size(); ++k) out[k] = integrate_over_face(a, basis[k]);
  return out;
}

namespace {

struct HCache {
  std::mutex mu;
  // (n, vertex, monomial) -> h_vertex(monomial)
  std::map<std::tuple<int, int, std::uint64_t, std::uint32_t>, PolyForm> hi;
  // (n, monomial) -> unsigned Σ ω_I h_I(monomial)
  std::map<std::tuple<int, std::uint64_t, std::uint32_t>, PolyForm> h;
  // n -> elementary forms by mask
  std::map<std::pair<int, std::uint32_t>, PolyForm> omega;
};

HCache& hcache() {
  static HCache c;
  return c;
}

const PolyForm& omega_cached(int n, std::uint32_t I) {
  auto& c = hcache();
  auto key = std::make_pair(n, I);
  auto it = c.omega.find(key);
  if (it != c.omega.end()) return it->second;
  return c.omega.emplace(key, elementary_form(n, I)).first->second;
}

// Fiber integration along the dilation toward vertex i, (u, t) -> (1−u)t + u e_i.
PolyForm h_vertex_monomial(int n, int i, const FormMonomial& mono) {
  auto& cache = hcache();
  auto key = std::make_tuple(n, i, mono.exps, mono.mask);
  auto it = cache.hi.find(key);
  if (it != cache.hi.end()) return it->second;
  const int m = n + 1;  // variable m plays the role of u
  PolyForm one_minus_u = PolyForm::constant(m, Scalar(1)) - PolyForm::t(m, m);
  std::vector<PolyForm> imgs;
  for (int j = 1; j <= n; ++j) {
    PolyForm img = one_minus_u * PolyForm::t(m, j);
    if (j == i) img += PolyForm::t(m, m);
    imgs.push_back(std::move(img));
  }
  PolyForm pulled = substitute(PolyForm::monomial(n, mono), m, imgs);
  PolyForm out(n);
  const std::uint32_t du = 1u << (m - 1);
  for (const auto& [pm, c] : pulled.terms()) {
    if (!(pm.mask & du)) continue;
    int eu = pm.exponent(m);
    std::uint32_t rest = pm.mask & ~du;
    Scalar coeff = c / Scalar(eu + 1);
    if (__builtin_popcount(rest) % 2) coeff = -coeff;
    out.add_term({pm.exps - exp_unit(m) * static_cast<std::uint64_t>(eu), rest}, coeff);
  }
  return cache.hi.emplace(key, out).first->second;
}

PolyForm h_vertex(const PolyForm& a, int i) {
  PolyForm out(a.n());
  for (const auto& [m, c] : a.terms()) out += h_vertex_monomial(a.n(), i, m) * c;
  return out;
}

void accumulate_h(int n, const PolyForm& beta, std::uint32_t I, int last, PolyForm& out) {
  for (int i = last + 1; i <= n; ++i) {
    PolyForm next = h_vertex(beta, i);
    if (next.is_zero()) continue;
    std::uint32_t J = I | (1u << i);
    out += omega_cached(n, J) * next;
    accumulate_h(n, next, J, i, out);
  }
}

PolyForm h_unsigned_monomial(int n, const FormMonomial& mono) {
  auto& cache = hcache();
  auto key = std::make_tuple(n, mono.exps, mono.mask);
  auto it = cache.h.find(key);
  if (it != cache.h.end()) return it->second;
  PolyForm out(n);
  if (mono.mask != 0) accumulate_h(n, PolyForm::monomial(n, mono), 0, -1, out);
  return cache.h.emplace(key, out).first->second;
}

PolyForm h_unsigned(const PolyForm& a) {
  PolyForm out(a.n());
  std::lock_guard<std::mutex> lock(hcache().mu);
  for (const auto& [m, c] : a.terms()) out += h_unsigned_monomial(a.n(), m) * c;
  return out;
}

bool& flipped_flag() {
  static bool f = false;
  return f;
}

int calibrated_sign() {
  static const int sign = [] {
    // Any form with ip − id ≠ 0 in degrees 1 and 2 pins the sign.
    for (PolyForm a : {PolyForm::t(2, 1) * PolyForm::dt(2, 2), PolyForm::t(2, 1) * PolyForm::t(2, 2) * PolyForm::dt(2, 1)}) {
      PolyForm lhs = h_unsigned(a).d() + h_unsigned(a.d());
      PolyForm rhs = dupont_i(2, dupont_p(a)) - a;
      if (rhs.is_zero()) continue;
      if (lhs == rhs) return 1;
      if (lhs == -rhs) return -1;
      throw Error("Dupont homotopy calibration failed: dh + hd is not ±(ip − id)");
    }
    throw Error("Dupont homotopy calibration failed: no test form");
  }();
  return sign;
}

}  // namespace

int dupont_h_sign() { return flipped_flag() ? -calibrated_sign() : calibrated_sign(); }

void set_dupont_h_sign_flipped(bool flipped) { flipped_flag() = flipped; }

PolyForm dupont_h(const PolyForm& a) { return h_unsigned(a) * Scalar(dupont_h_sign()); }

PolyForm dilation_homotopy(const PolyForm& a, int i) {
  if (i < 0 || i > a.n()) throw InvalidInput("dilation_homotopy: vertex out of range");
  std::lock_guard<std::mutex> lock(hcache().mu);
  return h_vertex(a, i);
}

Vec cochain_face(int n, const Vec& c, int j) { return dupont_p(face(dupont_i(n, c), j)); }

Vec cochain_degeneracy(int n, const Vec& c, int j) { return dupont_p(degeneracy(dupont_i(n, c), j)); }

Vec cochain_d(int n, const Vec& c) { return dupont_p(dupont_i(n, c).d()); }

namespace {

Matrix columns_of(int n, int target_n, const std::function<Vec(const Vec&)>& f) {
  std::size_t dim = cochain_basis(n).size();
  std::vector<Vec> cols;
  for (std::size_t k = 0; k < dim; ++k) cols.push_back(f(unit(dim, k)));
  return Matrix::from_columns(cochain_basis(target_n).size(), cols);
}

}  // namespace

Matrix cochain_face_matrix(int n, int j) {
  return columns_of(n, n - 1, [&](const Vec& c) { return cochain_face(n, c, j); });
}

Matrix cochain_degeneracy_matrix(int n, int j) {
  return columns_of(n, n + 1, [&](const Vec& c) { return cochain_degeneracy(n, c, j); });
}

Matrix cochain_d_matrix(int n) {
  return columns_of(n, n, [&](const Vec& c) { return cochain_d(n, c); });
}

}  // namespace mcforge
