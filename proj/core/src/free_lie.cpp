#include "mcforge/free_lie.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "mcforge/error.hpp"

namespace mcforge {

namespace {

void add_term(AssocPoly& p, const std::string& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = p.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

AssocPoly multiply(const AssocPoly& a, const AssocPoly& b, int max_len) {
  AssocPoly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b)
      if (static_cast<int>(u.size() + v.size()) <= max_len) add_term(out, u + v, cu * cv);
  return out;
}

AssocPoly exp_letter(char c, int max_len) {
  AssocPoly e;
  for (int k = 0; k <= max_len; ++k) e[std::string(static_cast<std::size_t>(k), c)] = factorial(k).inverse();
  return e;
}

}  // namespace

AssocPoly bch_associative(int max_weight) {
  if (max_weight < 0) throw InvalidInput("bch: negative weight");
  AssocPoly z = multiply(exp_letter('x', max_weight), exp_letter('y', max_weight), max_weight);
  z.erase("");
  AssocPoly out, power = z;
  for (int k = 1; k <= max_weight; ++k) {
    Scalar c = Scalar(k % 2 == 1 ? 1 : -1, k);
    for (const auto& [w, a] : power) add_term(out, w, c * a);
    power = multiply(power, z, max_weight);
  }
  return out;
}

std::vector<std::pair<Scalar, std::string>> bch_left_normed(int max_weight) {
  // Dynkin-Specht-Wever: a homogeneous Lie polynomial P of weight k equals
  // (1/k) times the left-normed bracketing of its words.
  std::vector<std::pair<Scalar, std::string>> out;
  for (const auto& [w, c] : bch_associative(max_weight))
    out.emplace_back(c / Scalar(static_cast<long long>(w.size())), w);
  return out;
}


std::vector<std::string> lyndon_words(int alphabet, int length) {
  // Duval's generation of Lyndon words of length <= n in lexicographic order.
  std::vector<std::string> out;
  if (alphabet <= 0 || length <= 0) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    int m = static_cast<int>(w.size());
    if (m == length) {
      std::string s;
      for (int c : w) s.push_back(static_cast<char>(c));
      out.push_back(std::move(s));
    }
    while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == alphabet - 1) w.pop_back();
  }
  return out;
}

namespace {

bool is_lyndon(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!(w < w.substr(i))) return false;
  return !w.empty();
}

int sign_of(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

FreeLieTruncation::FreeLieTruncation(std::vector<Generator> generators, int N, std::uint32_t prime)
    : gens_(std::move(generators)), N_(N), prime_(prime) {
  if (N < 2) throw InvalidInput("free Lie truncation needs N >= 2");
  if (gens_.size() > 100) throw InvalidInput("too many generators");
  if (prime_ == 2) throw ArithmeticError("characteristic 2 is not supported");
  const int k = static_cast<int>(gens_.size());
  for (int w = 1; w < N_; ++w) {
    std::vector<BasisElement> layer;
    for (const auto& l : lyndon_words(k, w)) {
      BasisElement b;
      b.lead = l;
      b.weight = w;
      b.degree = word_degree(l);
      if (w == 1) {
        b.name = gens_[static_cast<unsigned char>(l[0])].name;
        b.expansion[l] = Scalar(1);
      } else {
        std::size_t split = 1;
        for (; split < l.size(); ++split)
          if (is_lyndon(l.substr(split))) break;
        const auto& u = basis_[lead_index_.at(l.substr(0, split))];
        const auto& v = basis_[lead_index_.at(l.substr(split))];
        b.left = static_cast<long>(lead_index_.at(u.lead));
        b.right = static_cast<long>(lead_index_.at(v.lead));
        b.name = "[" + u.name + "," + v.name + "]";
        b.expansion = lie_bracket(u.expansion, u.degree, v.expansion, v.degree);
      }
      layer.push_back(std::move(b));
    }
    if (w % 2 == 0) {
      for (const auto& l : lyndon_words(k, w / 2)) {
        if (word_degree(l) % 2 == 0) continue;
        const auto& u = basis_[lead_index_.at(l)];
        BasisElement b;
        b.lead = l + l;
        b.square = true;
        b.weight = w;
        b.degree = 2 * u.degree;
        b.left = b.right = static_cast<long>(lead_index_.at(l));
        b.name = "[" + u.name + "," + u.name + "]";
        b.expansion = lie_bracket(u.expansion, u.degree, u.expansion, u.degree);
        layer.push_back(std::move(b));
      }
    }
    std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) { return a.lead < b.lead; });
    for (auto& b : layer) {
      lead_index_[b.lead] = basis_.size();
      basis_.push_back(std::move(b));
    }
  }
  for (auto& b : basis_)
    for (auto& [w, c] : b.expansion) c = c.in_characteristic(prime_);

  table_.resize(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (basis_[i].weight + basis_[j].weight >= N_) continue;
      Vec c = normalize(lie_bracket(basis_[i].expansion, basis_[i].degree, basis_[j].expansion, basis_[j].degree));
      SparseVec s(c);
      if (!s.empty()) table_[i].emplace_back(j, std::move(s));
    }
  d_basis_.assign(basis_.size(), SparseVec());
  d_gens_.assign(gens_.size(), zero());
  d_gens_poly_.assign(gens_.size(), AssocPoly());
}

std::size_t FreeLieTruncation::dim_below(int k) const {
  std::size_t n = 0;
  for (const auto& b : basis_)
    if (b.weight < k) ++n;
  return n;
}

std::vector<std::size_t> FreeLieTruncation::weight_indices(int w) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].weight == w) out.push_back(i);
  return out;
}

int FreeLieTruncation::word_degree(const std::string& w) const {
  int d = 0;
  for (char c : w) d += gens_.at(static_cast<unsigned char>(c)).degree;
  return d;
}

void FreeLieTruncation::multiply_into(AssocPoly& out, const AssocPoly& p, const AssocPoly& q, const Scalar& c) const {
  for (const auto& [u, a] : p)
    for (const auto& [v, b] : q) {
      if (static_cast<int>(u.size() + v.size()) >= N_) continue;
      Scalar s = c * a * b;
      auto [it, fresh] = out.emplace(u + v, s);
      if (!fresh) {
        it->second += s;
        if (it->second.is_zero()) out.erase(it);
      }
    }
}

AssocPoly FreeLieTruncation::lie_bracket(const AssocPoly& p, int dp, const AssocPoly& q, int dq) const {
  AssocPoly out;
  multiply_into(out, p, q, Scalar(1));
  multiply_into(out, q, p, Scalar(-sign_of(static_cast<long long>(dp) * dq)));
  return out;
}

AssocPoly FreeLieTruncation::expand(const Vec& x) const {
  if (x.size() != dim()) throw InvalidInput("free Lie element has the wrong length");
  AssocPoly out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [w, c] : basis_[i].expansion) {
      auto [it, fresh] = out.emplace(w, x[i] * c);
      if (!fresh) {
        it->second += x[i] * c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

Vec FreeLieTruncation::normalize(const AssocPoly& p, bool* truncated) const {
  AssocPoly rest = p;
  Vec out = zero();
  bool cut = false;
  while (!rest.empty()) {
    auto it = rest.begin();
    std::string w = it->first;
    Scalar c = it->second;
    if (static_cast<int>(w.size()) >= N_) {
      cut = true;
      rest.erase(it);
      continue;
    }
    auto b = lead_index_.find(w);
    if (b == lead_index_.end()) throw InvalidInput("polynomial is not a Lie element (stray word of length " +
                                                   std::to_string(w.size()) + ")");
    const auto& e = basis_[b->second];
    Scalar coeff = e.square ? c / Scalar(2) : c;
    out[b->second] += coeff;
    for (const auto& [v, a] : e.expansion) {
      auto [jt, fresh] = rest.emplace(v, -coeff * a);
      if (!fresh) {
        jt->second -= coeff * a;
        if (jt->second.is_zero()) rest.erase(jt);
      }
    }
  }
  if (truncated) *truncated = cut;
  return out;
}

namespace {

struct Parser {
  const FreeLieTruncation& L;
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  std::pair<AssocPoly, int> parse_expr() {
    skip();
    if (pos >= s.size()) throw InvalidInput("unexpected end of bracket expression");
    if (s[pos] == '[') {
      ++pos;
      auto [p, dp] = parse_expr();
      skip();
      if (pos >= s.size() || s[pos] != ',') throw InvalidInput("expected ',' in bracket expression");
      ++pos;
      auto [q, dq] = parse_expr();
      skip();
      if (pos >= s.size() || s[pos] != ']') throw InvalidInput("expected ']' in bracket expression");
      ++pos;
      AssocPoly out;
      for (const auto& [u, a] : p)
        for (const auto& [v, b] : q) {
          out[u + v] += a * b;
          out[v + u] -= Scalar(sign_of(static_cast<long long>(dp) * dq)) * a * b;
        }
      for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
      return {out, dp + dq};
    }
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && s[pos] != '[' && s[pos] != ' ') ++pos;
    std::string name = s.substr(start, pos - start);
    for (std::size_t g = 0; g < L.generators().size(); ++g)
      if (L.generators()[g].name == name) return {AssocPoly{{std::string(1, static_cast<char>(g)), Scalar(1)}}, L.generators()[g].degree};
    throw InvalidInput("unknown generator '" + name + "'");
  }
};

}  // namespace

AssocPoly FreeLieTruncation::parse(const std::string& expr) const {
  Parser p{*this, expr};
  auto out = p.parse_expr().first;
  p.skip();
  if (p.pos != expr.size()) throw InvalidInput("trailing characters in bracket expression");
  for (auto& [w, c] : out) c = c.in_characteristic(prime_);
  return out;
}

Vec FreeLieTruncation::bracket_normalize(const std::string& expr, bool* truncated) const {
  return normalize(parse(expr), truncated);
}

const SparseVec& FreeLieTruncation::bracket_basis(std::size_t i, std::size_t j) const {
  static const SparseVec none;
  const auto& row = table_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == j) return it->second;
  return none;
}

Vec FreeLieTruncation::bracket(const Vec& x, const Vec& y) const {
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

AssocPoly FreeLieTruncation::d_word(const std::string& w) const {
  AssocPoly out;
  int before = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::size_t g = static_cast<unsigned char>(w[i]);
    Scalar s(sign_of(before));
    std::string pre = w.substr(0, i), post = w.substr(i + 1);
    for (const auto& [v, c] : d_gens_poly_[g]) {
      std::string word = pre + v + post;
      if (static_cast<int>(word.size()) >= N_) continue;
      auto [it, fresh] = out.emplace(word, s * c);
      if (!fresh) {
        it->second += s * c;
        if (it->second.is_zero()) out.erase(it);
      }
    }
    before += gens_[g].degree;
  }
  return out;
}

void FreeLieTruncation::set_differential(const std::vector<Vec>& on_generators) {
  if (on_generators.size() != gens_.size()) throw InvalidInput("need one differential value per generator");
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    const Vec& v = on_generators[g];
    if (v.size() != dim()) throw InvalidInput("differential value has the wrong length");
    for (std::size_t i = 0; i < dim(); ++i)
      if (!v[i].is_zero() && basis_[i].degree != gens_[g].degree + 1)
        throw InvalidInput("d(" + gens_[g].name + ") is not of degree " + std::to_string(gens_[g].degree + 1));
  }
  d_gens_ = on_generators;
  for (auto& v : d_gens_) v = mcforge::in_characteristic(v, prime_);
  for (std::size_t g = 0; g < gens_.size(); ++g) d_gens_poly_[g] = expand(d_gens_[g]);
  for (std::size_t i = 0; i < dim(); ++i) {
    AssocPoly acc;
    for (const auto& [w, c] : basis_[i].expansion)
      for (const auto& [v, a] : d_word(w)) {
        auto [it, fresh] = acc.emplace(v, c * a);
        if (!fresh) {
          it->second += c * a;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    d_basis_[i] = SparseVec(normalize(acc));
  }
}

Vec FreeLieTruncation::d(const Vec& x) const {
  Vec out = zero();
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [k, c] : d_basis_[i].entries()) out[k] += x[i] * c;
  }
  return out;
}

std::vector<std::string> FreeLieTruncation::check_d_squared() const {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (!is_zero(d(d(generator(g))))) out.push_back("d^2(" + gens_[g].name + ") != 0");
  return out;
}

DgLieAlgebra FreeLieTruncation::quotient_stage(int k) const {
  if (k < 2 || k > N_) throw InvalidInput("stage " + std::to_string(k) + " outside 2.." + std::to_string(N_));
  std::size_t m = dim_below(k);
  std::vector<mcforge::BasisElement> b;
  for (std::size_t i = 0; i < m; ++i) b.push_back({basis_[i].name, basis_[i].degree});
  auto cut = [&](const SparseVec& v) {
    Vec out = zeros(m);
    for (const auto& [j, c] : v.entries())
      if (j < m) out[j] = c;
    return out;
  };
  std::vector<Vec> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(cut(d_basis_[i]));
  std::vector<BracketEntry> br;
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, c] : table_[i])
      if (j < m) {
        Vec v = cut(c);
        if (!is_zero(v)) br.push_back({i, j, std::move(v)});
      }
  return DgLieAlgebra(std::move(b), std::move(d), br, prime_);
}

std::vector<DgLieAlgebra> FreeLieTruncation::tower() const {
  std::vector<DgLieAlgebra> out;
  for (int k = 2; k <= N_; ++k) out.push_back(quotient_stage(k));
  return out;
}

Matrix FreeLieTruncation::transition(int k) const {
  std::size_t lo = dim_below(k), hi = dim_below(k + 1);
  Matrix m(lo, hi);
  for (std::size_t i = 0; i < lo; ++i) m.add(i, i, Scalar(1));
  return m.in_characteristic(prime_);
}

namespace {

// Evaluates the standard bracketing of each basis element in a target
// algebra, memoized by basis index.
template <class Target>
Vec evaluate_in(const std::vector<FreeLieTruncation::BasisElement>& basis, const Vec& x, const Target& h,
                const std::vector<Vec>& images) {
  std::vector<std::optional<Vec>> memo(basis.size());
  std::function<const Vec&(std::size_t)> value = [&](std::size_t i) -> const Vec& {
    if (!memo[i]) {
      const auto& b = basis[i];
      memo[i] = b.left < 0 ? images.at(static_cast<unsigned char>(b.lead[0]))
                           : h.bracket(value(static_cast<std::size_t>(b.left)), value(static_cast<std::size_t>(b.right)));
    }
    return *memo[i];
  };
  Vec out = h.zero();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!x[i].is_zero()) axpy(out, x[i], value(i));
  return out;
}

}  // namespace

Vec FreeLieTruncation::evaluate(const Vec& x, const DgLieAlgebra& h, const std::vector<Vec>& images) const {
  if (images.size() != gens_.size()) throw InvalidInput("need one image per generator");
  return evaluate_in(basis_, x, h, images);
}

Vec FreeLieTruncation::evaluate(const Vec& x, const FreeLieTruncation& h, const std::vector<Vec>& images) const {
  if (images.size() != gens_.size()) throw InvalidInput("need one image per generator");
  return evaluate_in(basis_, x, h, images);
}

DgLieAlgebra free_nilpotent(const std::vector<Generator>& generators, int cls, std::uint32_t prime) {
  return FreeLieTruncation(generators, cls + 1, prime).as_dgla();
}

}  // namespace mcforge
