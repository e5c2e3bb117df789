#include "mcforge/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mcforge/error.hpp"

namespace mcforge::io {

using json = nlohmann::ordered_json;

namespace {

Scalar scalar_from(const json& v, std::uint32_t prime) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), prime);
  if (v.is_number_integer()) {
    Scalar s(v.get<long long>());
    return prime ? s.in_characteristic(prime) : s;
  }
  throw InvalidInput("scalar must be an integer or a \"num/den\" string, got " + v.dump());
}

json scalar_to(const Scalar& s) { return s.str(); }

Vec vec_from(const json& v, std::size_t dim, std::uint32_t prime, const std::string& what) {
  if (!v.is_array() || v.size() != dim)
    throw InvalidInput(what + ": expected an array of length " + std::to_string(dim));
  Vec out;
  for (const auto& x : v) out.push_back(scalar_from(x, prime));
  return out;
}

json vec_to(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to(x));
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

struct Common {
  std::uint32_t prime = 0;
  std::vector<BasisElement> basis;
  std::vector<Vec> d;
  std::vector<BracketEntry> table;
  std::optional<Filtration> filtration;
};

std::uint32_t prime_of(const json& doc, std::uint32_t override_prime) {
  if (override_prime) return override_prime;
  if (!doc.contains("char")) return 0;
  long long p = doc.at("char").get<long long>();
  if (p < 0 || p > 65521) throw InvalidInput("unsupported characteristic " + std::to_string(p));
  return static_cast<std::uint32_t>(p);
}

Common read_common(const json& doc, const char* table_key, std::uint32_t override_prime) {
  Common c;
  c.prime = prime_of(doc, override_prime);
  for (const auto& b : field(doc, "basis")) c.basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>()});
  const std::size_t n = c.basis.size();

  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < n; ++i) by_degree[c.basis[i].degree].push_back(i);
  c.d.assign(n, zeros(n));
  if (doc.contains("d")) {
    for (const auto& [key, rows] : doc.at("d").items()) {
      int k = std::stoi(key);
      const auto& src = by_degree[k];
      const auto& dst = by_degree[k + 1];
      if (!rows.is_array() || rows.size() != src.size())
        throw InvalidInput("d in degree " + key + ": expected " + std::to_string(src.size()) + " rows");
      for (std::size_t r = 0; r < src.size(); ++r) {
        Vec row = vec_from(rows[r], dst.size(), c.prime, "d in degree " + key);
        for (std::size_t q = 0; q < dst.size(); ++q) c.d[src[r]][dst[q]] = row[q];
      }
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, Vec> entries;
  if (doc.contains(table_key)) {
    for (const auto& e : doc.at(table_key)) {
      std::size_t i = e.at("i").get<std::size_t>(), j = e.at("j").get<std::size_t>();
      if (i >= n || j >= n) throw InvalidInput(std::string(table_key) + " index out of range");
      Vec v = vec_from(e.at("coeffs"), n, c.prime, table_key);
      auto [it, fresh] = entries.emplace(std::make_pair(i, j), v);
      if (!fresh) it->second = add(it->second, v);
    }
  }
  for (const auto& [ij, v] : entries) {
    c.table.push_back({ij.first, ij.second, v});
    auto [i, j] = ij;
    if (i != j && !entries.count({j, i})) {
      bool odd = (c.basis[i].degree % 2 != 0) && (c.basis[j].degree % 2 != 0);
      c.table.push_back({j, i, scaled(v, Scalar(odd ? 1 : -1))});
    }
  }

  if (doc.contains("filtration")) {
    Filtration f;
    for (const auto& stage : doc.at("filtration")) {
      f.stages.emplace_back();
      for (const auto& v : stage) f.stages.back().push_back(vec_from(v, n, c.prime, "filtration"));
    }
    c.filtration = std::move(f);
  }
  return c;
}

json write_common(std::uint32_t prime, const std::vector<BasisElement>& basis, const std::vector<Vec>& d,
                  const std::vector<BracketEntry>& table, const char* table_key, const std::optional<Filtration>& filtration) {
  json doc;
  doc["char"] = prime;
  json b = json::array();
  for (const auto& e : basis) b.push_back({{"name", e.name}, {"degree", e.degree}});
  doc["basis"] = b;

  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < basis.size(); ++i) by_degree[basis[i].degree].push_back(i);
  json dj = json::object();
  for (const auto& [k, src] : by_degree) {
    auto it = by_degree.find(k + 1);
    if (it == by_degree.end()) continue;
    bool nonzero = false;
    json rows = json::array();
    for (std::size_t i : src) {
      Vec row;
      for (std::size_t q : it->second) row.push_back(d[i][q]);
      nonzero = nonzero || !is_zero(row);
      rows.push_back(vec_to(row));
    }
    if (nonzero) dj[std::to_string(k)] = rows;
  }
  doc["d"] = dj;

  json t = json::array();
  for (const auto& e : table)
    if (e.i <= e.j && !is_zero(e.coeffs)) t.push_back({{"i", e.i}, {"j", e.j}, {"coeffs", vec_to(e.coeffs)}});
  doc[table_key] = t;

  if (filtration) {
    json f = json::array();
    for (const auto& stage : filtration->stages) {
      json s = json::array();
      for (const auto& v : stage) s.push_back(vec_to(v));
      f.push_back(s);
    }
    doc["filtration"] = f;
  }
  return doc;
}

std::vector<Vec> d_images(const DgLieAlgebra& g) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < g.dim(); ++i) out.push_back(g.d(g.basis_vector(i)));
  return out;
}

DgLieAlgebra algebra_from(const json& doc, std::uint32_t prime) {
  Common c = read_common(doc, "brackets", prime);
  DgLieAlgebra g(c.basis, c.d, c.table, c.prime);
  g.declared_filtration = c.filtration;
  return g;
}

LieCoalgebra coalgebra_from(const json& doc, std::uint32_t prime) {
  Common c = read_common(doc, "cobrackets", prime);
  LieCoalgebra out(c.basis, c.d, c.table, c.prime);
  out.declared_filtration = c.filtration;
  return out;
}

json algebra_doc(const DgLieAlgebra& g) {
  return write_common(g.characteristic(), g.basis(), d_images(g), g.bracket_entries(), "brackets", g.declared_filtration);
}

json coalgebra_doc(const LieCoalgebra& c) {
  return write_common(c.characteristic(), c.basis(), c.d_images(), c.cobracket_entries(), "cobrackets",
                      c.declared_filtration);
}

Matrix matrix_from(const json& m, std::size_t rows, std::size_t cols, std::uint32_t prime) {
  if (!m.is_array() || m.size() != rows) throw InvalidInput("matrix: expected " + std::to_string(rows) + " rows");
  std::vector<Vec> r;
  for (const auto& row : m) r.push_back(vec_from(row, cols, prime, "matrix row"));
  return Matrix::from_rows(cols, r);
}

json matrix_to(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to(m.row(i).dense(m.cols())));
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

DgLieAlgebra algebra_from_json(const std::string& text, std::uint32_t prime_override) {
  return guarded([&] { return algebra_from(parse(text), prime_override); });
}

std::string algebra_to_json(const DgLieAlgebra& g) { return algebra_doc(g).dump(2) + "\n"; }

LieCoalgebra coalgebra_from_json(const std::string& text, std::uint32_t prime_override) {
  return guarded([&] { return coalgebra_from(parse(text), prime_override); });
}

std::string coalgebra_to_json(const LieCoalgebra& c) { return coalgebra_doc(c).dump(2) + "\n"; }

MorphismDocument morphism_from_json(const std::string& text, std::uint32_t prime_override) {
  return guarded([&] {
    json doc = parse(text);
    MorphismDocument out;
    out.kind = doc.contains("kind") ? doc.at("kind").get<std::string>() : "lie";
    if (out.kind == "lie") {
      DgLieAlgebra s = algebra_from(field(doc, "source"), prime_override);
      DgLieAlgebra t = algebra_from(field(doc, "target"), prime_override);
      Matrix m = matrix_from(field(doc, "matrix"), t.dim(), s.dim(), s.characteristic());
      out.lie = DgLieMorphism{std::move(s), std::move(t), std::move(m)};
    } else if (out.kind == "coalgebra") {
      LieCoalgebra s = coalgebra_from(field(doc, "source"), prime_override);
      LieCoalgebra t = coalgebra_from(field(doc, "target"), prime_override);
      Matrix m = matrix_from(field(doc, "matrix"), t.dim(), s.dim(), s.characteristic());
      out.coalgebra = CoalgebraMorphism{std::move(s), std::move(t), std::move(m)};
      out.lie = dualize(*out.coalgebra);
    } else {
      throw InvalidInput("unknown morphism kind \"" + out.kind + "\"");
    }
    return out;
  });
}

std::string morphism_to_json(const DgLieMorphism& phi) {
  json doc;
  doc["kind"] = "lie";
  doc["source"] = algebra_doc(phi.source);
  doc["target"] = algebra_doc(phi.target);
  doc["matrix"] = matrix_to(phi.matrix);
  return doc.dump(2) + "\n";
}

std::string morphism_to_json(const CoalgebraMorphism& f) {
  json doc;
  doc["kind"] = "coalgebra";
  doc["source"] = coalgebra_doc(f.source);
  doc["target"] = coalgebra_doc(f.target);
  doc["matrix"] = matrix_to(f.matrix);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace mcforge::io
