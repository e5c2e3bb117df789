#include "mcforge/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "mcforge/error.hpp"

namespace mcforge {

SparseVec::SparseVec(const Vec& dense) {
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) entries_.emplace_back(i, dense[i]);
}

Scalar SparseVec::at(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Scalar(0);
}

void SparseVec::push_back(std::size_t i, Scalar v) {
  if (v.is_zero()) return;
  entries_.emplace_back(i, std::move(v));
}

void SparseVec::add(std::size_t i, const Scalar& v) {
  if (v.is_zero()) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) {
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  } else {
    entries_.insert(it, Entry{i, v});
  }
}

void SparseVec::axpy(const Scalar& c, const SparseVec& other) {
  if (c.is_zero() || other.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Scalar s = a->second + c * b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVec::scale(const Scalar& c) {
  if (c.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

Vec SparseVec::dense(std::size_t dim) const {
  Vec out(dim, Scalar(0));
  for (const auto& [i, v] : entries_) out.at(i) = v;
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back(i, Scalar(1));
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InvalidInput("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      if (!columns[j][i].is_zero()) m.data_[i].push_back(j, columns[j][i]);
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("row length mismatch");
    m.data_[i] = SparseVec(rows[i]);
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec out(rows_, Scalar(0));
  for (std::size_t i = 0; i < rows_; ++i) out[i] = data_[i].at(j);
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw InvalidInput("matrix/vector size mismatch");
  Vec out(rows_, Scalar(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Scalar s(0);
    for (const auto& [j, a] : data_[i].entries())
      if (!v[j].is_zero()) s += a * v[j];
    out[i] = s;
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, a] : data_[i].entries()) t.data_[j].push_back(i, a);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

Matrix Matrix::in_characteristic(std::uint32_t prime) const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, a] : data_[i].entries()) m.data_[i].push_back(j, a.in_characteristic(prime));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product size mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (const auto& [k, v] : a.data_[i].entries()) out.data_[i].axpy(v, b.data_[k]);
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix sum size mismatch");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows_; ++i) out.data_[i].axpy(Scalar(1), b.data_[i]);
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SparseVec Span::reduce(SparseVec v) const {
  // Rows only have entries at or after their pivot, so one left-to-right
  // sweep clears every pivot column.
  std::size_t pos = 0;
  while (pos < v.nnz()) {
    const auto& [col, val] = v.entries()[pos];
    long r = col < pivot_row_.size() ? pivot_row_[col] : -1;
    if (r < 0) {
      ++pos;
      continue;
    }
    const SparseVec& row = rows_[static_cast<std::size_t>(r)];
    Scalar c = -(val / row.entries().front().second);
    v.axpy(c, row);
  }
  return v;
}

bool Span::add(const Vec& v) {
  if (v.size() != dim_) throw InvalidInput("span dimension mismatch");
  return add(SparseVec(v));
}

bool Span::add(SparseVec v) {
  if (pivot_row_.size() != dim_) pivot_row_.assign(dim_, -1);
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar inv = v.entries().front().second.inverse();
  v.scale(inv);
  pivot_row_[v.leading()] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

bool Span::contains(const Vec& v) const {
  if (v.size() != dim_) throw InvalidInput("span dimension mismatch");
  return reduce(SparseVec(v)).empty();
}

std::vector<std::size_t> Span::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& r : rows_) p.push_back(r.leading());
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<SparseVec> Span::rref() const {
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].leading() < rows_[b].leading(); });
  std::vector<SparseVec> out;
  for (std::size_t idx : order) out.push_back(rows_[idx]);
  // Back substitution from the bottom.
  for (std::size_t k = out.size(); k-- > 0;) {
    std::size_t p = out[k].leading();
    for (std::size_t i = 0; i < k; ++i) {
      Scalar c = out[i].at(p);
      if (!c.is_zero()) out[i].axpy(-c, out[k]);
    }
  }
  return out;
}

CoordinateSystem::CoordinateSystem(std::size_t dim, const std::vector<Vec>& basis)
    : dim_(dim), size_(basis.size()), span_(dim + basis.size()) {
  // Rows [b_i | e_i]; independence keeps every pivot inside the first dim
  // columns, so reducing [v | 0] leaves [0 | -c].
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].size() != dim) throw InvalidInput("coordinate basis: length mismatch");
    SparseVec r(basis[i]);
    r.push_back(dim + i, Scalar(1));
    span_.add(std::move(r));
    if (span_.pivots().back() >= dim) throw InvalidInput("coordinate basis is linearly dependent");
  }
}

std::optional<Vec> CoordinateSystem::coordinates(const Vec& v) const {
  if (v.size() != dim_) throw InvalidInput("coordinates: length mismatch");
  SparseVec r = span_.reduce(SparseVec(v));
  Vec c(size_, Scalar(0));
  for (const auto& [j, a] : r.entries()) {
    if (j < dim_) return std::nullopt;
    c[j - dim_] = -a;
  }
  return c;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.row(a).nnz() < m.row(b).nnz(); });
  Span s(m.cols());
  for (std::size_t i : order)
    if (!m.row(i).empty()) s.add(m.row(i));
  return s.rank();
}

std::vector<Vec> kernel(const Matrix& m) {
  Span s(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) s.add(m.row(i));
  auto rows = s.rref();
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& r : rows) is_pivot[r.leading()] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols(), Scalar(0));
    v[f] = Scalar(1);
    for (const auto& r : rows) {
      Scalar c = r.at(f);
      if (!c.is_zero()) v[r.leading()] = -c;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw InvalidInput("solve: size mismatch");
  // Eliminate on [A | b] with the augmented column last, so a pivot there
  // means the system is inconsistent.
  std::size_t n = m.cols();
  Span s(n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVec r = m.row(i);
    r.push_back(n, b[i]);
    if (!r.empty()) s.add(std::move(r));
  }
  Vec x(n, Scalar(0));
  for (const auto& r : s.rref()) {
    if (r.leading() == n) return std::nullopt;
    x[r.leading()] = r.at(n);
  }
  return x;
}

std::vector<std::size_t> independent_columns(const Matrix& m) {
  Matrix t = m.transpose();
  Span s(m.rows());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < t.rows(); ++j)
    if (s.add(t.row(j))) out.push_back(j);
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec zeros(std::size_t n) { return Vec(n, Scalar(0)); }

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, Scalar(0));
  v.at(i) = Scalar(1);
  return v;
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (y.size() != x.size()) throw InvalidInput("axpy: size mismatch");
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

Vec add(const Vec& a, const Vec& b) {
  Vec out = a;
  axpy(out, Scalar(1), b);
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec out = a;
  axpy(out, Scalar(-1), b);
  return out;
}

Vec scaled(const Vec& a, const Scalar& c) {
  Vec out = a;
  for (auto& x : out) x *= c;
  return out;
}

Vec in_characteristic(const Vec& v, std::uint32_t prime) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.in_characteristic(prime));
  return out;
}

}  // namespace mcforge
