#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mcforge/scalar.hpp"

namespace mcforge {

using Vec = std::vector<Scalar>;

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVec() = default;
  explicit SparseVec(const Vec& dense);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }
  Scalar at(std::size_t i) const;
  /// Appends an entry with an index larger than every stored index.
  void push_back(std::size_t i, Scalar v);
  void add(std::size_t i, const Scalar& v);
  /// this += c * other
  void axpy(const Scalar& c, const SparseVec& other);
  void scale(const Scalar& c);
  Vec dense(std::size_t dim) const;
  std::size_t leading() const { return entries_.front().first; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Sparse row-major matrix; an r x c matrix is a map K^c -> K^r.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& columns);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar at(std::size_t i, std::size_t j) const { return data_[i].at(j); }
  void add(std::size_t i, std::size_t j, const Scalar& v) { data_[i].add(j, v); }
  const SparseVec& row(std::size_t i) const { return data_[i]; }
  SparseVec& row(std::size_t i) { return data_[i]; }
  Vec column(std::size_t j) const;

  Vec apply(const Vec& v) const;
  Matrix transpose() const;
  bool is_zero() const;
  Matrix in_characteristic(std::uint32_t prime) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Incrementally built row-echelon basis of a subspace of K^dim.
///
/// Rows are kept in echelon form keyed by their leading index, so rank and
/// membership need only forward elimination.
class Span {
 public:
  explicit Span(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  /// Adds v; returns true iff it was independent of the current span.
  bool add(const Vec& v);
  bool add(SparseVec v);
  bool contains(const Vec& v) const;
  /// Remainder of v after eliminating every pivot column.
  SparseVec reduce(SparseVec v) const;
  /// Reduced row echelon basis (sorted by pivot).
  std::vector<SparseVec> rref() const;
  std::vector<std::size_t> pivots() const;

 private:
  std::size_t dim_;
  std::vector<SparseVec> rows_;
  std::vector<long> pivot_row_;  // dim_ entries, -1 when not a pivot
};

/// Coordinates with respect to a fixed list of independent vectors.
class CoordinateSystem {
 public:
  CoordinateSystem() = default;
  /// Throws InvalidInput if the vectors are dependent.
  CoordinateSystem(std::size_t dim, const std::vector<Vec>& basis);

  std::size_t size() const { return size_; }
  /// c with v = sum c_i b_i, or nullopt when v is outside the span.
  std::optional<Vec> coordinates(const Vec& v) const;

 private:
  std::size_t dim_ = 0, size_ = 0;
  Span span_;
};

std::size_t rank(const Matrix& m);
/// Basis of ker(m), one vector per free column, in column order.
std::vector<Vec> kernel(const Matrix& m);
/// Some x with m x = b, if one exists.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
/// Indices of a maximal set of independent columns, greedy in column order.
std::vector<std::size_t> independent_columns(const Matrix& m);

bool is_zero(const Vec& v);
Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
void axpy(Vec& y, const Scalar& a, const Vec& x);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, const Scalar& c);
Vec in_characteristic(const Vec& v, std::uint32_t prime);

}  // namespace mcforge
