#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confseq/scalar.hpp"

namespace confseq {

/// Sparse vector: entries sorted by index, no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVector() = default;
  static SparseVector unit(std::size_t i, const Scalar& c = Scalar(1));
  static SparseVector from_dense(const std::vector<Scalar>& dense);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Scalar at(std::size_t i) const;
  /// Largest index plus one, or 0 for the zero vector.
  std::size_t support_end() const { return entries_.empty() ? 0 : entries_.back().first + 1; }
  std::vector<Scalar> to_dense(std::size_t dim) const;

  /// Adds c at index i (entries may arrive in any order).
  void add(std::size_t i, const Scalar& c);
  /// this += c * o
  void add_scaled(const SparseVector& o, const Scalar& c);
  void scale(const Scalar& c);
  SparseVector scaled(const Scalar& c) const;
  /// Applies an index map; colliding indices are summed.
  template <class F>
  SparseVector reindexed(F&& f) const {
    SparseVector out;
    for (const auto& [i, c] : entries_) out.add(f(i), c);
    return out;
  }

  SparseVector& operator+=(const SparseVector& o) {
    add_scaled(o, Scalar(1));
    return *this;
  }
  SparseVector& operator-=(const SparseVector& o) {
    add_scaled(o, Scalar(-1));
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Scalar& c, const SparseVector& v) { return v.scaled(c); }
  friend bool operator==(const SparseVector& a, const SparseVector& b);

  std::string to_string() const;

 private:
  std::vector<Entry> entries_;
};

Scalar dot(const SparseVector& a, const SparseVector& b);

/// Sparse matrix stored by rows.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}
  /// Matrix whose j-th column is columns[j].
  static Matrix from_columns(std::size_t rows, const std::vector<SparseVector>& columns);
  static Matrix from_rows(std::size_t cols, std::vector<SparseVector> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t i) const { return data_[i]; }
  const std::vector<SparseVector>& row_data() const { return data_; }
  Scalar at(std::size_t i, std::size_t j) const { return data_[i].at(j); }
  void add(std::size_t i, std::size_t j, const Scalar& c);

  SparseVector apply(const SparseVector& v) const;
  Matrix transpose() const;
  std::vector<SparseVector> columns() const;
  bool is_zero() const;
  std::size_t nonzeros() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector> data_;
};

/// Incremental reduced row echelon form of a span. Each stored row carries a
/// tag vector so that reductions can report the combination they used.
class Echelon {
 public:
  Echelon() = default;

  /// Inserts v with its tag. Returns true when v was independent of the span.
  bool insert(const SparseVector& v, const SparseVector& tag = {});
  /// v minus its component in the span; when combo is given, accumulates the
  /// tag combination of the rows subtracted (so v = remainder + Σ rows).
  SparseVector reduce(const SparseVector& v, SparseVector* combo = nullptr) const;
  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }

  std::size_t rank() const { return rows_.size(); }
  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const;
  bool is_pivot(std::size_t c) const { return rows_.count(c) != 0; }
  /// Row with the given pivot (pivot entry is one).
  const SparseVector& row(std::size_t pivot) const { return rows_.at(pivot).first; }
  const SparseVector& tag(std::size_t pivot) const { return rows_.at(pivot).second; }

 private:
  std::map<std::size_t, std::pair<SparseVector, SparseVector>> rows_;
};

std::size_t rank(const Matrix& m);
/// Basis of the right null space, one vector per free column of the RREF.
std::vector<SparseVector> kernel_basis(const Matrix& m);
/// Basis of the column space, chosen among the columns in pivot order.
std::vector<SparseVector> image_basis(const Matrix& m);
/// Any x with m x = rhs, or nullopt.
std::optional<SparseVector> solve(const Matrix& m, const SparseVector& rhs);
/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Quotient of an ambient coordinate space by a subspace.
class Quotient {
 public:
  Quotient(std::size_t ambient_dim, const std::vector<SparseVector>& subspace);

  std::size_t dim() const { return free_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  /// Complement representatives: standard vectors at the non-pivot columns.
  std::vector<SparseVector> representatives() const;
  /// Coordinates of the class of v.
  SparseVector project(const SparseVector& v) const;
  /// A vector of the ambient space with the given quotient coordinates.
  SparseVector lift(const SparseVector& coords) const;
  const Echelon& subspace() const { return sub_; }
  const std::vector<std::size_t>& free_columns() const { return free_; }

 private:
  std::size_t ambient_;
  Echelon sub_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> position_;  // ambient column -> quotient index, or npos
};

/// Subquotient num / den with den contained in num (both given by spanning
/// lists). Representatives are chosen among num in order.
class Subquotient {
 public:
  Subquotient(const std::vector<SparseVector>& num, const std::vector<SparseVector>& den);

  std::size_t dim() const { return reps_.size(); }
  const std::vector<SparseVector>& representatives() const { return reps_; }
  /// Coordinates of the class of v; throws std::logic_error when v is not in num.
  SparseVector project(const SparseVector& v) const;
  bool in_denominator(const SparseVector& v) const { return den_.contains(v); }
  bool in_numerator(const SparseVector& v) const { return all_.contains(v); }

 private:
  Echelon den_;
  Echelon all_;
  std::vector<SparseVector> reps_;
};

}  // namespace confseq
