#include "confseq/linalg.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace confseq {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

SparseVector SparseVector::unit(std::size_t i, const Scalar& c) {
  SparseVector v;
  if (!c.is_zero()) v.entries_.emplace_back(i, c);
  return v;
}

SparseVector SparseVector::from_dense(const std::vector<Scalar>& dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!dense[i].is_zero()) v.entries_.emplace_back(i, dense[i]);
  return v;
}

Scalar SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return Scalar(0);
}

std::vector<Scalar> SparseVector::to_dense(std::size_t dim) const {
  std::vector<Scalar> out(dim);
  for (const auto& [i, c] : entries_) {
    if (i >= dim) throw std::out_of_range("sparse vector index exceeds dimension");
    out[i] = c;
  }
  return out;
}

void SparseVector::add(std::size_t i, const Scalar& c) {
  if (c.is_zero()) return;
  if (entries_.empty() || entries_.back().first < i) {
    entries_.emplace_back(i, c);
    return;
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) {
    it->second += c;
    if (it->second.is_zero()) entries_.erase(it);
  } else {
    entries_.insert(it, Entry(i, c));
  }
}

void SparseVector::add_scaled(const SparseVector& o, const Scalar& c) {
  if (c.is_zero() || o.entries_.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + o.entries_.size());
  auto a = entries_.begin();
  auto b = o.entries_.begin();
  while (a != entries_.end() || b != o.entries_.end()) {
    if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a));
      ++a;
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, b->second * c);
      ++b;
    } else {
      Scalar s = a->second + b->second * c;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

void SparseVector::scale(const Scalar& c) {
  if (c.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second *= c;
}

SparseVector SparseVector::scaled(const Scalar& c) const {
  SparseVector v = *this;
  v.scale(c);
  return v;
}

bool operator==(const SparseVector& a, const SparseVector& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (a.entries_[k].first != b.entries_[k].first || !(a.entries_[k].second == b.entries_[k].second))
      return false;
  return true;
}

std::string SparseVector::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [i, c] : entries_) {
    if (!first) os << ", ";
    first = false;
    os << i << ':' << c;
  }
  os << '}';
  return os.str();
}

Scalar dot(const SparseVector& a, const SparseVector& b) {
  Scalar s;
  auto x = a.entries().begin();
  auto y = b.entries().begin();
  while (x != a.entries().end() && y != b.entries().end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      s += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return s;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, c] : columns[j].entries()) {
      if (i >= rows) throw std::out_of_range("column entry exceeds row count");
      m.data_[i].add(j, c);
    }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::vector<SparseVector> rows) {
  Matrix m(rows.size(), cols);
  for (const auto& r : rows)
    if (r.support_end() > cols) throw std::out_of_range("row entry exceeds column count");
  m.data_ = std::move(rows);
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i] = SparseVector::unit(i);
  return m;
}

void Matrix::add(std::size_t i, std::size_t j, const Scalar& c) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  data_[i].add(j, c);
}

SparseVector Matrix::apply(const SparseVector& v) const {
  if (v.support_end() > cols_) throw std::out_of_range("vector length exceeds column count");
  SparseVector out;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (data_[i].is_zero()) continue;
    out.add(i, dot(data_[i], v));
  }
  return out;
}

Matrix Matrix::transpose() const { return from_columns(cols_, data_); }

std::vector<SparseVector> Matrix::columns() const { return transpose().data_; }

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseVector& r) { return r.is_zero(); });
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (const auto& [k, c] : a.data_[i].entries()) m.data_[i].add_scaled(b.data_[k], c);
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Echelon::insert(const SparseVector& v, const SparseVector& tag) {
  SparseVector combo;
  SparseVector r = reduce(v, &combo);
  if (r.is_zero()) return false;
  SparseVector t = tag - combo;
  std::size_t pivot = r.entries().front().first;
  Scalar inv = r.entries().front().second.inverse();
  r.scale(inv);
  t.scale(inv);
  for (auto& [p, row] : rows_) {
    Scalar c = row.first.at(pivot);
    if (c.is_zero()) continue;
    row.first.add_scaled(r, -c);
    row.second.add_scaled(t, -c);
  }
  rows_.emplace(pivot, std::make_pair(std::move(r), std::move(t)));
  return true;
}

SparseVector Echelon::reduce(const SparseVector& v, SparseVector* combo) const {
  SparseVector r = v;
  if (rows_.empty()) return r;
  for (const auto& [c, coef] : v.entries()) {
    auto it = rows_.find(c);
    if (it == rows_.end()) continue;
    r.add_scaled(it->second.first, -coef);
    if (combo) combo->add_scaled(it->second.second, coef);
  }
  return r;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::size_t rank(const Matrix& m) {
  Echelon e;
  for (const auto& r : m.row_data()) e.insert(r);
  return e.rank();
}

std::vector<SparseVector> kernel_basis(const Matrix& m) {
  Echelon e;
  for (const auto& r : m.row_data()) e.insert(r);
  std::vector<SparseVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (e.is_pivot(f)) continue;
    SparseVector v = SparseVector::unit(f);
    for (std::size_t p : e.pivots()) {
      Scalar c = e.row(p).at(f);
      if (!c.is_zero()) v.add(p, -c);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVector> image_basis(const Matrix& m) {
  Echelon e;
  std::vector<SparseVector> out;
  for (auto& col : m.columns())
    if (e.insert(col)) out.push_back(std::move(col));
  return out;
}

std::optional<SparseVector> solve(const Matrix& m, const SparseVector& rhs) {
  if (rhs.support_end() > m.rows()) throw std::out_of_range("right-hand side exceeds row count");
  Echelon e;
  auto cols = m.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) e.insert(cols[j], SparseVector::unit(j));
  SparseVector combo;
  if (!e.reduce(rhs, &combo).is_zero()) return std::nullopt;
  return combo;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Echelon e;
  auto cols = m.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) e.insert(cols[j], SparseVector::unit(j));
  if (e.rank() != m.rows()) return std::nullopt;
  std::vector<SparseVector> inv_cols;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVector combo;
    e.reduce(SparseVector::unit(i), &combo);
    inv_cols.push_back(std::move(combo));
  }
  return Matrix::from_columns(m.cols(), inv_cols);
}

Quotient::Quotient(std::size_t ambient_dim, const std::vector<SparseVector>& subspace)
    : ambient_(ambient_dim), position_(ambient_dim, kNone) {
  for (const auto& v : subspace) {
    if (v.support_end() > ambient_dim) throw std::out_of_range("subspace vector exceeds ambient dimension");
    sub_.insert(v);
  }
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!sub_.is_pivot(c)) {
      position_[c] = free_.size();
      free_.push_back(c);
    }
}

std::vector<SparseVector> Quotient::representatives() const {
  std::vector<SparseVector> out;
  out.reserve(free_.size());
  for (std::size_t c : free_) out.push_back(SparseVector::unit(c));
  return out;
}

SparseVector Quotient::project(const SparseVector& v) const {
  SparseVector r = sub_.reduce(v);
  SparseVector out;
  for (const auto& [i, c] : r.entries()) {
    if (i >= ambient_ || position_[i] == kNone) throw std::logic_error("projection left a pivot column");
    out.add(position_[i], c);
  }
  return out;
}

SparseVector Quotient::lift(const SparseVector& coords) const {
  return coords.reindexed([&](std::size_t k) { return free_.at(k); });
}

Subquotient::Subquotient(const std::vector<SparseVector>& num, const std::vector<SparseVector>& den) {
  for (const auto& v : den) {
    den_.insert(v);
    all_.insert(v);
  }
  for (const auto& v : num)
    if (all_.insert(v, SparseVector::unit(reps_.size()))) reps_.push_back(v);
}

SparseVector Subquotient::project(const SparseVector& v) const {
  SparseVector combo;
  if (!all_.reduce(v, &combo).is_zero()) throw std::logic_error("vector outside the subquotient numerator");
  return combo;
}

}  // namespace confseq
