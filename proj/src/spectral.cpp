#include "confseq/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace confseq {

std::size_t Page::dim(int p, int q) const {
  auto it = dims.find({p, q});
  return it == dims.end() ? 0 : it->second;
}

std::size_t Page::total(int k) const {
  std::size_t n = 0;
  for (const auto& [pq, d] : dims)
    if (pq.first + pq.second == k) n += d;
  return n;
}

bool Page::d_is_zero() const {
  return std::all_of(d.begin(), d.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

SpectralSequence::SpectralSequence(const Bicomplex& b) : b_(b) {}

const SpectralSequence::Degree& SpectralSequence::degree(int k) const {
  auto it = degrees_.find(k);
  if (it != degrees_.end()) return it->second;
  Degree deg;
  deg.offsets.assign(static_cast<std::size_t>(b_.p_max) + 2, 0);
  for (int p = 0; p <= b_.p_max; ++p) deg.offsets[p + 1] = deg.offsets[p] + b_.dim(p, k - p);
  std::vector<std::size_t> next(static_cast<std::size_t>(b_.p_max) + 2, 0);
  for (int p = 0; p <= b_.p_max; ++p) next[p + 1] = next[p] + b_.dim(p, k + 1 - p);
  Matrix d(next.back(), deg.offsets.back());
  for (int p = 0; p <= b_.p_max; ++p) {
    const int q = k - p;
    if (b_.dim(p, q) == 0) continue;
    if (const Matrix* h = b_.horizontal(p, q); h && p + 1 <= b_.p_max) {
      for (std::size_t r = 0; r < h->rows(); ++r)
        for (const auto& [c, v] : h->row(r).entries()) d.add(next[p + 1] + r, deg.offsets[p] + c, v);
    }
    if (const Matrix* v = b_.vertical(p, q)) {
      for (std::size_t r = 0; r < v->rows(); ++r)
        for (const auto& [c, x] : v->row(r).entries()) d.add(next[p] + r, deg.offsets[p] + c, x);
    }
  }
  deg.d = std::move(d);
  return degrees_.emplace(k, std::move(deg)).first->second;
}

std::size_t SpectralSequence::offset(int k, int p) const {
  p = std::clamp(p, 0, b_.p_max + 1);
  return degree(k).offsets[p];
}

std::size_t SpectralSequence::tot_dim(int k) const { return degree(k).offsets.back(); }

SparseVector SpectralSequence::embed(int p, int q, const SparseVector& v) const {
  const std::size_t off = offset(p + q, p);
  return v.reindexed([off](std::size_t i) { return i + off; });
}

SparseVector SpectralSequence::component(int k, int p, const SparseVector& v) const {
  const std::size_t lo = offset(k, p), hi = offset(k, p + 1);
  SparseVector out;
  for (const auto& [i, c] : v.entries())
    if (i >= lo && i < hi) out.add(i - lo, c);
  return out;
}

const Matrix& SpectralSequence::total_differential(int k) const { return degree(k).d; }

const std::vector<SparseVector>& SpectralSequence::cycles(int r, int p, int k) const {
  if (r < 0) r = 0;
  // Image must land in F^{p+r}; the source filtration clamps at F^0.
  const int target = p + r;
  p = std::clamp(p, 0, b_.p_max + 1);
  r = target - p;
  auto key = std::make_tuple(r, p, k);
  auto it = cycles_.find(key);
  if (it != cycles_.end()) return it->second;
  const std::size_t lo = offset(k, p), n = tot_dim(k);
  std::vector<SparseVector> out;
  if (lo < n) {
    const Matrix& d = total_differential(k);
    const std::size_t row_end = offset(k + 1, target);
    // Columns lo..n of D restricted to rows below F^{p+r}.
    std::vector<SparseVector> rows;
    rows.reserve(row_end);
    for (std::size_t i = 0; i < row_end; ++i) {
      SparseVector row;
      for (const auto& [c, v] : d.row(i).entries())
        if (c >= lo) row.add(c - lo, v);
      rows.push_back(std::move(row));
    }
    Matrix sub = Matrix::from_rows(n - lo, std::move(rows));
    for (auto& v : kernel_basis(sub)) out.push_back(v.reindexed([lo](std::size_t i) { return i + lo; }));
  }
  return cycles_.emplace(key, std::move(out)).first->second;
}

const Subquotient& SpectralSequence::term(int r, int p, int k) const {
  auto key = std::make_tuple(r, p, k);
  auto it = terms_.find(key);
  if (it != terms_.end()) return *it->second;
  const auto& num = cycles(r, p, k);
  std::vector<SparseVector> den = cycles(r - 1, p + 1, k);
  if (r >= 1 && k >= 1) {
    const Matrix& d = total_differential(k - 1);
    for (const auto& z : cycles(r - 1, p - r + 1, k - 1)) {
      SparseVector img = d.apply(z);
      if (!img.is_zero()) den.push_back(std::move(img));
    }
  }
  auto sq = std::make_shared<Subquotient>(num, den);
  return *terms_.emplace(key, std::move(sq)).first->second;
}

Page SpectralSequence::page(int r) const {
  Page out;
  out.r = r;
  for (int k = 0; k <= max_degree(); ++k) {
    for (int p = 0; p <= b_.p_max; ++p) {
      const int q = k - p;
      if (q < 0) continue;
      const auto& t = term(r, p, k);
      out.dims[{p, q}] = t.dim();
      out.reps[{p, q}] = t.representatives();
    }
  }
  if (r < 1) {
    // d_0 is induced by the vertical differential.
    for (int k = 0; k < max_degree(); ++k)
      for (int p = 0; p <= b_.p_max; ++p) {
        const int q = k - p;
        if (q < 0) continue;
        const auto& src = term(0, p, k);
        const auto& dst = term(0, p, k + 1);
        std::vector<SparseVector> cols;
        for (const auto& z : src.representatives()) cols.push_back(dst.project(total_differential(k).apply(z)));
        out.d[{p, q}] = Matrix::from_columns(dst.dim(), cols);
      }
    return out;
  }
  for (int k = 0; k < max_degree(); ++k) {
    for (int p = 0; p + r <= b_.p_max; ++p) {
      const int q = k - p;
      if (q < 0) continue;
      const auto& src = term(r, p, k);
      const auto& dst = term(r, p + r, k + 1);
      std::vector<SparseVector> cols;
      for (const auto& z : src.representatives()) cols.push_back(dst.project(total_differential(k).apply(z)));
      out.d[{p, q}] = Matrix::from_columns(dst.dim(), cols);
    }
  }
  return out;
}

std::size_t SpectralSequence::total_cohomology(int k) const {
  if (k < 0 || k > max_degree()) throw std::out_of_range("total degree outside the computed range");
  const Matrix& d = total_differential(k);
  std::size_t ker = tot_dim(k) - rank(d);
  std::size_t im = k >= 1 ? rank(total_differential(k - 1)) : 0;
  return ker - im;
}

std::optional<SparseVector> SpectralSequence::extend(int r, int p, int k, const SparseVector& z) const {
  const Matrix& d = total_differential(k);
  const std::size_t row_lo = offset(k + 1, p + 1), row_hi = offset(k + 1, p + r);
  const std::size_t col_lo = offset(k, p + 1), n = tot_dim(k);
  SparseVector dz = d.apply(z);
  for (const auto& [i, c] : dz.entries()) {
    (void)c;
    if (i < row_lo) return std::nullopt;
  }
  if (row_hi <= row_lo) return z;
  std::vector<SparseVector> rows;
  SparseVector rhs;
  for (std::size_t i = row_lo; i < row_hi; ++i) {
    SparseVector row;
    for (const auto& [c, v] : d.row(i).entries())
      if (c >= col_lo) row.add(c - col_lo, v);
    rows.push_back(std::move(row));
    Scalar x = dz.at(i);
    if (!x.is_zero()) rhs.add(i - row_lo, -x);
  }
  Matrix sub = Matrix::from_rows(n - col_lo, std::move(rows));
  auto w = solve(sub, rhs);
  if (!w) return std::nullopt;
  return z + w->reindexed([col_lo](std::size_t i) { return i + col_lo; });
}

SparseVector SpectralSequence::project(int r, int p, int k, const SparseVector& z) const {
  return term(r, p, k).project(z);
}

std::vector<Page> pages(const Bicomplex& b, int r_max) {
  SpectralSequence ss(b);
  std::vector<Page> out;
  for (int r = 0; r <= r_max; ++r) out.push_back(ss.page(r));
  return out;
}

std::vector<std::size_t> total_cohomology(const Bicomplex& b) {
  SpectralSequence ss(b);
  std::vector<std::size_t> out;
  for (int k = 0; k <= b.total_max; ++k) out.push_back(ss.total_cohomology(k));
  return out;
}

int collapse_page(const Bicomplex& b, int r_max) {
  SpectralSequence ss(b);
  const int top = std::min(r_max, b.p_max);
  int last_nonzero = 0;
  for (int r = 1; r <= top; ++r)
    if (!ss.page(r).d_is_zero()) last_nonzero = r;
  return last_nonzero + 1;
}

}  // namespace confseq
