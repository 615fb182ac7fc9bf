#include "confseq/bicomplex.hpp"

namespace confseq {

std::size_t Bicomplex::dim(int p, int q) const {
  auto it = dims.find({p, q});
  return it == dims.end() ? 0 : it->second;
}

const Matrix* Bicomplex::horizontal(int p, int q) const {
  auto it = dh.find({p, q});
  return it == dh.end() ? nullptr : &it->second;
}

const Matrix* Bicomplex::vertical(int p, int q) const {
  auto it = dv.find({p, q});
  return it == dv.end() ? nullptr : &it->second;
}

std::size_t Bicomplex::total_dim(int k) const {
  std::size_t n = 0;
  for (int p = 0; p <= p_max; ++p) n += dim(p, k - p);
  return n;
}

std::string Bicomplex::label(int p, int q, std::size_t i) const {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")#" + std::to_string(i);
}

namespace {

Matrix product_or_zero(const Matrix* a, const Matrix* b, std::size_t rows, std::size_t cols) {
  if (!a || !b) return Matrix(rows, cols);
  return *a * *b;
}

}  // namespace

std::string Bicomplex::check_d_squared() const {
  for (const auto& [pq, n] : dims) {
    auto [p, q] = pq;
    if (n == 0) continue;
    if (q + 1 > q_max) continue;
    Matrix hh = product_or_zero(horizontal(p + 1, q), horizontal(p, q), dim(p + 2, q), n);
    if (!hh.is_zero()) return "d'd' != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
    if (q + 2 <= q_max) {
      Matrix vv = product_or_zero(vertical(p, q + 1), vertical(p, q), dim(p, q + 2), n);
      if (!vv.is_zero()) return "d''d'' != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    Matrix hv = product_or_zero(horizontal(p, q + 1), vertical(p, q), dim(p + 1, q + 1), n);
    Matrix vh = product_or_zero(vertical(p + 1, q), horizontal(p, q), dim(p + 1, q + 1), n);
    if (dim(p + 1, q + 1) > 0) {
      bool ok = true;
      for (std::size_t r = 0; r < hv.rows() && ok; ++r)
        if (!(hv.row(r) + vh.row(r)).is_zero()) ok = false;
      if (!ok) return "d'd'' + d''d' != 0 at (" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
  }
  return {};
}

}  // namespace confseq
