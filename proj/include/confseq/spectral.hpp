#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "confseq/bicomplex.hpp"

namespace confseq {

/// E_r page: dimensions, representatives in the total complex, and d_r
/// (p,q) -> (p+r, q-r+1) in representative coordinates.
struct Page {
  int r = 0;
  std::map<Bidegree, std::size_t> dims;
  std::map<Bidegree, std::vector<SparseVector>> reps;
  std::map<Bidegree, Matrix> d;

  std::size_t dim(int p, int q) const;
  std::size_t total(int k) const;
  bool d_is_zero() const;
};

/// Spectral sequence of a bicomplex filtered by columns, computed per total degree.
class SpectralSequence {
 public:
  explicit SpectralSequence(const Bicomplex& b);

  const Bicomplex& bicomplex() const { return b_; }
  /// Total degrees in which pages are determined by the stored blocks.
  int max_degree() const { return b_.total_max; }

  /// Total-complex coordinates of Tot^k: blocks (p, k-p) by increasing p.
  std::size_t offset(int k, int p) const;
  std::size_t tot_dim(int k) const;
  SparseVector embed(int p, int q, const SparseVector& v) const;
  /// Component of a Tot^k vector in block (p, k-p).
  SparseVector component(int k, int p, const SparseVector& v) const;
  /// D : Tot^k -> Tot^{k+1}.
  const Matrix& total_differential(int k) const;

  Page page(int r) const;
  /// Cohomology dimension of the total complex in degree k.
  std::size_t total_cohomology(int k) const;

  /// z + w with w in F^{p+1} such that D(z + w) lies in F^{p+r}, or nullopt.
  std::optional<SparseVector> extend(int r, int p, int k, const SparseVector& z) const;
  /// Coordinates in E_r^{p,k-p} of an element of Z_r^p in Tot^k.
  SparseVector project(int r, int p, int k, const SparseVector& z) const;

 private:
  struct Degree {
    std::vector<std::size_t> offsets;  // size p_max + 2
    Matrix d;                         // Tot^k -> Tot^{k+1}
  };
  const Degree& degree(int k) const;
  /// Z_r^p in Tot^k: F^p vectors whose image lies in F^{p+r}. r < 0 gives F^p.
  const std::vector<SparseVector>& cycles(int r, int p, int k) const;
  const Subquotient& term(int r, int p, int k) const;

  const Bicomplex& b_;
  mutable std::map<int, Degree> degrees_;
  mutable std::map<std::tuple<int, int, int>, std::vector<SparseVector>> cycles_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<Subquotient>> terms_;
};

std::vector<Page> pages(const Bicomplex& b, int r_max);
/// dim H^k(Tot) for k = 0..total_max.
std::vector<std::size_t> total_cohomology(const Bicomplex& b);
/// Smallest r >= 1 after which every d_s (s <= min(r_max, p_max)) vanishes.
int collapse_page(const Bicomplex& b, int r_max);

}  // namespace confseq
