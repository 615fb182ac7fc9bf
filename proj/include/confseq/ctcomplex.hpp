#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "confseq/algebra.hpp"
#include "confseq/bicomplex.hpp"
#include "confseq/graphs.hpp"

namespace confseq {

using TupleTerms = std::vector<std::pair<std::vector<std::size_t>, Scalar>>;

/// Position-wise product of basis tensors of A^{(x)n} with the Koszul sign of the interleaving.
TupleTerms tensor_product(const Algebra& a, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y);

/// beta (x) x_M: one basis index of H per position and a squarefree x-monomial.
struct CTBasisElement {
  std::vector<std::size_t> factors;  // length n
  std::size_t monomial = 0;          // index into CTComplex::monomials
};

/// T(n,H) = H^{(x)n} (x) Lambda(x_ij) / I with d_1(x_ij) the diagonal class,
/// by blocks (p, h): p = number of x factors, h = H-degree.
class CTComplex {
 public:
  int n = 0;
  int m = 0;
  std::shared_ptr<const Algebra> h;
  PoincareData pd;
  /// Every edge set on n vertices; monomial x_M has its edges in lexicographic order.
  std::vector<Graph> monomials;
  std::map<Bidegree, std::vector<CTBasisElement>> free_basis;
  /// Spanning set of the ideal I inside each free block.
  std::map<Bidegree, std::vector<SparseVector>> relations;
  std::map<Bidegree, std::shared_ptr<Quotient>> quotients;
  /// d_1 on the free algebra: (p,h) -> (p-1, h+m).
  std::map<Bidegree, Matrix> d1_free;
  /// d_1 on T in quotient coordinates.
  std::map<Bidegree, Matrix> d1;

  std::size_t free_dim(int p, int hdeg) const;
  std::size_t dim(int p, int hdeg) const;
  int total_degree(int p, int hdeg) const { return hdeg + p * (m - 1); }
  int h_max() const { return n * m; }
  std::optional<std::pair<Bidegree, std::size_t>> find(std::uint32_t monomial_mask,
                                                      const std::vector<std::size_t>& factors) const;
  std::string label(int p, int hdeg, std::size_t free_index) const;
  /// Renders a quotient-coordinate vector through its free representatives.
  std::string render(int p, int hdeg, const SparseVector& coords) const;

  /// First failure among d_1(I) in I and d_1 d_1 = 0 on T, or empty.
  std::string check() const;

  std::size_t add_free(int p, int hdeg, CTBasisElement e);

 private:
  std::map<std::pair<std::uint32_t, std::vector<std::size_t>>, std::pair<Bidegree, std::size_t>> index_;
};

/// Requires h formal with a non-degenerate top class and 1 <= n <= 4.
std::shared_ptr<CTComplex> build_CT(int n, std::shared_ptr<const Algebra> h);

/// Homology of (T(n,H), d_1): the Cohen-Taylor E_2 page.
struct CTE2 {
  int m = 0;
  std::map<Bidegree, std::size_t> dims;                     // (p, h)
  std::map<Bidegree, std::vector<SparseVector>> reps;       // quotient coordinates
  std::size_t dim(int p, int hdeg) const;
  /// Dimension in total degree h + p(m-1).
  std::size_t total(int k) const;
};
CTE2 ct_e2(const CTComplex& t);

/// (H^{(x)n} (x) R)/L with R the distinct-target monomials.
struct RBasisReport {
  std::vector<Graph> r_monomials;
  std::map<Bidegree, std::size_t> dims;  // (p, h)
};
/// Throws MismatchError when the R-presentation and T(n,H) disagree in some block.
RBasisReport rbasis_presentation(const CTComplex& t);

}  // namespace confseq
