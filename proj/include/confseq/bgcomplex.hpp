#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confseq/algebra.hpp"
#include "confseq/bicomplex.hpp"
#include "confseq/graphs.hpp"

namespace confseq {

enum class BGKind { Full, Bar, J, Small };

std::string kind_name(BGKind k);

/// a_1 (x) ... (x) a_l e_G with one algebra basis index per component of G.
struct BGBasisElement {
  std::size_t graph = 0;  // index into BGComplex::graphs
  std::vector<std::size_t> factors;
};

/// Graph-side bicomplex over an algebra: p = edge count, q = sum of factor degrees.
class BGComplex : public Bicomplex {
 public:
  BGKind kind = BGKind::Full;
  int n = 0;
  std::shared_ptr<const Algebra> algebra;
  std::vector<Graph> graphs;
  std::map<Bidegree, std::vector<BGBasisElement>> basis;

  /// Block position of a basis element, or nullopt when absent.
  std::optional<std::pair<Bidegree, std::size_t>> find(std::uint32_t graph_mask,
                                                      const std::vector<std::size_t>& factors) const;
  const BGBasisElement& element(int p, int q, std::size_t i) const { return basis.at({p, q})[i]; }
  std::string label(int p, int q, std::size_t i) const override;
  /// Renders a block vector as a sum of labelled basis elements.
  std::string render(int p, int q, const SparseVector& v) const;

  /// Right multiplication by e_ij on a block vector (result in block (p+1,q)),
  /// using the edge-addition rule of the complex.
  SparseVector multiply_edge(int p, int q, const SparseVector& v, int i, int j) const;

  /// Appends a basis element to block (p,q) and returns its index.
  std::size_t add_basis(int p, int q, BGBasisElement e);

 private:
  std::map<std::pair<std::uint32_t, std::vector<std::size_t>>, std::pair<Bidegree, std::size_t>> index_;
};

/// E(n,A) over a graph family (Full, NoDupTarget for the quotient Ē, JFamily for J).
/// q_max bounds the internal degree; it defaults to the full range for an
/// untruncated algebra and to the truncation bound otherwise.
std::shared_ptr<BGComplex> build_AG(int n, std::shared_ptr<const Algebra> a, Family family,
                                    std::optional<int> q_max = std::nullopt);
std::shared_ptr<BGComplex> build_E(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max = std::nullopt);
std::shared_ptr<BGComplex> build_Ebar(int n, std::shared_ptr<const Algebra> a,
                                      std::optional<int> q_max = std::nullopt);
std::shared_ptr<BGComplex> build_J(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max = std::nullopt);
/// C(n,A) over distinct-target graphs with vertex 1 isolated.
std::shared_ptr<BGComplex> build_C(int n, std::shared_ptr<const Algebra> a, std::optional<int> q_max = std::nullopt);

/// gamma_l(a_1, ..., a_l) in A^{(x) l}, as (factor tuple, coefficient) terms.
std::vector<std::pair<std::vector<std::size_t>, Scalar>> gamma(const Algebra& a,
                                                               const std::vector<std::size_t>& factors);

/// Matrices of phi-bar : C(n,A)^{p,q} -> Ebar(n,A)^{p,q}, keyed by bidegree.
std::map<Bidegree, Matrix> phi_bar(const BGComplex& c, const BGComplex& ebar);

}  // namespace confseq
