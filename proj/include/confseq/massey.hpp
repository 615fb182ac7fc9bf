#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confseq/algebra.hpp"
#include "confseq/bgcomplex.hpp"
#include "confseq/spectral.hpp"

namespace confseq {

/// Matrix Massey product <L,B,C> with its defining system.
struct MasseyResult {
  int degree = 0;
  std::vector<Element> x;  // d x_j = (L.B)_j, in the model
  std::vector<Element> y;  // d y_i = (B.C)_i, in the model
  Element representative;  // sum_j x_j c_j - sum_i (-1)^{|a_i|} a_i y_i
  Element cls;             // in H
  /// Echelon basis of a_i.H + H.c_j in the degree of the product (H coordinates).
  std::vector<Element> indeterminacy;
  SparseVector residual;  // image in Q(H)

  /// Whether cls and v differ by an element of the indeterminacy.
  bool contains(const Element& v) const;
};

/// Classes are elements of h.algebra(); entries are lifted to their representatives.
/// A seed adds random cocycles to the particular solutions x_j, y_i.
MasseyResult matrix_massey(const Cohomology& h, const std::vector<Element>& L,
                           const std::vector<std::vector<Element>>& B, const std::vector<Element>& C,
                           std::optional<unsigned> seed = std::nullopt);
MasseyResult triple_massey(const Cohomology& h, const Element& a, const Element& b, const Element& c,
                           std::optional<unsigned> seed = std::nullopt);

/// Elements of H (x) H indexed by i * dim H + j.
struct HTensor {
  std::size_t dim = 0;
  SparseVector v;

  static HTensor of(const Algebra& h, const Element& a, const Element& b);
  HTensor& add(const HTensor& o, const Scalar& c);
  bool is_zero() const { return v.is_zero(); }
  std::string render(const Algebra& h) const;
  friend bool operator==(const HTensor& a, const HTensor& b) { return a.v == b.v; }
};

/// The two column-2 summands of C(4,H).
enum class Tag { E23E24 = 0, E23E34 = 1 };
std::string tag_name(Tag t);
Graph tag_graph(Tag t);

/// Image of one tagged component in (k (x) Q) + (Q (x) Q)^{Sigma_2}.
struct Residual {
  SparseVector unit_part;  // Q coordinates
  SparseVector sym_part;   // Q (x) Q coordinates, index i * dim Q + j
  bool is_zero() const { return unit_part.is_zero() && sym_part.is_zero(); }
};

/// Element of E_2^{2,*}(C(4,H)), given by one H (x) H+ component per tag.
struct E2TwoElement {
  std::array<HTensor, 2> components;
  std::array<std::optional<Residual>, 2> residual;

  const HTensor& at(Tag t) const { return components[static_cast<int>(t)]; }
  HTensor& at(Tag t) { return components[static_cast<int>(t)]; }
};

/// Bracket values used by one evaluation of formula (*).
struct BracketTerm {
  Tag tag;
  std::string name;  // e.g. "<b,c,d>"
  Scalar sign;
  bool bracket_first;  // bracket (x) element versus element (x) bracket
  std::size_t element;  // 0..3: which of a, b, c, d sits beside the bracket
  MasseyResult bracket;
};

struct D2Star {
  E2TwoElement value;
  std::vector<BracketTerm> terms;
};

/// Formula (*) for d_2[a (x) b (x) c (x) d] with pairwise vanishing products.
D2Star d2_star(const Cohomology& h, const Element& a, const Element& b, const Element& c, const Element& d);

/// (k (x) Q) + (Q (x) Q)^{Sigma_2} image per tag, stored into v.residual.
/// Returns whether any residual is nonzero.
bool obstruction_residual(E2TwoElement& v, const Algebra& h);

/// psi(a (x) b) = a (x) b - (-1)^{|a||b|} b (x) a on Q (x) Q coordinates.
SparseVector psi(const Algebra& h, const Indecomposables& q, const SparseVector& qq);
/// tau(a (x) b) = -(-1)^{|a||b|} b (x) a on Q (x) Q coordinates.
SparseVector tau(const Algebra& h, const Indecomposables& q, const SparseVector& qq);

/// Zig-zag evaluation of d_2 on column 0 of C(4,A) for a model A of H.
class C4Engine {
 public:
  /// q_max bounds the internal degree of C(4,A) (at most the truncation of A).
  C4Engine(const Cohomology& h, int q_max);

  const BGComplex& complex() const { return *c_; }
  const SpectralSequence& spectral() const { return *ss_; }

  /// Sum of coefficient * [h1] (x) [h2] (x) [h3] (x) [h4] in E_1^{0,*}.
  using Quadruple = std::pair<std::array<Element, 4>, Scalar>;

  /// Lift of a tagged H (x) H+ element to a vertical cocycle of C(4,A)^{2,q}.
  SparseVector chain(Tag t, const HTensor& x, int q) const;
  /// E_2^{2,q} coordinates of a pair of tagged components of internal degree q.
  SparseVector e2_coordinates(const E2TwoElement& v, int q) const;
  /// d_2 of the class of the column-0 cocycle, in E_2^{2,q-1} coordinates
  /// (q = internal degree of the input). Nullopt when d_1 does not kill it.
  std::optional<SparseVector> d2(const std::vector<Quadruple>& input, int q) const;
  /// Some tagged H (x) H+ element with the given E_2^{2,q} coordinates.
  E2TwoElement decompose(const SparseVector& coords, int q) const;

 private:
  SparseVector column0(const std::vector<Quadruple>& input, int q) const;
  const Cohomology& h_;
  std::shared_ptr<BGComplex> c_;
  std::unique_ptr<SpectralSequence> ss_;
};

/// Formula (*) against the zig-zag d_2 on C(4,A).
struct CrossCheck {
  int q = 0;  // internal degree of a (x) b (x) c (x) d
  D2Star formula;
  SparseVector formula_e2;
  std::optional<SparseVector> zigzag_e2;
  E2TwoElement zigzag;  // decomposition of the zig-zag value
  bool exact = false;   // identical E_2 coordinates
  bool agree = false;   // identical modulo the bracket indeterminacies
};
CrossCheck cross_check_d2(const Cohomology& h, const C4Engine& engine, const Element& a, const Element& b,
                          const Element& c, const Element& d);

/// Default internal-degree bound for C(4,A) d_2 runs.
int d2_bound(const Algebra& h, const Element& a, const Element& b, const Element& c, const Element& d);

struct Thm3Witness {
  std::array<std::size_t, 4> classes;  // basis indices of H
  E2TwoElement value;
};
/// Quadruples of indecomposable basis classes with pairwise vanishing
/// products whose formula-(*) value has a nonzero residual.
std::vector<Thm3Witness> thm3_detector(const Cohomology& h);

/// u = sum x (x) a_i (x) b_ij (x) c_j - (signed flip) for matrix Massey data.
std::vector<C4Engine::Quadruple> theorem4_element(const Algebra& h, const Element& x, const std::vector<Element>& L,
                                                  const std::vector<std::vector<Element>>& B,
                                                  const std::vector<Element>& C);

}  // namespace confseq
