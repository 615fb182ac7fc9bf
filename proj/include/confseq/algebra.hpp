#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "confseq/errors.hpp"
#include "confseq/linalg.hpp"
#include "confseq/scalar.hpp"

namespace confseq {

/// Element of an algebra as a combination of basis indices.
using Element = SparseVector;

struct BasisElement {
  std::string label;
  int degree = 0;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct Generator {
  std::string label;
  int degree = 0;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// c * g_{w0} g_{w1} ... (generator indices in written order).
struct WordTerm {
  Scalar coef;
  std::vector<std::size_t> word;
  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};
using WordPolynomial = std::vector<WordTerm>;

/// Generators and differential of a truncated free graded-commutative model.
struct FreePresentation {
  std::vector<Generator> generators;
  std::vector<WordPolynomial> differential;  // one entry per generator
  int bound = 0;
  /// Exponent vector of each basis monomial.
  std::vector<std::vector<int>> exponents;
};

/// Finite-dimensional graded-commutative algebra given by a basis and
/// structure constants, with an optional degree +1 differential.
class Algebra {
 public:
  Algebra() = default;
  Algebra(std::string name, Field field, std::vector<BasisElement> basis);

  // Construction.
  void set_product(std::size_t i, std::size_t j, Element value);
  void set_product_overflow(std::size_t i, std::size_t j);
  void set_differential(std::size_t i, Element value);
  void set_differential_overflow(std::size_t i);
  void set_unit(std::size_t i) { unit_ = i; }
  void set_top(std::optional<std::size_t> i) { top_ = i; }
  void set_truncation(std::optional<int> bound) { truncation_ = bound; }
  void set_name(std::string name) { name_ = std::move(name); }
  void set_presentation(FreePresentation p) { presentation_ = std::move(p); }
  /// Fills unset products: unit rows and columns act as the identity, and
  /// every unset (j,i) follows from a set (i,j) by graded commutativity.
  void complete();
  /// Runs every load-time axiom check; throws AxiomViolation.
  void validate() const;

  // Access.
  const std::string& name() const { return name_; }
  const Field& field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& label(std::size_t i) const { return basis_[i].label; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t unit() const { return unit_; }
  std::optional<std::size_t> top() const { return top_; }
  std::optional<int> truncation() const { return truncation_; }
  const std::optional<FreePresentation>& presentation() const { return presentation_; }
  int max_degree() const;

  /// Basis indices of degree q, in index order.
  std::vector<std::size_t> indices_in_degree(int q) const;
  /// Position of basis index i inside its degree block.
  std::size_t local_index(std::size_t i) const { return local_[i]; }
  std::size_t dim_in_degree(int q) const { return indices_in_degree(q).size(); }
  /// Element of degree q to block coordinates and back.
  SparseVector to_local(const Element& e, int q) const;
  Element from_local(const SparseVector& v, int q) const;
  /// Degree of a nonzero homogeneous element; throws on mixed degrees.
  int degree_of(const Element& e) const;
  bool is_positive(std::size_t i) const { return basis_[i].degree > 0; }

  bool product_set(std::size_t i, std::size_t j) const { return set_[i * dim() + j] != 0; }
  bool product_overflows(std::size_t i, std::size_t j) const { return overflow_[i * dim() + j] != 0; }
  /// Product of basis elements; throws Overflow past the truncation bound.
  const Element& product(std::size_t i, std::size_t j) const;
  Element multiply(const Element& u, const Element& v) const;

  bool has_differential() const;
  bool differential_overflows(std::size_t i) const { return d_overflow_[i] != 0; }
  const Element& d_basis(std::size_t i) const;
  Element d(const Element& e) const;
  /// Differential A^q -> A^{q+1} in block coordinates.
  Matrix d_matrix(int q) const;

  /// Compact rendering, terms in decreasing basis order: "tx-uy", "2*x".
  std::string render(const Element& e) const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  void index_degrees();

  std::string name_;
  Field field_;
  std::vector<BasisElement> basis_;
  std::size_t unit_ = 0;
  std::optional<std::size_t> top_;
  std::optional<int> truncation_;
  std::vector<Element> table_;
  std::vector<char> set_;
  std::vector<char> overflow_;
  std::vector<Element> d_;
  std::vector<char> d_overflow_;
  std::vector<std::size_t> local_;
  std::map<int, std::vector<std::size_t>> by_degree_;
  std::optional<FreePresentation> presentation_;
};

/// The same structure constants read in another field; throws
/// std::invalid_argument when a denominator vanishes there.
Algebra change_field(const Algebra& a, Field field);

/// Graded sign (-1)^{pq}.
inline int koszul(int p, int q) { return ((p % 2) != 0 && (q % 2) != 0) ? -1 : 1; }

/// Poincare duality data of an algebra with a top class.
struct PoincareData {
  int m = 0;
  std::size_t top = 0;
  /// dual[i] = e_i' with <e_i ; e_j'> = delta_ij.
  std::vector<Element> dual;
  /// Diagonal class: sum over (i, j, c) of c * e_i (x) e_j.
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> diagonal;
};

/// Coefficient of the top class in u*v.
Scalar pairing(const Algebra& a, const Element& u, const Element& v);
PoincareData poincare_data(const Algebra& a);

/// Q(A) = A+ / (A+ . A+).
struct Indecomposables {
  std::vector<std::size_t> basis;  // basis indices of A representing Q
  std::shared_ptr<const Quotient> quotient;
  /// Coordinates in Q of an element of A (the degree-zero part is dropped).
  SparseVector project(const Element& e) const;
  std::size_t dim() const { return basis.size(); }
};
Indecomposables indecomposables(const Algebra& a);

/// Truncated free graded-commutative algebra: exterior on odd generators,
/// polynomial on even ones, all monomials of degree <= bound.
Algebra truncated_free_cdga(std::string name, Field field, std::vector<Generator> generators,
                            std::vector<WordPolynomial> d_on_generators, int bound);

/// Cohomology of a model up to a degree, with chosen cocycle representatives.
class Cohomology {
 public:
  Cohomology(std::shared_ptr<const Algebra> model, int max_degree);

  const Algebra& algebra() const { return h_; }
  const Algebra& model() const { return *model_; }
  std::shared_ptr<const Algebra> model_ptr() const { return model_; }
  int max_degree() const { return max_degree_; }
  const Element& representative(std::size_t cls) const { return reps_[cls]; }
  /// Representative of a combination of classes.
  Element lift(const Element& cls) const;
  bool is_cocycle(const Element& e) const { return model_->d(e).is_zero(); }
  /// Class of a homogeneous cocycle. Throws std::invalid_argument for a
  /// non-cocycle and Overflow above the computed range (unless exact).
  Element class_of(const Element& cocycle) const;
  /// Some x with dx = v, or nullopt when v is not exact.
  std::optional<Element> primitive(const Element& v) const;
  std::vector<std::size_t> betti() const;

 private:
  std::shared_ptr<const Algebra> model_;
  int max_degree_;
  Algebra h_;
  std::vector<Element> reps_;
  std::map<int, std::shared_ptr<Subquotient>> classes_;
  std::map<int, std::shared_ptr<Echelon>> boundaries_;  // image of d into degree q, tagged by source
};

/// Cohomology of a model, max_degree + 1 must not exceed its truncation bound.
Cohomology cohomology(const Algebra& model, int max_degree);

/// Quotient of a dg algebra by a dg ideal spanned by the given elements.
/// Basis of the result: the basis elements at the non-pivot columns.
Algebra quotient_algebra(const Algebra& a, const std::vector<Element>& ideal, const std::string& name);

/// Finite Poincare duality model of a model whose cohomology satisfies
/// Poincare duality in degree m with the given top cocycle.
Algebra poincare_duality_model(const Algebra& model, int m, const Element& top_cocycle);

/// Model of the connected sum with S^2 x S^{m-2}: [A x_k L(x,y)/(x^2,y^2)]/(w - xy).
Algebra connected_sum_model(const Algebra& a, int m);

/// Sets the top class to the unique class of the highest nonzero degree when
/// the resulting pairing is non-degenerate. Returns whether a top was found.
bool detect_top(Algebra& a);

}  // namespace confseq
