#include "confseq/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace confseq {

namespace {

std::string describe(const std::vector<std::size_t>& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  os << ']';
  return os.str();
}

}  // namespace

AxiomViolation::AxiomViolation(std::string axiom, std::vector<std::size_t> witnesses, const std::string& detail)
    : std::runtime_error("axiom '" + axiom + "' fails at basis indices " + describe(witnesses) +
                         (detail.empty() ? "" : ": " + detail)),
      axiom_(std::move(axiom)),
      witnesses_(std::move(witnesses)) {}

Algebra::Algebra(std::string name, Field field, std::vector<BasisElement> basis)
    : name_(std::move(name)), field_(field), basis_(std::move(basis)) {
  std::size_t n = basis_.size();
  table_.assign(n * n, Element{});
  set_.assign(n * n, 0);
  overflow_.assign(n * n, 0);
  d_.assign(n, Element{});
  d_overflow_.assign(n, 0);
  index_degrees();
}

void Algebra::index_degrees() {
  by_degree_.clear();
  local_.assign(basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto& block = by_degree_[basis_[i].degree];
    local_[i] = block.size();
    block.push_back(i);
  }
}

void Algebra::set_product(std::size_t i, std::size_t j, Element value) {
  std::size_t k = i * dim() + j;
  table_[k] = std::move(value);
  set_[k] = 1;
  overflow_[k] = 0;
}

void Algebra::set_product_overflow(std::size_t i, std::size_t j) {
  std::size_t k = i * dim() + j;
  table_[k] = Element{};
  set_[k] = 1;
  overflow_[k] = 1;
}

void Algebra::set_differential(std::size_t i, Element value) {
  d_[i] = std::move(value);
  d_overflow_[i] = 0;
}

void Algebra::set_differential_overflow(std::size_t i) {
  d_[i] = Element{};
  d_overflow_[i] = 1;
}

void Algebra::complete() {
  std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (!product_set(unit_, i)) set_product(unit_, i, Element::unit(i));
    if (!product_set(i, unit_)) set_product(i, unit_, Element::unit(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!product_set(i, j) || product_set(j, i)) continue;
      if (product_overflows(i, j))
        set_product_overflow(j, i);
      else
        set_product(j, i, table_[i * n + j].scaled(Scalar(koszul(degree(i), degree(j)))));
    }
}

void Algebra::validate() const {
  std::size_t n = dim();
  if (n == 0) throw AxiomViolation("unit", {}, "empty basis");
  if (unit_ >= n) throw AxiomViolation("unit", {unit_}, "unit index out of range");
  auto zero_block = indices_in_degree(0);
  if (zero_block.size() != 1 || zero_block[0] != unit_)
    throw AxiomViolation("degree zero is spanned by the unit", zero_block, "");
  for (std::size_t i = 0; i < n; ++i)
    if (basis_[i].degree < 0) throw AxiomViolation("non-negative degrees", {i}, "");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (basis_[i].label == basis_[j].label) throw AxiomViolation("distinct labels", {i, j}, basis_[i].label);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (product_overflows(i, j)) continue;
      for (const auto& [k, c] : table_[i * n + j].entries())
        if (basis_[k].degree != basis_[i].degree + basis_[j].degree)
          throw AxiomViolation("degree additivity", {i, j, k}, label(i) + "*" + label(j));
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(product(unit_, i) == Element::unit(i)) || !(product(i, unit_) == Element::unit(i)))
      throw AxiomViolation("unit", {unit_, i}, label(i));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (product_overflows(i, j) != product_overflows(j, i))
        throw AxiomViolation("graded commutativity", {i, j}, label(i) + "*" + label(j));
      if (product_overflows(i, j)) continue;
      if (!(table_[j * n + i] == table_[i * n + j].scaled(Scalar(koszul(degree(i), degree(j))))))
        throw AxiomViolation("graded commutativity", {i, j}, label(i) + "*" + label(j));
    }
  auto bound = truncation_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (product_overflows(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (bound && degree(i) + degree(j) + degree(k) > *bound) continue;
        try {
          Element left = multiply(table_[i * n + j], Element::unit(k));
          Element right = multiply(Element::unit(i), product(j, k));
          if (!(left == right)) throw AxiomViolation("associativity", {i, j, k}, label(i) + "*" + label(j) + "*" + label(k));
        } catch (const Overflow&) {
        }
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (d_overflow_[i]) continue;
    for (const auto& [k, c] : d_[i].entries())
      if (basis_[k].degree != basis_[i].degree + 1) throw AxiomViolation("differential degree", {i, k}, label(i));
    try {
      if (!d(d_[i]).is_zero()) throw AxiomViolation("d∘d = 0", {i}, label(i));
    } catch (const Overflow&) {
    }
  }
  if (has_differential()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        try {
          Element lhs = d(product(i, j));
          Element rhs = multiply(d_basis(i), Element::unit(j)) +
                        multiply(Element::unit(i), d_basis(j)).scaled(Scalar(degree(i) % 2 ? -1 : 1));
          if (!(lhs == rhs)) throw AxiomViolation("Leibniz rule", {i, j}, label(i) + "*" + label(j));
        } catch (const Overflow&) {
        }
      }
  }
  if (top_ && *top_ >= n) throw AxiomViolation("top class", {*top_}, "index out of range");
}

std::optional<std::size_t> Algebra::find(const std::string& label) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return i;
  return std::nullopt;
}

int Algebra::max_degree() const { return by_degree_.empty() ? 0 : by_degree_.rbegin()->first; }

std::vector<std::size_t> Algebra::indices_in_degree(int q) const {
  auto it = by_degree_.find(q);
  return it == by_degree_.end() ? std::vector<std::size_t>{} : it->second;
}

SparseVector Algebra::to_local(const Element& e, int q) const {
  SparseVector out;
  for (const auto& [i, c] : e.entries()) {
    if (basis_[i].degree != q) throw std::invalid_argument("element is not homogeneous of degree " + std::to_string(q));
    out.add(local_[i], c);
  }
  return out;
}

Element Algebra::from_local(const SparseVector& v, int q) const {
  auto it = by_degree_.find(q);
  if (it == by_degree_.end()) {
    if (!v.is_zero()) throw std::out_of_range("no basis elements in degree " + std::to_string(q));
    return {};
  }
  const auto& block = it->second;
  return v.reindexed([&](std::size_t k) { return block.at(k); });
}

int Algebra::degree_of(const Element& e) const {
  if (e.is_zero()) throw std::invalid_argument("degree of the zero element");
  int q = basis_[e.entries().front().first].degree;
  for (const auto& [i, c] : e.entries())
    if (basis_[i].degree != q) throw std::invalid_argument("element is not homogeneous");
  return q;
}

const Element& Algebra::product(std::size_t i, std::size_t j) const {
  std::size_t k = i * dim() + j;
  if (overflow_[k]) throw Overflow(degree(i) + degree(j));
  return table_[k];
}

Element Algebra::multiply(const Element& u, const Element& v) const {
  Element out;
  for (const auto& [i, a] : u.entries())
    for (const auto& [j, b] : v.entries()) out.add_scaled(product(i, j), a * b);
  return out;
}

bool Algebra::has_differential() const {
  for (std::size_t i = 0; i < dim(); ++i)
    if (d_overflow_[i] || !d_[i].is_zero()) return true;
  return false;
}

const Element& Algebra::d_basis(std::size_t i) const {
  if (d_overflow_[i]) throw Overflow(degree(i) + 1);
  return d_[i];
}

Element Algebra::d(const Element& e) const {
  Element out;
  for (const auto& [i, c] : e.entries()) out.add_scaled(d_basis(i), c);
  return out;
}

Matrix Algebra::d_matrix(int q) const {
  auto src = indices_in_degree(q);
  std::vector<SparseVector> cols;
  cols.reserve(src.size());
  for (std::size_t i : src) cols.push_back(to_local(d_basis(i), q + 1));
  return Matrix::from_columns(dim_in_degree(q + 1), cols);
}

std::string Algebra::render(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  const auto& entries = e.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const auto& [i, c] = *it;
    std::string term;
    if (c.is_one())
      term = label(i);
    else if ((-c).is_one())
      term = "-" + label(i);
    else
      term = c.to_string() + "*" + label(i);
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.name_ == b.name_ && a.field_ == b.field_ && a.basis_ == b.basis_ && a.unit_ == b.unit_ &&
         a.top_ == b.top_ && a.truncation_ == b.truncation_ && a.table_ == b.table_ && a.overflow_ == b.overflow_ &&
         a.d_ == b.d_ && a.d_overflow_ == b.d_overflow_;
}

Scalar pairing(const Algebra& a, const Element& u, const Element& v) {
  if (!a.top()) throw PreconditionError("algebra '" + a.name() + "' has no top class");
  return a.multiply(u, v).at(*a.top());
}

PoincareData poincare_data(const Algebra& a) {
  if (!a.top()) throw PreconditionError("algebra '" + a.name() + "' has no top class");
  if (a.has_differential()) throw PreconditionError("Poincare data requires a zero differential");
  PoincareData pd;
  pd.top = *a.top();
  pd.m = a.degree(pd.top);
  pd.dual.assign(a.dim(), Element{});
  if (a.max_degree() > pd.m) throw DegeneratePairing(a.max_degree());
  for (int p = 0; p <= pd.m; ++p) {
    auto P = a.indices_in_degree(p);
    auto Q = a.indices_in_degree(pd.m - p);
    if (P.size() != Q.size()) throw DegeneratePairing(p);
    if (P.empty()) continue;
    Matrix g(P.size(), Q.size());
    for (std::size_t i = 0; i < P.size(); ++i)
      for (std::size_t k = 0; k < Q.size(); ++k)
        g.add(i, k, pairing(a, Element::unit(P[i]), Element::unit(Q[k])));
    auto inv = inverse(g);
    if (!inv) throw DegeneratePairing(p);
    for (std::size_t i = 0; i < P.size(); ++i) {
      Element dual;
      for (std::size_t k = 0; k < Q.size(); ++k) dual.add(Q[k], inv->at(k, i));
      pd.dual[P[i]] = std::move(dual);
    }
  }
  for (std::size_t t = 0; t < a.dim(); ++t) {
    Scalar sign((pd.m - a.degree(t)) % 2 ? -1 : 1);
    for (const auto& [k, c] : pd.dual[t].entries()) pd.diagonal.emplace_back(t, k, sign * c);
  }
  std::sort(pd.diagonal.begin(), pd.diagonal.end(),
            [](const auto& x, const auto& y) { return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y)); });
  return pd;
}

SparseVector Indecomposables::project(const Element& e) const { return quotient->project(e); }

Indecomposables indecomposables(const Algebra& a) {
  std::vector<Element> sub{Element::unit(a.unit())};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!a.is_positive(i)) continue;
    for (std::size_t j = i; j < a.dim(); ++j) {
      if (!a.is_positive(j) || a.product_overflows(i, j)) continue;
      const Element& p = a.product(i, j);
      if (!p.is_zero()) sub.push_back(p);
    }
  }
  Indecomposables q;
  auto quotient = std::make_shared<Quotient>(a.dim(), sub);
  q.basis = quotient->free_columns();
  q.quotient = quotient;
  return q;
}

namespace {

using Mono = std::vector<int>;
using Poly = std::map<Mono, Scalar>;

struct FreeContext {
  std::vector<Generator> gens;
  std::vector<Poly> dgen;

  bool odd(std::size_t g) const { return gens[g].degree % 2 != 0; }

  int degree(const Mono& m) const {
    int d = 0;
    for (std::size_t g = 0; g < m.size(); ++g) d += m[g] * gens[g].degree;
    return d;
  }

  // Product of monomials in normal form: returns the sign, or 0 when zero.
  int mul(const Mono& a, const Mono& b, Mono& out) const {
    out.assign(a.size(), 0);
    int inversions = 0;
    for (std::size_t g = 0; g < a.size(); ++g) {
      if (odd(g) && a[g] && b[g]) return 0;
      out[g] = a[g] + b[g];
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!odd(j) || !b[j]) continue;
      for (std::size_t i = j + 1; i < a.size(); ++i)
        if (odd(i) && a[i]) ++inversions;
    }
    return inversions % 2 ? -1 : 1;
  }

  Poly mul(const Poly& p, const Poly& q) const {
    Poly out;
    Mono m;
    for (const auto& [a, c] : p)
      for (const auto& [b, e] : q) {
        int s = mul(a, b, m);
        if (s == 0) continue;
        Scalar v = c * e;
        if (s < 0) v = -v;
        auto [it, inserted] = out.emplace(m, v);
        if (!inserted) {
          it->second += v;
          if (it->second.is_zero()) out.erase(it);
        }
      }
    return out;
  }

  Poly mono(const Mono& m) const { return Poly{{m, Scalar(1)}}; }

  Poly generator(std::size_t g) const {
    Mono m(gens.size(), 0);
    m[g] = 1;
    return mono(m);
  }

  Poly evaluate(const WordPolynomial& w) const {
    Poly out;
    for (const auto& term : w) {
      Poly p = mono(Mono(gens.size(), 0));
      for (std::size_t g : term.word) {
        if (g >= gens.size()) throw std::out_of_range("generator index out of range");
        p = mul(p, generator(g));
      }
      for (auto& [m, c] : p) add(out, m, c * term.coef);
    }
    return out;
  }

  static void add(Poly& p, const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) p.erase(it);
    }
  }

  // Leibniz rule on the normal-form factor sequence: odd generators in index
  // order, then even generators with multiplicity.
  Poly d(const Mono& m) const {
    std::vector<std::size_t> factors;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (odd(g) && m[g]) factors.push_back(g);
    for (std::size_t g = 0; g < m.size(); ++g)
      if (!odd(g))
        for (int e = 0; e < m[g]; ++e) factors.push_back(g);
    Poly out;
    int prefix_degree = 0;
    Mono prefix(m.size(), 0);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      Mono suffix(m.size(), 0);
      for (std::size_t l = k + 1; l < factors.size(); ++l) ++suffix[factors[l]];
      Poly term = mul(mul(mono(prefix), dgen[factors[k]]), mono(suffix));
      Scalar sign(prefix_degree % 2 ? -1 : 1);
      for (auto& [mm, c] : term) add(out, mm, c * sign);
      prefix_degree += gens[factors[k]].degree;
      ++prefix[factors[k]];
    }
    return out;
  }

  Poly d(const Poly& p) const {
    Poly out;
    for (const auto& [m, c] : p)
      for (const auto& [mm, e] : d(m)) add(out, mm, c * e);
    return out;
  }

  std::string label(const Mono& m) const {
    std::string out;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (odd(g) && m[g]) out += gens[g].label;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (!odd(g) && m[g]) {
        out += gens[g].label;
        if (m[g] > 1) out += "^" + std::to_string(m[g]);
      }
    return out.empty() ? "1" : out;
  }

  unsigned odd_mask(const Mono& m) const {
    unsigned mask = 0, bit = 1;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (odd(g)) {
        if (m[g]) mask |= bit;
        bit <<= 1;
      }
    return mask;
  }

  Mono even_part(const Mono& m) const {
    Mono out;
    for (std::size_t g = 0; g < m.size(); ++g)
      if (!odd(g)) out.push_back(m[g]);
    return out;
  }
};

}  // namespace

Algebra truncated_free_cdga(std::string name, Field field, std::vector<Generator> generators,
                            std::vector<WordPolynomial> d_on_generators, int bound) {
  if (d_on_generators.size() != generators.size())
    throw PreconditionError("one differential value per generator is required");
  int max_gen = 0;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].degree <= 0) throw PreconditionError("generator '" + generators[g].label + "' needs positive degree");
    max_gen = std::max(max_gen, generators[g].degree);
    for (std::size_t h = 0; h < g; ++h)
      if (generators[h].label == generators[g].label)
        throw AxiomViolation("distinct labels", {h, g}, generators[g].label);
  }
  if (bound < max_gen) throw PreconditionError("truncation bound below a generator degree");

  FreeContext ctx;
  ctx.gens = generators;
  for (const auto& w : d_on_generators) ctx.dgen.push_back(ctx.evaluate(w));
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (const auto& [m, c] : ctx.dgen[g])
      if (ctx.degree(m) != generators[g].degree + 1)
        throw AxiomViolation("differential degree", {g}, "d(" + generators[g].label + ")");
  for (std::size_t g = 0; g < generators.size(); ++g)
    if (!ctx.d(ctx.dgen[g]).empty()) throw AxiomViolation("d∘d = 0", {g}, generators[g].label);

  std::vector<Mono> monos;
  Mono cur(generators.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int deg) {
    if (g == generators.size()) {
      monos.push_back(cur);
      return;
    }
    int limit = ctx.odd(g) ? 1 : (bound - deg) / generators[g].degree;
    for (int e = 0; e <= limit && deg + e * generators[g].degree <= bound; ++e) {
      cur[g] = e;
      rec(g + 1, deg + e * generators[g].degree);
    }
    cur[g] = 0;
  };
  rec(0, 0);
  std::sort(monos.begin(), monos.end(), [&](const Mono& a, const Mono& b) {
    int da = ctx.degree(a), db = ctx.degree(b);
    if (da != db) return da < db;
    unsigned ma = ctx.odd_mask(a), mb = ctx.odd_mask(b);
    if (ma != mb) return ma < mb;
    return ctx.even_part(a) > ctx.even_part(b);
  });

  std::map<Mono, std::size_t> index;
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i]] = i;
    basis.push_back({ctx.label(monos[i]), ctx.degree(monos[i])});
  }
  Algebra a(std::move(name), field, std::move(basis));
  auto to_element = [&](const Poly& p) {
    Element e;
    for (const auto& [m, c] : p) {
      Scalar v = field.is_rational() ? c : Scalar::in_field(0, field) + c;
      e.add(index.at(m), v);
    }
    return e;
  };
  Mono prod;
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      int s = ctx.mul(monos[i], monos[j], prod);
      if (s == 0) {
        a.set_product(i, j, Element{});
      } else if (ctx.degree(prod) > bound) {
        a.set_product_overflow(i, j);
      } else {
        Scalar c = field.is_rational() ? Scalar(s) : Scalar::in_field(s, field);
        a.set_product(i, j, Element::unit(index.at(prod), c));
      }
    }
  for (std::size_t i = 0; i < monos.size(); ++i) {
    Poly dm = ctx.d(monos[i]);
    bool over = std::any_of(dm.begin(), dm.end(), [&](const auto& kv) { return ctx.degree(kv.first) > bound; });
    if (over)
      a.set_differential_overflow(i);
    else
      a.set_differential(i, to_element(dm));
  }
  a.set_unit(index.at(Mono(generators.size(), 0)));
  a.set_truncation(bound);
  FreePresentation pres;
  pres.generators = std::move(generators);
  pres.differential = std::move(d_on_generators);
  pres.bound = bound;
  pres.exponents = monos;
  a.set_presentation(std::move(pres));
  return a;
}

Cohomology::Cohomology(std::shared_ptr<const Algebra> model, int max_degree)
    : model_(std::move(model)), max_degree_(max_degree) {
  const Algebra& a = *model_;
  auto bound = a.truncation();
  if (bound && max_degree + 1 > *bound)
    throw PreconditionError("cohomology through degree " + std::to_string(max_degree) + " needs truncation bound >= " +
                            std::to_string(max_degree + 1));
  int top_source = bound ? *bound : a.max_degree();
  for (int q = 1; q <= top_source; ++q) {
    auto e = std::make_shared<Echelon>();
    auto src = a.indices_in_degree(q - 1);
    bool ok = true;
    for (std::size_t i : src)
      if (a.differential_overflows(i)) ok = false;
    if (!ok) continue;
    for (std::size_t k = 0; k < src.size(); ++k)
      e->insert(a.to_local(a.d_basis(src[k]), q), SparseVector::unit(k));
    boundaries_[q] = e;
  }

  std::vector<BasisElement> hb;
  std::vector<int> offset;
  for (int q = 0; q <= max_degree; ++q) {
    offset.push_back(static_cast<int>(reps_.size()));
    auto cycles = kernel_basis(a.d_matrix(q));
    std::vector<SparseVector> bounds;
    if (auto it = boundaries_.find(q); it != boundaries_.end())
      for (std::size_t p : it->second->pivots()) bounds.push_back(it->second->row(p));
    auto sq = std::make_shared<Subquotient>(cycles, bounds);
    for (const auto& r : sq->representatives()) {
      Element rep = a.from_local(r, q);
      hb.push_back({a.render(rep), q});
      reps_.push_back(std::move(rep));
    }
    classes_[q] = sq;
  }
  h_ = Algebra(a.name() + "/H", a.field(), hb);
  std::size_t n = reps_.size();
  bool unit_found = false;
  for (std::size_t c = 0; c < n; ++c)
    if (hb[c].degree == 0) {
      h_.set_unit(c);
      unit_found = true;
    }
  if (!unit_found) throw AxiomViolation("degree zero is spanned by the unit", {}, "cohomology has no unit class");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int q = hb[i].degree + hb[j].degree;
      Element prod;
      try {
        prod = a.multiply(reps_[i], reps_[j]);
      } catch (const Overflow&) {
        h_.set_product_overflow(i, j);
        continue;
      }
      if (q <= max_degree) {
        h_.set_product(i, j, class_of(prod));
      } else if (prod.is_zero() || primitive(prod)) {
        h_.set_product(i, j, Element{});
      } else {
        h_.set_product_overflow(i, j);
      }
    }
  bool complete_range = !bound && max_degree >= a.max_degree();
  if (!complete_range) h_.set_truncation(max_degree);
  if (a.top() && !a.has_differential() && a.degree(*a.top()) <= max_degree)
    h_.set_top(class_of(Element::unit(*a.top())).entries().front().first);
}

Element Cohomology::lift(const Element& cls) const {
  Element out;
  for (const auto& [k, c] : cls.entries()) out.add_scaled(reps_.at(k), c);
  return out;
}

Element Cohomology::class_of(const Element& v) const {
  if (v.is_zero()) return {};
  int q = model_->degree_of(v);
  if (!is_cocycle(v)) throw std::invalid_argument("class_of: element " + model_->render(v) + " is not a cocycle");
  if (q > max_degree_) {
    if (primitive(v)) return {};
    throw Overflow(q);
  }
  SparseVector coords = classes_.at(q)->project(model_->to_local(v, q));
  std::size_t offset = 0;
  for (int p = 0; p < q; ++p) offset += classes_.at(p)->dim();
  return coords.reindexed([&](std::size_t k) { return offset + k; });
}

std::optional<Element> Cohomology::primitive(const Element& v) const {
  if (v.is_zero()) return Element{};
  int q = model_->degree_of(v);
  if (q == 0) return std::nullopt;
  auto it = boundaries_.find(q);
  if (it == boundaries_.end()) throw Overflow(q);
  SparseVector combo;
  if (!it->second->reduce(model_->to_local(v, q), &combo).is_zero()) return std::nullopt;
  return model_->from_local(combo, q - 1);
}

std::vector<std::size_t> Cohomology::betti() const {
  std::vector<std::size_t> out;
  for (int q = 0; q <= max_degree_; ++q) out.push_back(classes_.at(q)->dim());
  return out;
}

Cohomology cohomology(const Algebra& model, int max_degree) {
  return Cohomology(std::make_shared<const Algebra>(model), max_degree);
}

namespace {

struct QuotientResult {
  Algebra algebra;
  std::shared_ptr<Quotient> quotient;
};

QuotientResult quotient_with_projection(const Algebra& a, const std::vector<Element>& ideal, const std::string& name) {
  auto q = std::make_shared<Quotient>(a.dim(), ideal);
  const auto& free = q->free_columns();
  for (std::size_t p : q->subspace().pivots()) {
    const Element& row = q->subspace().row(p);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      Element prod;
      try {
        prod = a.multiply(Element::unit(i), row);
      } catch (const Overflow&) {
        continue;
      }
      if (!q->project(prod).is_zero()) throw AxiomViolation("ideal closure under products", {i, p}, a.label(i));
    }
    Element dr;
    try {
      dr = a.d(row);
    } catch (const Overflow&) {
      continue;
    }
    if (!q->project(dr).is_zero()) throw AxiomViolation("ideal closure under d", {p}, a.label(p));
  }
  std::vector<BasisElement> basis;
  for (std::size_t c : free) basis.push_back(a.basis()[c]);
  Algebra out(name, a.field(), basis);
  bool unit_free = false;
  for (std::size_t k = 0; k < free.size(); ++k)
    if (free[k] == a.unit()) {
      out.set_unit(k);
      unit_free = true;
    }
  if (!unit_free) throw PreconditionError("ideal contains the unit");
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = 0; j < free.size(); ++j) {
      if (a.product_overflows(free[i], free[j])) {
        out.set_product(i, j, Element{});
        continue;
      }
      out.set_product(i, j, q->project(a.product(free[i], free[j])));
    }
    out.set_differential(i, a.differential_overflows(free[i]) ? Element{} : q->project(a.d_basis(free[i])));
  }
  return {std::move(out), q};
}

}  // namespace

Algebra quotient_algebra(const Algebra& a, const std::vector<Element>& ideal, const std::string& name) {
  return quotient_with_projection(a, ideal, name).algebra;
}

Algebra poincare_duality_model(const Algebra& model, int m, const Element& top_cocycle) {
  Cohomology h = cohomology(model, m);
  if (h.algebra().dim_in_degree(m) != 1) throw PreconditionError("cohomology is not one-dimensional in the top degree");
  Element top_class = h.class_of(top_cocycle);
  if (top_class.is_zero()) throw PreconditionError("top cocycle is exact");
  Scalar top_coef = top_class.entries().front().second;

  // Ideal I0 = C^m + A^{>m}, C^m a complement of the cocycles in A^m.
  auto cycles = kernel_basis(model.d_matrix(m));
  Quotient complement(model.dim_in_degree(m), cycles);
  std::vector<Element> ideal;
  for (std::size_t c : complement.free_columns()) ideal.push_back(model.from_local(SparseVector::unit(c), m));
  for (std::size_t i = 0; i < model.dim(); ++i)
    if (model.degree(i) > m) ideal.push_back(Element::unit(i));
  QuotientResult b = quotient_with_projection(model, ideal, model.name() + "/I0");

  // epsilon on B^m: the top-class coefficient of the cocycle representing the class.
  Echelon split;
  for (std::size_t k = 0; k < cycles.size(); ++k) split.insert(cycles[k], SparseVector::unit(k));
  for (std::size_t c : complement.free_columns()) split.insert(SparseVector::unit(c));
  auto epsilon = [&](const Element& v_in_b) -> Scalar {
    if (v_in_b.is_zero()) return Scalar(0);
    Element v = b.quotient->lift(v_in_b);
    SparseVector combo;
    split.reduce(model.to_local(v, m), &combo);
    Element z;
    for (const auto& [k, c] : combo.entries()) z.add_scaled(model.from_local(cycles[k], m), c);
    Element cls = h.class_of(z);
    return cls.at(top_class.entries().front().first) / top_coef;
  };

  const Algebra& B = b.algebra;
  std::vector<Element> orphans;
  for (int p = 0; p <= m; ++p) {
    auto P = B.indices_in_degree(p);
    auto Q = B.indices_in_degree(m - p);
    if (P.empty()) continue;
    Matrix g(Q.size(), P.size());
    for (std::size_t i = 0; i < P.size(); ++i)
      for (std::size_t k = 0; k < Q.size(); ++k)
        g.add(k, i, epsilon(B.product(P[i], Q[k])));
    for (const auto& v : kernel_basis(g)) orphans.push_back(B.from_local(v, p));
  }
  QuotientResult r = quotient_with_projection(B, orphans, model.name() + "/PD");
  Algebra out = std::move(r.algebra);
  auto tops = out.indices_in_degree(m);
  if (tops.size() != 1) throw MismatchError("Poincare duality model is not one-dimensional in the top degree");
  out.set_top(tops.front());

  // Quasi-isomorphism check: classes of the model map to independent classes.
  Cohomology hr = cohomology(out, m);
  if (hr.betti() != h.betti()) throw MismatchError("Poincare duality model changes the Betti numbers");
  for (int q = 0; q <= m; ++q) {
    Echelon images;
    std::size_t count = 0;
    for (std::size_t c : h.algebra().indices_in_degree(q)) {
      Element rep = h.representative(c);
      Element in_b = b.quotient->project(rep);
      Element in_r = r.quotient->project(in_b);
      if (images.insert(hr.class_of(in_r))) ++count;
    }
    if (count != h.algebra().dim_in_degree(q)) throw MismatchError("projection to the Poincare duality model is not a quasi-isomorphism");
  }
  return out;
}

Algebra connected_sum_model(const Algebra& a, int m) {
  if (m < 5) throw PreconditionError("connected sum with S^2 x S^{m-2} needs m >= 5");
  if (!a.top() || a.degree(*a.top()) != m) throw PreconditionError("algebra needs a top class in degree m");
  if (a.truncation() && *a.truncation() < a.max_degree())
    throw PreconditionError("connected sum needs an untruncated algebra");
  std::vector<BasisElement> basis = a.basis();
  std::string xl = a.find("x") ? "x'" : "x";
  std::string yl = a.find("y") ? "y'" : "y";
  basis.push_back({xl, 2});
  basis.push_back({yl, m - 2});
  std::size_t n = a.dim(), x = n, y = n + 1, w = *a.top();
  Algebra out(a.name() + "#S2xS" + std::to_string(m - 2), a.field(), basis);
  out.set_unit(a.unit());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a.product_overflows(i, j)) throw PreconditionError("connected sum needs an untruncated algebra");
      out.set_product(i, j, a.product(i, j));
    }
    out.set_differential(i, a.d_basis(i));
  }
  out.set_product(x, y, Element::unit(w));
  out.set_product(y, x, Element::unit(w, Scalar(koszul(2, m - 2))));
  out.set_top(w);
  out.complete();
  return out;
}

bool detect_top(Algebra& a) {
  int q = a.max_degree();
  auto block = a.indices_in_degree(q);
  if (block.size() != 1) return false;
  auto saved = a.top();
  a.set_top(block.front());
  try {
    if (!a.has_differential()) poincare_data(a);
  } catch (const DegeneratePairing&) {
    a.set_top(saved);
    return false;
  }
  return true;
}

Algebra change_field(const Algebra& a, Field field) {
  if (a.field() == field) return a;
  const Scalar one = Scalar::in_field(1, field);
  auto coerce = [&](const Element& e) {
    Element out;
    for (const auto& [i, c] : e.entries()) out.add(i, c * one);
    return out;
  };
  Algebra out(a.name(), field, a.basis());
  out.set_unit(a.unit());
  out.set_top(a.top());
  out.set_truncation(a.truncation());
  if (a.presentation()) out.set_presentation(*a.presentation());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (!a.product_set(i, j)) continue;
      if (a.product_overflows(i, j))
        out.set_product_overflow(i, j);
      else
        out.set_product(i, j, coerce(a.product(i, j)));
    }
    if (a.differential_overflows(i))
      out.set_differential_overflow(i);
    else
      out.set_differential(i, coerce(a.d_basis(i)));
  }
  out.validate();
  return out;
}

}  // namespace confseq
