#include "confseq/massey.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace confseq {

namespace {

Scalar sgn(int e) { return Scalar(e % 2 != 0 ? -1 : 1); }

int degree_or(const Algebra& a, const Element& e, int fallback) { return e.is_zero() ? fallback : a.degree_of(e); }

Element random_cocycle(const Algebra& model, int q, std::mt19937& rng) {
  Element out;
  if (q < 0) return out;
  std::uniform_int_distribution<int> value(-3, 3);
  for (const auto& k : kernel_basis(model.d_matrix(q))) out.add_scaled(model.from_local(k, q), Scalar(value(rng)));
  return out;
}

MasseyResult massey_impl(const Cohomology& h, const Indecomposables& qh, const std::vector<Element>& L,
                         const std::vector<std::vector<Element>>& B, const std::vector<Element>& C,
                         std::optional<unsigned> seed) {
  const Algebra& model = h.model();
  const Algebra& ha = h.algebra();
  const std::size_t r = L.size(), s = C.size();
  if (B.size() != r) throw PreconditionError("B must have one row per entry of L");
  for (const auto& row : B)
    if (row.size() != s) throw PreconditionError("B must have one column per entry of C");

  std::vector<int> da(r, 0), dc(s, 0);
  std::vector<std::vector<int>> db(r, std::vector<int>(s, 0));
  for (std::size_t i = 0; i < r; ++i) da[i] = degree_or(ha, L[i], 0);
  for (std::size_t j = 0; j < s; ++j) dc[j] = degree_or(ha, C[j], 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) db[i][j] = degree_or(ha, B[i][j], 0);

  // Expected degrees of x_j, y_i and the product, from any nonzero entries.
  std::vector<std::optional<int>> dx(s), dy(r);
  std::optional<int> degree;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (B[i][j].is_zero()) continue;
      if (!L[i].is_zero() && !dx[j]) dx[j] = da[i] + db[i][j] - 1;
      if (!C[j].is_zero() && !dy[i]) dy[i] = db[i][j] + dc[j] - 1;
      if (!L[i].is_zero() && !C[j].is_zero() && !degree) degree = da[i] + db[i][j] + dc[j] - 1;
    }

  std::vector<Element> la, lc;
  for (const auto& e : L) la.push_back(h.lift(e));
  for (const auto& e : C) lc.push_back(h.lift(e));
  std::vector<std::vector<Element>> lb(r);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& e : B[i]) lb[i].push_back(h.lift(e));

  std::optional<std::mt19937> rng;
  if (seed) rng.emplace(*seed);

  MasseyResult out;
  for (std::size_t j = 0; j < s; ++j) {
    Element target;
    for (std::size_t i = 0; i < r; ++i) target += model.multiply(la[i], lb[i][j]);
    auto x = h.primitive(target);
    if (!x) throw NotDefined("(L.B)_" + std::to_string(j + 1) + " = " + model.render(target) + " is not exact");
    if (rng && dx[j]) *x += random_cocycle(model, *dx[j], *rng);
    out.x.push_back(std::move(*x));
  }
  for (std::size_t i = 0; i < r; ++i) {
    Element target;
    for (std::size_t j = 0; j < s; ++j) target += model.multiply(lb[i][j], lc[j]);
    auto y = h.primitive(target);
    if (!y) throw NotDefined("(B.C)_" + std::to_string(i + 1) + " = " + model.render(target) + " is not exact");
    if (rng && dy[i]) *y += random_cocycle(model, *dy[i], *rng);
    out.y.push_back(std::move(*y));
  }

  for (std::size_t j = 0; j < s; ++j) out.representative += model.multiply(out.x[j], lc[j]);
  for (std::size_t i = 0; i < r; ++i)
    out.representative.add_scaled(model.multiply(la[i], out.y[i]), -sgn(da[i]));
  if (!model.d(out.representative).is_zero())
    throw std::logic_error("Massey representative " + model.render(out.representative) + " is not a cocycle");
  out.degree = degree_or(model, out.representative, degree.value_or(0));
  out.cls = h.class_of(out.representative);

  Echelon span;
  auto add_products = [&](const Element& fixed, int other_degree, bool fixed_left) {
    if (fixed.is_zero()) return;
    for (std::size_t g : ha.indices_in_degree(other_degree)) {
      Element e = Element::unit(g);
      span.insert(fixed_left ? ha.multiply(fixed, e) : ha.multiply(e, fixed));
    }
  };
  for (std::size_t i = 0; i < r; ++i)
    if (dy[i]) add_products(L[i], *dy[i], true);
  for (std::size_t j = 0; j < s; ++j)
    if (dx[j]) add_products(C[j], *dx[j], false);
  for (std::size_t p : span.pivots()) out.indeterminacy.push_back(span.row(p));
  out.residual = qh.project(out.cls);
  return out;
}

}  // namespace

bool MasseyResult::contains(const Element& v) const {
  Echelon span;
  for (const auto& e : indeterminacy) span.insert(e);
  return span.contains(cls - v);
}

MasseyResult matrix_massey(const Cohomology& h, const std::vector<Element>& L,
                           const std::vector<std::vector<Element>>& B, const std::vector<Element>& C,
                           std::optional<unsigned> seed) {
  return massey_impl(h, indecomposables(h.algebra()), L, B, C, seed);
}

MasseyResult triple_massey(const Cohomology& h, const Element& a, const Element& b, const Element& c,
                           std::optional<unsigned> seed) {
  return matrix_massey(h, {a}, {{b}}, {c}, seed);
}

HTensor HTensor::of(const Algebra& h, const Element& a, const Element& b) {
  HTensor t;
  t.dim = h.dim();
  for (const auto& [i, ca] : a.entries())
    for (const auto& [j, cb] : b.entries()) t.v.add(i * t.dim + j, ca * cb);
  return t;
}

HTensor& HTensor::add(const HTensor& o, const Scalar& c) {
  if (dim == 0) dim = o.dim;
  v.add_scaled(o.v, c);
  return *this;
}

std::string HTensor::render(const Algebra& h) const {
  if (v.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : v.entries()) {
    std::string coef = c.to_string();
    bool neg = coef.front() == '-';
    if (neg) coef.erase(0, 1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (coef != "1") out += coef + "*";
    out += "[" + h.label(k / dim) + "]⊗[" + h.label(k % dim) + "]";
  }
  return out;
}

std::string tag_name(Tag t) { return t == Tag::E23E24 ? "e23e24" : "e23e34"; }

Graph tag_graph(Tag t) { return t == Tag::E23E24 ? Graph(4, {{2, 3}, {2, 4}}) : Graph(4, {{2, 3}, {3, 4}}); }

namespace {

std::pair<std::size_t, std::size_t> split(std::size_t k, std::size_t d) { return {k / d, k % d}; }

}  // namespace

SparseVector psi(const Algebra& h, const Indecomposables& q, const SparseVector& qq) {
  const std::size_t d = q.dim();
  SparseVector out;
  for (const auto& [k, c] : qq.entries()) {
    auto [i, j] = split(k, d);
    out.add(k, c);
    out.add(j * d + i, -c * sgn(h.degree(q.basis[i]) * h.degree(q.basis[j])));
  }
  return out;
}

SparseVector tau(const Algebra& h, const Indecomposables& q, const SparseVector& qq) {
  const std::size_t d = q.dim();
  SparseVector out;
  for (const auto& [k, c] : qq.entries()) {
    auto [i, j] = split(k, d);
    out.add(j * d + i, -c * sgn(h.degree(q.basis[i]) * h.degree(q.basis[j])));
  }
  return out;
}

namespace {

Residual residual_of(const HTensor& t, const Algebra& h, const Indecomposables& q) {
  Residual r;
  SparseVector qq;
  for (const auto& [k, c] : t.v.entries()) {
    auto [i, j] = split(k, t.dim);
    SparseVector qj = q.project(Element::unit(j));
    if (h.degree(i) == 0) {
      r.unit_part.add_scaled(qj, c);
      continue;
    }
    SparseVector qi = q.project(Element::unit(i));
    for (const auto& [a, ca] : qi.entries())
      for (const auto& [b, cb] : qj.entries()) qq.add(a * q.dim() + b, c * ca * cb);
  }
  r.sym_part = psi(h, q, qq);
  return r;
}

}  // namespace

bool obstruction_residual(E2TwoElement& v, const Algebra& h) {
  Indecomposables q = indecomposables(h);
  bool nonzero = false;
  for (int t = 0; t < 2; ++t) {
    v.residual[t] = residual_of(v.components[t], h, q);
    nonzero = nonzero || !v.residual[t]->is_zero();
  }
  return nonzero;
}

namespace {

D2Star d2_star_impl(const Cohomology& h, const Indecomposables& qh, const std::array<Element, 4>& in) {
  const Algebra& ha = h.algebra();
  const char* names = "abcd";
  for (int i = 0; i < 4; ++i) {
    if (in[i].is_zero()) throw PreconditionError(std::string("d2_star: ") + names[i] + " is zero");
    for (int j = i + 1; j < 4; ++j)
      if (!ha.multiply(in[i], in[j]).is_zero())
        throw PreconditionError(std::string("d2_star: ") + names[i] + names[j] + " is not zero");
  }
  int A = ha.degree_of(in[0]), Bd = ha.degree_of(in[1]), Cd = ha.degree_of(in[2]), D = ha.degree_of(in[3]);

  struct Spec {
    Tag tag;
    Scalar sign;
    std::array<int, 3> bracket;
    std::size_t element;
    bool bracket_first;
  };
  const std::vector<Spec> specs{
      {Tag::E23E34, sgn(A), {1, 2, 3}, 0, false},
      {Tag::E23E34, Scalar(1), {0, 1, 2}, 3, true},
      {Tag::E23E34, sgn(Cd * A * Bd), {1, 0, 3}, 2, true},
      {Tag::E23E34, -sgn(Bd * Cd + Bd * D + Cd * D), {0, 3, 2}, 1, true},
      {Tag::E23E24, sgn(A + Bd * Cd), {2, 1, 3}, 0, false},
      {Tag::E23E24, sgn(Bd * Cd), {0, 2, 1}, 3, true},
      {Tag::E23E24, sgn(Bd * Cd + Bd * D + A * Cd), {2, 0, 3}, 1, true},
      {Tag::E23E24, -sgn(Bd * D + D * Cd), {0, 3, 1}, 2, true},
  };

  D2Star out;
  for (auto& c : out.value.components) c.dim = ha.dim();
  for (const auto& sp : specs) {
    BracketTerm term{sp.tag, "", sp.sign, sp.bracket_first, sp.element,
                     massey_impl(h, qh, {in[sp.bracket[0]]}, {{in[sp.bracket[1]]}}, {in[sp.bracket[2]]}, std::nullopt)};
    term.name = std::string("<") + names[sp.bracket[0]] + "," + names[sp.bracket[1]] + "," + names[sp.bracket[2]] + ">";
    const Element& e = in[sp.element];
    HTensor t = sp.bracket_first ? HTensor::of(ha, term.bracket.cls, e) : HTensor::of(ha, e, term.bracket.cls);
    out.value.at(sp.tag).add(t, sp.sign);
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace

D2Star d2_star(const Cohomology& h, const Element& a, const Element& b, const Element& c, const Element& d) {
  return d2_star_impl(h, indecomposables(h.algebra()), {a, b, c, d});
}

C4Engine::C4Engine(const Cohomology& h, int q_max) : h_(h) {
  c_ = build_C(4, h.model_ptr(), q_max);
  ss_ = std::make_unique<SpectralSequence>(*c_);
}

SparseVector C4Engine::chain(Tag t, const HTensor& x, int q) const {
  const std::uint32_t mask = tag_graph(t).mask();
  SparseVector out;
  for (const auto& [k, c] : x.v.entries()) {
    const Element& ri = h_.representative(k / x.dim);
    const Element& rj = h_.representative(k % x.dim);
    for (const auto& [i, ci] : ri.entries())
      for (const auto& [j, cj] : rj.entries()) {
        auto at = c_->find(mask, {i, j});
        if (!at || at->first != Bidegree{2, q})
          throw std::logic_error("C4Engine: " + tag_name(t) + " term outside block (2," + std::to_string(q) + ")");
        out.add(at->second, c * ci * cj);
      }
  }
  return out;
}

SparseVector C4Engine::e2_coordinates(const E2TwoElement& v, int q) const {
  SparseVector z = chain(Tag::E23E24, v.at(Tag::E23E24), q) + chain(Tag::E23E34, v.at(Tag::E23E34), q);
  return ss_->project(2, 2, 2 + q, ss_->embed(2, q, z));
}

SparseVector C4Engine::column0(const std::vector<Quadruple>& input, int q) const {
  const std::uint32_t mask = Graph(4).mask();
  SparseVector out;
  for (const auto& [classes, coef] : input) {
    std::vector<SparseVector> reps;
    for (const auto& cls : classes) reps.push_back(h_.lift(cls));
    for (const auto& [i, ci] : reps[0].entries())
      for (const auto& [j, cj] : reps[1].entries())
        for (const auto& [k, ck] : reps[2].entries())
          for (const auto& [l, cl] : reps[3].entries()) {
            auto at = c_->find(mask, {i, j, k, l});
            if (!at || at->first != Bidegree{0, q})
              throw PreconditionError("C4Engine: input term outside block (0," + std::to_string(q) + ")");
            out.add(at->second, coef * ci * cj * ck * cl);
          }
  }
  return out;
}

std::optional<SparseVector> C4Engine::d2(const std::vector<Quadruple>& input, int q) const {
  SparseVector z = ss_->embed(0, q, column0(input, q));
  auto lifted = ss_->extend(2, 0, q, z);
  if (!lifted) return std::nullopt;
  SparseVector image = ss_->total_differential(q).apply(*lifted);
  return ss_->project(2, 2, q + 1, image);
}

E2TwoElement C4Engine::decompose(const SparseVector& coords, int q) const {
  const Algebra& ha = h_.algebra();
  std::vector<std::pair<Tag, std::size_t>> cols_key;
  std::vector<SparseVector> cols;
  std::size_t rows = coords.support_end();
  for (Tag t : {Tag::E23E24, Tag::E23E34})
    for (std::size_t i = 0; i < ha.dim(); ++i)
      for (std::size_t j = 0; j < ha.dim(); ++j) {
        if (ha.degree(j) == 0 || ha.degree(i) + ha.degree(j) != q) continue;
        E2TwoElement e;
        for (auto& c : e.components) c.dim = ha.dim();
        e.at(t) = HTensor::of(ha, Element::unit(i), Element::unit(j));
        cols.push_back(e2_coordinates(e, q));
        rows = std::max(rows, cols.back().support_end());
        cols_key.emplace_back(t, i * ha.dim() + j);
      }
  E2TwoElement out;
  for (auto& c : out.components) c.dim = ha.dim();
  if (coords.is_zero()) return out;
  auto sol = solve(Matrix::from_columns(rows, cols), coords);
  if (!sol) throw MismatchError("E2^{2,*} class is not spanned by H (x) H+ cocycles");
  for (const auto& [k, c] : sol->entries()) out.at(cols_key[k].first).v.add(cols_key[k].second, c);
  return out;
}

int d2_bound(const Algebra& h, const Element& a, const Element& b, const Element& c, const Element& d) {
  int mx = 0, sum = 0;
  for (const Element* e : {&a, &b, &c, &d}) {
    int q = h.degree_of(*e);
    mx = std::max(mx, q);
    sum += q;
  }
  return std::max(2 * mx + 4, sum + 2);
}

CrossCheck cross_check_d2(const Cohomology& h, const C4Engine& engine, const Element& a, const Element& b,
                          const Element& c, const Element& d) {
  const Algebra& ha = h.algebra();
  CrossCheck out;
  out.q = ha.degree_of(a) + ha.degree_of(b) + ha.degree_of(c) + ha.degree_of(d);
  out.formula = d2_star(h, a, b, c, d);
  out.formula_e2 = engine.e2_coordinates(out.formula.value, out.q - 1);
  out.zigzag_e2 = engine.d2({{{a, b, c, d}, Scalar(1)}}, out.q);
  if (!out.zigzag_e2) return out;
  out.zigzag = engine.decompose(*out.zigzag_e2, out.q - 1);
  out.exact = out.formula_e2 == *out.zigzag_e2;
  if (out.exact) {
    out.agree = true;
    return out;
  }
  const std::array<Element, 4> in{a, b, c, d};
  Echelon span;
  for (const auto& term : out.formula.terms)
    for (const auto& iota : term.bracket.indeterminacy) {
      E2TwoElement e;
      for (auto& comp : e.components) comp.dim = ha.dim();
      const Element& x = in[term.element];
      e.at(term.tag) = term.bracket_first ? HTensor::of(ha, iota, x) : HTensor::of(ha, x, iota);
      span.insert(engine.e2_coordinates(e, out.q - 1));
    }
  out.agree = span.contains(out.formula_e2 - *out.zigzag_e2);
  return out;
}

std::vector<Thm3Witness> thm3_detector(const Cohomology& h) {
  const Algebra& ha = h.algebra();
  Indecomposables q = indecomposables(ha);
  const auto& cand = q.basis;
  auto vanish = [&](std::size_t i, std::size_t j) {
    if (ha.product_overflows(i, j)) return false;
    return ha.product(i, j).is_zero();
  };
  std::vector<Thm3Witness> out;
  for (std::size_t a : cand)
    for (std::size_t b : cand)
      for (std::size_t c : cand)
        for (std::size_t d : cand) {
          if (!vanish(a, b) || !vanish(a, c) || !vanish(a, d) || !vanish(b, c) || !vanish(b, d) || !vanish(c, d))
            continue;
          D2Star v;
          try {
            v = d2_star_impl(h, q, {Element::unit(a), Element::unit(b), Element::unit(c), Element::unit(d)});
          } catch (const Overflow&) {
            continue;
          }
          if (obstruction_residual(v.value, ha)) out.push_back({{a, b, c, d}, std::move(v.value)});
        }
  return out;
}

std::vector<C4Engine::Quadruple> theorem4_element(const Algebra& h, const Element& x, const std::vector<Element>& L,
                                                  const std::vector<std::vector<Element>>& B,
                                                  const std::vector<Element>& C) {
  std::vector<C4Engine::Quadruple> u;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      if (L[i].is_zero() || B[i][j].is_zero() || C[j].is_zero()) continue;
      int a = h.degree_of(L[i]), b = h.degree_of(B[i][j]), c = h.degree_of(C[j]);
      u.push_back({{x, L[i], B[i][j], C[j]}, Scalar(1)});
      u.push_back({{x, C[j], B[i][j], L[i]}, -sgn(c * b + c * a + b * a)});
    }
  return u;
}

}  // namespace confseq
