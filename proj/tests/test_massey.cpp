#include <doctest.h>

#include "confseq/catalog.hpp"
#include "confseq/massey.hpp"

using namespace confseq;

namespace {

struct Stb {
  std::shared_ptr<const Algebra> model = std::make_shared<const Algebra>(catalog("stb_s2xs2"));
  Cohomology h{model, 11};
  Element cls(const std::string& label) const { return Element::unit(*h.algebra().find(label)); }
  /// Class of a model element given as (label, coefficient) terms.
  Element class_of(std::initializer_list<std::pair<const char*, int>> terms) const {
    Element e;
    for (const auto& [label, c] : terms) e.add(*model->find(label), Scalar(c));
    return h.class_of(e);
  }
};

Cohomology formal(const std::string& name) {
  auto a = std::make_shared<const Algebra>(catalog(name));
  return Cohomology(a, a->max_degree());
}

}  // namespace

TEST_CASE("triple Massey products of the tangent-bundle model") {
  Stb s;
  Element x = s.cls("x"), y = s.cls("y");
  Element txuy = s.class_of({{"tx", 1}, {"uy", -1}});
  Element tyvx = s.class_of({{"ty", 1}, {"vx", -1}});

  auto xxy = triple_massey(s.h, x, x, y);
  CHECK(xxy.degree == 5);
  CHECK(s.model->d(xxy.representative).is_zero());
  // d u = x^2 and d t = xy give x_1 y - x t = u y - t x.
  CHECK(s.model->d(xxy.x[0]) == s.model->multiply(s.h.lift(x), s.h.lift(x)));
  CHECK(s.model->d(xxy.y[0]) == s.model->multiply(s.h.lift(x), s.h.lift(y)));
  CHECK(xxy.contains(txuy.scaled(Scalar(-1))));
  CHECK(xxy.indeterminacy.empty());
  CHECK_FALSE(xxy.residual.is_zero());

  auto xyy = triple_massey(s.h, x, y, y);
  CHECK(s.model->d(xyy.representative).is_zero());
  CHECK(xyy.contains(tyvx));
  CHECK(xyy.cls == tyvx);
}

TEST_CASE("matrix Massey products") {
  Stb s;
  Element x = s.cls("x"), y = s.cls("y");
  SUBCASE("1x1 matrices reduce to the triple product") {
    auto m = matrix_massey(s.h, {x}, {{x}}, {y});
    auto t = triple_massey(s.h, x, x, y);
    CHECK(m.cls == t.cls);
    CHECK(m.representative == t.representative);
  }
  SUBCASE("row (x), matrix (x y), column (y; y)") {
    auto m = matrix_massey(s.h, {x}, {{x, y}}, {y, y});
    CHECK(s.model->d(m.representative).is_zero());
    // x_1 = u, x_2 = t, y_1 = t + v: u y + t y - x (t + v).
    Element oracle = s.class_of({{"uy", 1}, {"ty", 1}, {"tx", -1}, {"vx", -1}});
    CHECK(m.contains(oracle));
  }
  SUBCASE("an unsolvable system is not defined") {
    auto h = formal("t2");
    Element a = Element::unit(*h.algebra().find("a")), b = Element::unit(*h.algebra().find("b"));
    CHECK_THROWS_AS(triple_massey(h, a, b, a), NotDefined);
  }
}

TEST_CASE("Massey products in formal algebras") {
  auto h = formal("s2");
  Element w = Element::unit(*h.algebra().find("w"));
  auto m = triple_massey(h, w, w, w);
  CHECK(m.cls.is_zero());
  CHECK(m.residual.is_zero());
}

TEST_CASE("residual class does not depend on the defining system") {
  auto h = formal("t3");
  Element a1 = Element::unit(*h.algebra().find("a1"));
  auto base = triple_massey(h, a1, a1, a1);
  CHECK_FALSE(base.indeterminacy.empty());
  bool moved = false;
  for (unsigned seed = 1; seed <= 8; ++seed) {
    auto p = triple_massey(h, a1, a1, a1, seed);
    CHECK(h.model().d(p.representative).is_zero());
    CHECK(p.residual == base.residual);
    CHECK(base.contains(p.cls));
    moved = moved || !(p.cls == base.cls);
  }
  CHECK(moved);

  Stb s;
  auto ref = triple_massey(s.h, s.cls("x"), s.cls("x"), s.cls("y"));
  for (unsigned seed = 1; seed <= 4; ++seed)
    CHECK(triple_massey(s.h, s.cls("x"), s.cls("x"), s.cls("y"), seed).residual == ref.residual);
}

TEST_CASE("psi and tau on Q (x) Q") {
  Stb s;
  const Algebra& h = s.h.algebra();
  Indecomposables q = indecomposables(h);
  REQUIRE(q.dim() == 4);
  const std::size_t d = q.dim();
  SparseVector z;
  z.add(0 * d + 2, Scalar(3));
  z.add(1 * d + 1, Scalar(-2));
  z.add(3 * d + 2, Scalar(5));
  SparseVector sym = z + tau(h, q, z);
  SparseVector anti = z - tau(h, q, z);
  CHECK(tau(h, q, tau(h, q, z)) == z);
  CHECK(psi(h, q, sym) == sym.scaled(Scalar(2)));
  CHECK(psi(h, q, anti).is_zero());
  CHECK(psi(h, q, SparseVector{}).is_zero());
}

TEST_CASE("d2 of [x](x)[x](x)[y](x)[y] in the tangent-bundle model") {
  Stb s;
  const Algebra& h = s.h.algebra();
  Element x = s.cls("x"), y = s.cls("y");
  Element txuy = s.class_of({{"tx", 1}, {"uy", -1}});
  Element tyvx = s.class_of({{"ty", 1}, {"vx", -1}});

  HTensor expr = HTensor::of(h, x, tyvx);
  expr.add(HTensor::of(h, tyvx, x), Scalar(-1));
  expr.add(HTensor::of(h, txuy, y), Scalar(-2));

  auto f = d2_star(s.h, x, x, y, y);
  CHECK(f.value.at(Tag::E23E34) == expr);
  CHECK(f.value.at(Tag::E23E24).is_zero());
  CHECK(f.terms.size() == 8);

  C4Engine engine(s.h, d2_bound(h, x, x, y, y));
  auto cc = cross_check_d2(s.h, engine, x, x, y, y);
  REQUIRE(cc.zigzag_e2.has_value());
  CHECK(cc.exact);
  CHECK(cc.agree);
  CHECK(engine.e2_coordinates(cc.zigzag, 7) == *cc.zigzag_e2);

  // The same expression on the other tag is a different E2 class.
  E2TwoElement swapped;
  for (auto& c : swapped.components) c.dim = h.dim();
  swapped.at(Tag::E23E24) = expr;
  CHECK_FALSE(engine.e2_coordinates(swapped, 7) == *cc.zigzag_e2);

  E2TwoElement v = f.value;
  CHECK(obstruction_residual(v, h));
  CHECK(v.residual[static_cast<int>(Tag::E23E34)]->unit_part.is_zero());
  CHECK_FALSE(v.residual[static_cast<int>(Tag::E23E34)]->sym_part.is_zero());
  CHECK(v.residual[static_cast<int>(Tag::E23E24)]->is_zero());

  E2TwoElement zero;
  for (auto& c : zero.components) c.dim = h.dim();
  CHECK_FALSE(obstruction_residual(zero, h));
}

TEST_CASE("d2_star rejects quadruples with a nonzero product") {
  auto h = formal("s2xs2");
  Element a = Element::unit(*h.algebra().find("a")), b = Element::unit(*h.algebra().find("b"));
  CHECK_THROWS_AS(d2_star(h, a, b, a, a), PreconditionError);
}

TEST_CASE("d2 obstruction detector on the tangent-bundle model") {
  Stb s;
  auto w = thm3_detector(s.h);
  std::size_t x = *s.h.algebra().find("x"), y = *s.h.algebra().find("y");
  bool found = false;
  for (const auto& wi : w) found = found || wi.classes == std::array<std::size_t, 4>{x, x, y, y};
  CHECK(found);
}

TEST_CASE("d2 of the Massey-lifted element on the connected sum with S2 x S5") {
  auto model = std::make_shared<const Algebra>(catalog("stb#s2xs5"));
  Cohomology h(model, model->max_degree());
  const Algebra& ha = h.algebra();
  Element x = Element::unit(*ha.find("x")), y = Element::unit(*ha.find("y"));
  Element s2 = Element::unit(*ha.find("x'"));

  auto m = matrix_massey(h, {x}, {{x}}, {y});
  CHECK_FALSE(m.residual.is_zero());
  auto u = theorem4_element(ha, s2, {x}, {{x}}, {y});
  C4Engine engine(h, 10);
  auto d2 = engine.d2(u, 8);
  REQUIRE(d2.has_value());
  E2TwoElement expect;
  for (auto& c : expect.components) c.dim = ha.dim();
  expect.at(Tag::E23E24) = HTensor::of(ha, s2, m.cls);
  expect.at(Tag::E23E34) = HTensor::of(ha, s2, m.cls.scaled(Scalar(2)));
  CHECK(engine.e2_coordinates(expect, 7) == *d2);
  CHECK_FALSE(d2->is_zero());

  auto w = thm3_detector(h);
  std::size_t xp = *ha.find("x'");
  bool with_s2 = false;
  for (const auto& wi : w)
    for (std::size_t c : wi.classes) with_s2 = with_s2 || c == xp;
  CHECK(with_s2);
}

TEST_CASE("formal algebras: no witnesses, zero d2 and collapse at E2") {
  for (const auto& name : formal_catalog()) {
    INFO(name);
    auto h = formal(name);
    CHECK(thm3_detector(h).empty());
    auto c = build_C(4, h.model_ptr());
    CHECK(collapse_page(*c, c->p_max + 1) <= 2);
  }
  auto h = formal("s2");
  Element w = Element::unit(*h.algebra().find("w"));
  C4Engine engine(h, d2_bound(h.algebra(), w, w, w, w));
  auto cc = cross_check_d2(h, engine, w, w, w, w);
  REQUIRE(cc.zigzag_e2.has_value());
  CHECK(cc.zigzag_e2->is_zero());
  CHECK(cc.formula_e2.is_zero());
  CHECK(cc.agree);
}
