#include <doctest.h>

#include "confseq/catalog.hpp"
#include "confseq/duality.hpp"

using namespace confseq;

namespace {

std::shared_ptr<const Algebra> load(const std::string& name) { return std::make_shared<const Algebra>(catalog(name)); }

}  // namespace

TEST_CASE("unit tensor pairs with the top tensor") {
  auto s2 = load("s2");
  auto t = build_pairing(2, s2);
  std::size_t one = s2->unit(), w = s2->find("w").value();
  CTBasisElement z{{one, one}, 0};
  BGBasisElement top{0, {w, w}};
  CHECK(t.pair_free(z, top) == Scalar(1));
}

TEST_CASE("x-monomials pair only with the same edge set") {
  auto s2 = load("s2");
  auto t = build_pairing(3, s2);
  std::size_t one = s2->unit(), w = s2->find("w").value();
  std::size_t x12 = 0, e13 = 0;
  for (std::size_t k = 0; k < t.ct->monomials.size(); ++k)
    if (t.ct->monomials[k] == Graph(3, {{1, 2}})) x12 = k;
  for (std::size_t k = 0; k < t.ebar->graphs.size(); ++k)
    if (t.ebar->graphs[k] == Graph(3, {{1, 3}})) e13 = k;
  CTBasisElement z{{one, one, one}, x12};
  CHECK(t.pair_free(z, BGBasisElement{e13, {w, w}}).is_zero());
}

TEST_CASE("perfect pairing, adjoint differentials and dual E2 on small formal algebras") {
  for (const char* name : {"s2", "s3", "t2", "cp2"}) {
    for (int n = 2; n <= 3; ++n) {
      INFO(std::string(name), " n=", n);
      auto t = build_pairing(n, load(name));
      auto rep = theorem1_check(t);
      for (const auto& f : rep.failures) INFO(f);
      CHECK(rep.perfect);
      CHECK(rep.adjoint);
      CHECK(rep.dimensions_match);
      if (!rep.failures.empty()) MESSAGE(rep.failures.front());
    }
  }
}

TEST_CASE("n=2 sphere: every matched block is invertible and E2 totals agree") {
  auto t = build_pairing(2, load("s2"));
  for (const auto& [b, g] : t.blocks) {
    CHECK(g.rows() == g.cols());
    CHECK(rank(g) == g.rows());
  }
  auto rep = theorem1_check(t);
  std::size_t ct = 0, bg = 0;
  for (const auto& [b, d] : rep.e2) {
    ct += d.first;
    bg += d.second;
  }
  CHECK(ct == 2);
  CHECK(bg == 2);
}

TEST_CASE("degenerate pairings are rejected") {
  CHECK_THROWS(build_pairing(2, load("stb_s2xs2")));
  Algebra a("degenerate", Field::rationals(), {{"1", 0}, {"a", 2}, {"b", 2}, {"w", 4}});
  a.set_unit(0);
  a.set_product(1, 1, Element::unit(3));
  a.set_product(1, 2, Element{});
  a.set_product(2, 2, Element{});
  for (std::size_t i = 1; i < 4; ++i) a.set_product(i, 3, Element{});
  a.complete();
  a.set_top(3);
  CHECK_THROWS_AS(build_pairing(2, std::make_shared<const Algebra>(a)), DegeneratePairing);
}
