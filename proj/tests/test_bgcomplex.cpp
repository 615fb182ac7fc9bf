#include <doctest.h>

#include <cmath>

#include "confseq/bgcomplex.hpp"
#include "confseq/catalog.hpp"

using namespace confseq;

namespace {

std::shared_ptr<const Algebra> load(const std::string& name, std::optional<int> truncate = std::nullopt) {
  return std::make_shared<const Algebra>(catalog(name, truncate));
}

int deg(const Algebra& a, std::size_t i) { return a.degree(i); }

/// Expands c * (prod at position pos) into a block vector of the target.
void add_product_term(SparseVector& out, const BGComplex& b, const Graph& g, std::vector<std::size_t> f,
                      std::size_t pos, const Element& prod, const Scalar& c) {
  for (const auto& [k, v] : prod.entries()) {
    f[pos] = k;
    auto hit = b.find(g.mask(), f);
    REQUIRE(hit.has_value());
    out.add(hit->second, c * v);
  }
}

Graph graph(int n, std::vector<Graph::Edge> e) { return Graph(n, std::move(e)); }

Matrix block_or_zero(const Matrix* m, std::size_t rows, std::size_t cols) { return m ? *m : Matrix(rows, cols); }

}  // namespace

TEST_CASE("E(3,A) horizontal differential on the discrete graph") {
  for (const char* name : {"t2", "s2xs2", "cp2"}) {
    auto a = load(name);
    auto e = build_Ebar(3, a);
    auto full = build_E(3, a);
    for (const auto* cx : {e.get(), full.get()}) {
      for (const auto& [pq, elems] : cx->basis) {
        if (pq.first != 0) continue;
        for (std::size_t idx = 0; idx < elems.size(); ++idx) {
          const auto& f = elems[idx].factors;
          std::size_t x = f[0], y = f[1], z = f[2];
          SparseVector expect;
          add_product_term(expect, *cx, graph(3, {{1, 2}}), {x, z}, 0, a->product(x, y), Scalar(1));
          add_product_term(expect, *cx, graph(3, {{2, 3}}), {x, y}, 1, a->product(y, z), Scalar(1));
          add_product_term(expect, *cx, graph(3, {{1, 3}}), {x, y}, 0, a->product(x, z),
                           sign_scalar(deg(*a, y) * deg(*a, z)));
          CHECK(cx->horizontal(0, pq.second)->apply(SparseVector::unit(idx)) == expect);
        }
      }
    }
  }
}

TEST_CASE("C(3,A) horizontal differential") {
  for (const char* name : {"t2", "s2xs2", "cp2"}) {
    auto a = load(name);
    auto c = build_C(3, a);
    for (const auto& [pq, elems] : c->basis) {
      if (pq.first != 0) continue;
      for (std::size_t idx = 0; idx < elems.size(); ++idx) {
        const auto& f = elems[idx].factors;
        std::size_t x = f[0], y = f[1], z = f[2];
        SparseVector expect;
        Graph g23 = graph(3, {{2, 3}});
        add_product_term(expect, *c, g23, {x, y}, 1, a->product(y, z), Scalar(1));
        add_product_term(expect, *c, g23, {x, z}, 0, a->product(x, y), Scalar(-1));
        add_product_term(expect, *c, g23, {x, y}, 0, a->product(x, z), -sign_scalar(deg(*a, y) * deg(*a, z)));
        CHECK(c->horizontal(0, pq.second)->apply(SparseVector::unit(idx)) == expect);
      }
    }
  }
}

TEST_CASE("C(4,A): (a(x)b(x)c)e24 maps to -Delta(a,b,c) e23e24") {
  auto a = load("t2");
  auto c = build_C(4, a);
  Graph g24 = graph(4, {{2, 4}});
  Graph target = graph(4, {{2, 3}, {2, 4}});
  int checked = 0;
  for (const auto& [pq, elems] : c->basis) {
    if (pq.first != 1) continue;
    for (std::size_t idx = 0; idx < elems.size(); ++idx) {
      if (c->graphs[elems[idx].graph].mask() != g24.mask()) continue;
      const auto& f = elems[idx].factors;
      std::size_t x = f[0], y = f[1], z = f[2];
      SparseVector delta;
      add_product_term(delta, *c, target, {x, y}, 1, a->product(y, z), Scalar(1));
      add_product_term(delta, *c, target, {x, z}, 0, a->product(x, y), Scalar(-1));
      add_product_term(delta, *c, target, {x, y}, 0, a->product(x, z), -sign_scalar(deg(*a, y) * deg(*a, z)));
      CHECK(c->multiply_edge(1, pq.second, SparseVector::unit(idx), 2, 3) == delta.scaled(Scalar(-1)));
      ++checked;
    }
  }
  CHECK(checked == 36);
}

TEST_CASE("C(4,A): column differentials on every generator") {
  auto a = load("t2");
  auto c = build_C(4, a);
  Graph e23 = graph(4, {{2, 3}}), e24 = graph(4, {{2, 4}}), e34 = graph(4, {{3, 4}});
  Graph t24 = graph(4, {{2, 3}, {2, 4}}), t34 = graph(4, {{2, 3}, {3, 4}});
  auto sg = [&](std::size_t u, std::size_t v) { return sign_scalar(deg(*a, u) * deg(*a, v)); };
  auto delta = [&](SparseVector& out, const Graph& g, std::size_t x, std::size_t y, std::size_t z, const Scalar& s) {
    add_product_term(out, *c, g, {x, y}, 1, a->product(y, z), s);
    add_product_term(out, *c, g, {x, z}, 0, a->product(x, y), -s);
    add_product_term(out, *c, g, {x, y}, 0, a->product(x, z), -s * sg(y, z));
  };
  int col0 = 0, col1 = 0;
  for (const auto& [pq, elems] : c->basis) {
    for (std::size_t idx = 0; idx < elems.size(); ++idx) {
      const auto& f = elems[idx].factors;
      const Graph& g = c->graphs[elems[idx].graph];
      SparseVector expect;
      if (pq.first == 0) {
        std::size_t x = f[0], y = f[1], z = f[2], w = f[3];
        add_product_term(expect, *c, e23, {x, y, w}, 1, a->product(y, z), Scalar(1));
        add_product_term(expect, *c, e23, {x, z, w}, 0, a->product(x, y), Scalar(-1));
        add_product_term(expect, *c, e23, {x, y, w}, 0, a->product(x, z), -sg(y, z));
        add_product_term(expect, *c, e34, {x, y, z}, 2, a->product(z, w), Scalar(1));
        add_product_term(expect, *c, e34, {x, y, w}, 0, a->product(x, z), -sg(y, z));
        add_product_term(expect, *c, e34, {x, y, z}, 0, a->product(x, w), -sign_scalar(deg(*a, w) * (deg(*a, y) + deg(*a, z))));
        add_product_term(expect, *c, e24, {x, y, z}, 1, a->product(y, w), sg(w, z));
        add_product_term(expect, *c, e24, {x, w, z}, 0, a->product(x, y), -sg(w, z));
        add_product_term(expect, *c, e24, {x, y, z}, 0, a->product(x, w), -sign_scalar(deg(*a, w) * (deg(*a, y) + deg(*a, z))));
        ++col0;
      } else if (pq.first == 1) {
        std::size_t x = f[0], y = f[1], z = f[2];
        if (g.mask() == e23.mask()) {
          delta(expect, t34, x, y, z, Scalar(1));
          delta(expect, t24, x, y, z, Scalar(1));
        } else if (g.mask() == e24.mask()) {
          delta(expect, t24, x, y, z, Scalar(-1));
        } else {
          delta(expect, t34, x, y, z, Scalar(-1));
        }
        ++col1;
      } else {
        continue;
      }
      const Matrix* d = c->horizontal(pq.first, pq.second);
      REQUIRE(d != nullptr);
      CHECK(d->apply(SparseVector::unit(idx)) == expect);
    }
  }
  CHECK(col0 == 108);
  CHECK(col1 == 108);
}

TEST_CASE("D squares to zero block-wise") {
  for (const char* name : {"point", "s2", "s3", "t2", "cp2", "s2xs2"}) {
    auto a = load(name);
    for (int n = 1; n <= 4; ++n) {
      if (n == 4 && std::string(name) == "s2xs2") continue;
      for (auto b : {build_E(n, a), build_Ebar(n, a), build_J(n, a), build_C(n, a)}) {
        INFO(b->name);
        CHECK(b->check_d_squared() == "");
      }
    }
  }
  auto stb = load("stb_s2xs2");
  for (auto b : {build_Ebar(3, stb, 8), build_C(3, stb, 10), build_C(4, stb, 9)}) {
    INFO(b->name);
    CHECK(b->check_d_squared() == "");
  }
}

TEST_CASE("basis counts") {
  for (const char* name : {"s2", "t2", "cp2"}) {
    auto a = load(name);
    for (int n = 1; n <= 4; ++n) {
      auto e = build_Ebar(n, a);
      for (int p = 0; p < n; ++p) {
        std::size_t expect = 0;
        for (const auto& g : enumerate(n, Family::NoDupTarget))
          if (static_cast<int>(g.edge_count()) == p) expect += static_cast<std::size_t>(std::pow(a->dim(), g.l()));
        std::size_t got = 0;
        for (int q = 0; q <= e->q_max; ++q) got += e->dim(p, q);
        CHECK(got == expect);
      }
    }
    auto c2 = build_C(2, a);
    std::size_t total = 0;
    for (const auto& [pq, n] : c2->dims) {
      if (pq.first > 0) CHECK(n == 0);
      total += n;
    }
    CHECK(total == a->dim() * (a->dim() - 1));
  }
}

TEST_CASE("degenerate cases") {
  auto pt = load("point");
  for (int n = 2; n <= 4; ++n) {
    auto c = build_C(n, pt);
    std::size_t total = 0;
    for (const auto& [pq, d] : c->dims) total += d;
    CHECK(total == 0);
  }
  auto e = build_E(3, pt);
  for (const auto& [pq, d] : e->dims) CHECK((pq.second == 0 || d == 0));
  auto s2 = load("s2");
  std::size_t j2 = 0;
  auto j = build_J(2, s2);
  for (const auto& [pq, d] : j->dims) j2 += d;
  CHECK(j2 == 0);
  CHECK(build_J(3, s2)->graphs.size() == 2);
  CHECK(build_C(4, s2)->p_max == 2);
}

TEST_CASE("gamma_2 and phi-bar") {
  auto t2 = load("t2");
  std::size_t a = t2->find("a").value(), b = t2->find("b").value(), ab = t2->find("ab").value();
  auto g = gamma(*t2, {a, b});
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == std::vector<std::size_t>{a, b});
  CHECK(g[0].second == Scalar(1));
  CHECK(g[1].first == std::vector<std::size_t>{ab, t2->unit()});
  CHECK(g[1].second == Scalar(-1));

  for (const char* name : {"s2", "t2", "cp2"}) {
    auto alg = load(name);
    for (int n = 2; n <= 4; ++n) {
      auto c = build_C(n, alg);
      auto eb = build_Ebar(n, alg);
      auto phi = phi_bar(*c, *eb);
      for (const auto& [pq, m] : phi) {
        auto [p, q] = pq;
        INFO(std::string(name), " n=", n, " (", p, ",", q, ")");
        // Chain map: D phi = phi D, horizontally and vertically.
        std::size_t cols = c->dim(p, q);
        Matrix lhs_h = block_or_zero(eb->horizontal(p, q), eb->dim(p + 1, q), eb->dim(p, q)) * m;
        Matrix rhs_h = phi.count({p + 1, q}) ? phi.at({p + 1, q}) * block_or_zero(c->horizontal(p, q), c->dim(p + 1, q), cols)
                                             : Matrix(eb->dim(p + 1, q), cols);
        CHECK(lhs_h == rhs_h);
        if (q < c->q_max) {
          Matrix lhs_v = block_or_zero(eb->vertical(p, q), eb->dim(p, q + 1), eb->dim(p, q)) * m;
          Matrix rhs_v = phi.count({p, q + 1}) ? phi.at({p, q + 1}) * block_or_zero(c->vertical(p, q), c->dim(p, q + 1), cols)
                                               : Matrix(eb->dim(p, q + 1), cols);
          CHECK(lhs_v == rhs_v);
        }
        CHECK(rank(m) == cols);
        // Image times e_1r vanishes.
        for (std::size_t k = 0; k < cols; ++k) {
          SparseVector img = m.apply(SparseVector::unit(k));
          for (int r = 2; r <= n; ++r) CHECK(eb->multiply_edge(p, q, img, 1, r).is_zero());
        }
      }
    }
  }
}
