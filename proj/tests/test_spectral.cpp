#include <doctest.h>

#include "confseq/bgcomplex.hpp"
#include "confseq/catalog.hpp"
#include "confseq/spectral.hpp"

using namespace confseq;

namespace {

std::shared_ptr<const Algebra> load(const std::string& name, std::optional<int> truncate = std::nullopt) {
  return std::make_shared<const Algebra>(catalog(name, truncate));
}

std::size_t rank_or_zero(const Matrix* m) { return m ? rank(*m) : 0; }

/// E_1 from the vertical blocks alone.
std::size_t vertical_homology(const Bicomplex& b, int p, int q) {
  return b.dim(p, q) - rank_or_zero(b.vertical(p, q)) - (q > 0 ? rank_or_zero(b.vertical(p, q - 1)) : 0);
}

}  // namespace

TEST_CASE("total cohomology of Ebar(2, S^m) is the kernel of multiplication") {
  for (int m : {2, 3, 5}) {
    auto s = load("s" + std::to_string(m));
    auto e = build_Ebar(2, s);
    auto h = total_cohomology(*e);
    for (int k = 0; k < static_cast<int>(h.size()); ++k) CHECK(h[k] == ((k == m || k == 2 * m) ? 1u : 0u));
  }
}

TEST_CASE("zero complex") {
  auto c = build_C(3, load("point"));
  for (auto d : total_cohomology(*c)) CHECK(d == 0);
  CHECK(collapse_page(*c, 4) == 1);
}

TEST_CASE("page invariants") {
  for (const char* name : {"s2", "s3", "t2", "cp2", "s2xs2"}) {
    auto a = load(name);
    for (int n = 2; n <= 3; ++n) {
      for (auto b : {build_Ebar(n, a), build_C(n, a), build_E(n, a)}) {
        INFO(b->name);
        SpectralSequence ss(*b);
        auto ps = pages(*b, b->p_max + 1);
        for (int p = 0; p <= b->p_max; ++p)
          for (int q = 0; q <= b->q_max; ++q) {
            CHECK(ps[0].dim(p, q) == b->dim(p, q));
            if (p + q <= b->total_max) CHECK(ps[1].dim(p, q) == vertical_homology(*b, p, q));
          }
        for (std::size_t r = 0; r + 1 < ps.size(); ++r) {
          const Page& pg = ps[r];
          const int rr = static_cast<int>(r);
          long euler_prev = 0, euler_next = 0;
          for (const auto& [pq, m] : pg.d) {
            auto [p, q] = pq;
            auto tgt = pg.d.find({p + rr, q - rr + 1});
            if (tgt != pg.d.end() && tgt->second.cols() == m.rows()) CHECK((tgt->second * m).is_zero());
          }
          for (const auto& [pq, dim] : pg.dims) {
            auto [p, q] = pq;
            if (p + q >= b->total_max) continue;
            std::size_t out_rank = pg.d.count(pq) ? rank(pg.d.at(pq)) : 0;
            std::size_t in_rank = 0;
            if (auto it = pg.d.find({p - rr, q + rr - 1}); it != pg.d.end()) in_rank = rank(it->second);
            CHECK(ps[r + 1].dim(p, q) == dim - out_rank - in_rank);
          }
          for (int k = 0; k <= b->total_max; ++k) {
            long sign = k % 2 ? -1 : 1;
            euler_prev += sign * static_cast<long>(pg.total(k));
            euler_next += sign * static_cast<long>(ps[r + 1].total(k));
          }
          if (b->total_max == b->q_max + b->p_max) CHECK(euler_prev == euler_next);
        }
        const Page& inf = ps.back();
        for (int k = 0; k <= b->total_max; ++k) CHECK(inf.total(k) == ss.total_cohomology(k));
      }
    }
  }
}

TEST_CASE("E, Ebar and C have the same total cohomology and J is acyclic") {
  for (const char* name : {"s2", "s3", "t2", "cp2", "s2xs2"}) {
    auto a = load(name);
    for (int n = 1; n <= 4; ++n) {
      if (n == 4 && std::string(name) == "s2xs2") continue;
      INFO(std::string(name), " n=", n);
      auto he = total_cohomology(*build_E(n, a));
      auto hb = total_cohomology(*build_Ebar(n, a));
      auto hc = total_cohomology(*build_C(n, a));
      hb.resize(he.size(), 0);
      hc.resize(he.size(), 0);
      CHECK(he == hb);
      CHECK(hc == hb);
      for (auto d : total_cohomology(*build_J(n, a))) CHECK(d == 0);
    }
  }
}

TEST_CASE("truncated model: C and Ebar agree in the computed range") {
  auto stb = load("stb_s2xs2");
  auto hc = total_cohomology(*build_C(3, stb, 9));
  auto hb = total_cohomology(*build_Ebar(3, stb, 9));
  REQUIRE(hc.size() == hb.size());
  CHECK(hc == hb);
}

TEST_CASE("collapse pages") {
  for (const char* name : {"s2", "t2", "cp2", "s2xs2"}) {
    auto a = load(name);
    CHECK(collapse_page(*build_C(2, a), 4) == 1);
    CHECK(collapse_page(*build_C(3, a), 4) <= 2);
  }
}
