#include <doctest.h>

#include <map>

#include "confseq/catalog.hpp"
#include "confseq/reports.hpp"

using namespace confseq;

namespace {

std::shared_ptr<const Algebra> load(const std::string& name) { return std::make_shared<const Algebra>(catalog(name)); }

// Omega^1 of a free graded-commutative algebra modulo relations, by hand:
// H-module on the generators dg, cut by d(relation).
std::map<int, std::size_t> hand_kaehler(const std::string& name) {
  if (name == "s2") return {{2, 1}};                    // w^2 = 0 gives 2w dw = 0
  if (name == "s3") return {{3, 1}, {6, 1}};            // odd w: dw, w dw free
  if (name == "cp2") return {{2, 1}, {4, 1}};           // h^3 = 0 gives 3h^2 dh = 0
  if (name == "t2") return {{1, 2}, {2, 4}, {3, 2}};    // Lambda(a,b) (x) <da, db>
  return {};
}

std::map<std::string, long long> row_of(const CheckReport& r, const std::string& key, long long value) {
  for (const auto& b : r.blocks)
    if (b.contains(key) && b[key] == value) {
      std::map<std::string, long long> out;
      for (auto it = b.begin(); it != b.end(); ++it)
        if (it->is_number_integer()) out[it.key()] = it->get<long long>();
      return out;
    }
  return {};
}

}  // namespace

TEST_CASE("prop1 passes for spheres and the torus") {
  for (std::string a : {"s2", "t2"})
    for (int n : {2, 3}) {
      auto r = check_prop1(load(a), n);
      INFO(a, " n=", n);
      CHECK(r.pass);
      for (const auto& b : r.blocks) {
        if (!b.contains("J")) continue;
        CHECK(b["J"] == 0);
        CHECK(b["E"] == b["Ebar"]);
      }
    }
}

TEST_CASE("prop3 compares C and Ebar totals") {
  auto r = check_prop3(load("s2"), 3);
  CHECK(r.pass);
  std::size_t compared = 0;
  for (const auto& b : r.blocks)
    if (b.contains("C")) {
      CHECK(b["C"] == b["Ebar"]);
      ++compared;
    }
  CHECK(compared > 0);
}

TEST_CASE("thm2 collapses at E2 on both sides") {
  for (std::string a : {"s2", "s3", "t2", "cp2"}) {
    auto r = check_thm2(load(a), 3);
    INFO(a);
    CHECK(r.pass);
    for (const auto& b : r.blocks)
      if (b.contains("collapse_page")) CHECK(b["collapse_page"].get<int>() <= 2);
  }
}

TEST_CASE("Kaehler differentials agree with the cokernel of d1 and with a hand count") {
  for (std::string name : {"s2", "s3", "cp2", "t2"}) {
    INFO(name);
    auto h = load(name);
    auto k = kaehler_dims(*h);
    auto s = c3_slices(h);
    auto hand = hand_kaehler(name);
    for (std::size_t q = 0; q < std::max(k.size(), s.cokernel.size()); ++q) {
      std::size_t kq = q < k.size() ? k[q] : 0, cq = q < s.cokernel.size() ? s.cokernel[q] : 0;
      CHECK(kq == cq);
      CHECK(kq == (hand.count(q) ? hand[q] : 0));
    }
  }
}

TEST_CASE("prop5 on the torus reproduces the Betti numbers of F(T^2,3)") {
  auto r = check_prop5(load("t2"));
  CHECK(r.pass);
  const std::vector<long long> betti{1, 6, 14, 14, 5, 0, 0};
  for (int k = 0; k < 7; ++k) CHECK(row_of(r, "k", k)["H_F"] == betti[k]);
}

TEST_CASE("prop6 doubles the Omega^1 slices") {
  for (std::string name : {"point", "s2", "cp2", "t2"}) {
    INFO(name);
    auto r = check_prop6(load(name));
    CHECK(r.pass);
    auto hand = hand_kaehler(name);
    for (const auto& b : r.blocks) {
      if (!b.contains("E2_2q")) continue;
      int q = b["q"];
      CHECK(b["E2_2q"].get<std::size_t>() == 2 * (hand.count(q) ? hand[q] : 0));
    }
  }
}

TEST_CASE("prop5 and prop6 refuse models with a differential") {
  auto stb = load("stb_s2xs2");
  CHECK_THROWS_AS(check_prop5(stb), PreconditionError);
  CHECK_THROWS_AS(check_prop6(stb), PreconditionError);
}

TEST_CASE("theorem1 report passes with block-constant signs") {
  for (std::string a : {"s2", "t2"}) {
    auto r = check_theorem1(load(a), 2);
    INFO(a);
    CHECK(r.pass);
    CHECK(!r.blocks.empty());
  }
}

TEST_CASE("checks run over a prime field") {
  auto s2 = std::make_shared<const Algebra>(change_field(catalog("s2"), Field::parse("F5")));
  auto t2 = std::make_shared<const Algebra>(change_field(catalog("t2"), Field::parse("F7")));
  auto r1 = check_prop1(s2, 3);
  CHECK(r1.field == "F5");
  CHECK(r1.pass);
  CHECK(check_thm2(t2, 3).pass);
  CHECK(check_prop6(s2).pass);
}

TEST_CASE("reports are deterministic and omit durations without timing") {
  auto a = check_prop5(load("cp2")).to_json().dump();
  auto b = check_prop5(load("cp2")).to_json().dump();
  CHECK(a == b);
  auto j = check_prop1(load("s2"), 2).to_json();
  CHECK(j["duration_ms"] == 0);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["inputs"]["algebra"] == "s2");
  CHECK(check_prop1(load("s2"), 2).to_json(true)["duration_ms"].get<double>() >= 0);
}

TEST_CASE("run_check dispatches every name") {
  auto s2 = load("s2");
  for (const auto& name : check_names()) CHECK(run_check(name, s2, 2).check == name);
  CHECK_THROWS_AS(run_check("prop9", s2, 2), std::invalid_argument);
}
