#include "confseq/catalog.hpp"

#include <cctype>
#include <stdexcept>

namespace confseq {

namespace {

Algebra sphere(int m) {
  if (m < 1) throw PreconditionError("sphere dimension must be positive");
  Algebra a("s" + std::to_string(m), Field::rationals(), {{"1", 0}, {"w", m}});
  a.set_unit(0);
  a.set_product(1, 1, Element{});
  a.set_top(1);
  a.complete();
  return a;
}

Algebra torus(int k) {
  if (k < 1 || k > 6) throw PreconditionError("torus rank must lie in 1..6");
  std::vector<std::string> names;
  for (int g = 0; g < k; ++g) names.push_back(k == 2 ? std::string(1, static_cast<char>('a' + g)) : "a" + std::to_string(g + 1));
  std::vector<BasisElement> basis;
  std::vector<unsigned> masks;
  for (int deg = 0; deg <= k; ++deg)
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      if (__builtin_popcount(mask) != deg) continue;
      std::string label;
      for (int g = 0; g < k; ++g)
        if (mask & (1u << g)) label += names[g];
      basis.push_back({label.empty() ? "1" : label, deg});
      masks.push_back(mask);
    }
  Algebra a("t" + std::to_string(k), Field::rationals(), basis);
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (masks[i] & masks[j]) {
        a.set_product(i, j, Element{});
        continue;
      }
      int inversions = 0;
      for (int g = 0; g < k; ++g)
        if (masks[j] & (1u << g))
          for (int h = g + 1; h < k; ++h)
            if (masks[i] & (1u << h)) ++inversions;
      unsigned target = masks[i] | masks[j];
      for (std::size_t t = 0; t < masks.size(); ++t)
        if (masks[t] == target) a.set_product(i, j, Element::unit(t, Scalar(inversions % 2 ? -1 : 1)));
    }
  a.set_unit(0);
  a.set_top(masks.size() - 1);
  return a;
}

Algebra cp2() {
  Algebra a("cp2", Field::rationals(), {{"1", 0}, {"h", 2}, {"h2", 4}});
  a.set_unit(0);
  a.set_product(1, 1, Element::unit(2));
  a.set_product(1, 2, Element{});
  a.set_product(2, 2, Element{});
  a.set_top(2);
  a.complete();
  return a;
}

Algebra s2xs2() {
  Algebra a("s2xs2", Field::rationals(), {{"1", 0}, {"a", 2}, {"b", 2}, {"ab", 4}});
  a.set_unit(0);
  a.set_product(1, 1, Element{});
  a.set_product(2, 2, Element{});
  a.set_product(1, 2, Element::unit(3));
  for (std::size_t i = 1; i < 4; ++i) a.set_product(i, 3, Element{});
  a.set_top(3);
  a.complete();
  return a;
}

Algebra point() {
  Algebra a("point", Field::rationals(), {{"1", 0}});
  a.set_unit(0);
  a.set_top(0);
  a.complete();
  return a;
}

Algebra stb(int bound) {
  // generators x, y (degree 2), u, v, t (degree 3); du = x^2, dv = y^2, dt = xy
  std::vector<Generator> gens{{"x", 2}, {"y", 2}, {"u", 3}, {"v", 3}, {"t", 3}};
  std::vector<WordPolynomial> d{{}, {}, {{Scalar(1), {0, 0}}}, {{Scalar(1), {1, 1}}}, {{Scalar(1), {0, 1}}}};
  return truncated_free_cdga("stb_s2xs2", Field::rationals(), gens, d, bound);
}

Algebra stb_connected_sum() {
  Algebra model = stb(kStbDefaultBound);
  Cohomology h = cohomology(model, 7);
  auto top = h.algebra().indices_in_degree(7);
  Algebra pd = poincare_duality_model(model, 7, h.representative(top.front()));
  pd.set_name("stb_pd");
  Algebra out = connected_sum_model(pd, 7);
  out.set_name("stb#s2xs5");
  return out;
}

std::optional<int> trailing_number(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  if (prefix == "sphere(") {
    if (rest.back() != ')') return std::nullopt;
    rest.pop_back();
  }
  if (rest.empty() || rest.size() > 3) return std::nullopt;
  for (char c : rest)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(rest);
}

}  // namespace

Algebra catalog(const std::string& name, std::optional<int> truncate) {
  if (name == "point") return point();
  if (name == "cp2") return cp2();
  if (name == "s2xs2") return s2xs2();
  if (name == "stb_s2xs2") return stb(truncate.value_or(kStbDefaultBound));
  if (name == "s5#s2xs3") {
    Algebra a = connected_sum_model(sphere(5), 5);
    a.set_name(name);
    return a;
  }
  if (name == "stb#s2xs5") return stb_connected_sum();
  if (auto m = trailing_number(name, "sphere(")) return sphere(*m);
  if (auto m = trailing_number(name, "s")) return sphere(*m);
  if (auto k = trailing_number(name, "t")) return torus(*k);
  throw std::invalid_argument("unknown catalog algebra '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"point", "s2", "s3", "s4", "s5", "t2", "cp2", "s2xs2", "stb_s2xs2", "s5#s2xs3", "stb#s2xs5"};
}

std::vector<std::string> formal_catalog() {
  std::vector<std::string> out;
  for (const auto& name : catalog_names())
    if (!catalog(name).has_differential()) out.push_back(name);
  return out;
}

}  // namespace confseq
