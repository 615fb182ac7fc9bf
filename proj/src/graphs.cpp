#include "confseq/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "confseq/errors.hpp"

namespace confseq {

Family parse_family(const std::string& name) {
  if (name == "full" || name == "FULL") return Family::Full;
  if (name == "noduptarget" || name == "NODUPTARGET") return Family::NoDupTarget;
  if (name == "j" || name == "JFAMILY") return Family::JFamily;
  if (name == "h" || name == "HFAMILY") return Family::HFamily;
  throw std::invalid_argument("unknown graph family '" + name + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Full: return "FULL";
    case Family::NoDupTarget: return "NODUPTARGET";
    case Family::JFamily: return "JFAMILY";
    case Family::HFamily: return "HFAMILY";
  }
  return "?";
}

int edge_index(int n, int i, int j) {
  // pairs (1,2),(1,3),...,(1,n),(2,3),...
  return (i - 1) * n - (i - 1) * i / 2 + (j - i - 1);
}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    auto [i, j] = edges_[k];
    if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("edge out of range or not increasing");
    if (k > 0 && edges_[k - 1] == edges_[k]) throw std::invalid_argument("duplicate edge");
    mask_ |= 1u << edge_index(n, i, j);
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [i, j] : edges_) {
    int a = find(i - 1), b = find(j - 1);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  comp_of_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (comp_of_[r] < 0) {
      comp_of_[r] = static_cast<int>(components_.size());
      components_.emplace_back();
    }
    comp_of_[v] = comp_of_[r];
    components_[comp_of_[v]].push_back(v + 1);
  }
}

bool Graph::has_edge(int i, int j) const { return std::binary_search(edges_.begin(), edges_.end(), Edge(i, j)); }

bool Graph::has_repeated_target() const {
  std::vector<int> seen(n_ + 1, 0);
  for (auto [i, j] : edges_)
    if (seen[j]++) return true;
  return false;
}

std::string Graph::to_string() const {
  if (edges_.empty()) return "1";
  std::string out;
  for (auto [i, j] : edges_) out += "e" + std::to_string(i) + std::to_string(j);
  return out;
}

bool operator<(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.edges_.size() != b.edges_.size()) return a.edges_.size() < b.edges_.size();
  return a.edges_ < b.edges_;
}

bool in_family(const Graph& g, Family f) {
  switch (f) {
    case Family::Full: return true;
    case Family::NoDupTarget: return !g.has_repeated_target();
    case Family::JFamily: return g.has_repeated_target();
    case Family::HFamily: return !g.has_repeated_target() && g.components().front().size() == 1;
  }
  return false;
}

std::vector<Graph> enumerate(int n, Family family) {
  if (n < 1 || n > 6) throw PreconditionError("graph enumeration needs 1 <= n <= 6");
  std::vector<Graph::Edge> all;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) all.emplace_back(i, j);
  std::vector<Graph> out;
  for (std::uint32_t mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<Graph::Edge> edges;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (mask & (1u << k)) edges.push_back(all[k]);
    Graph g(n, std::move(edges));
    if (in_family(g, family)) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SignedGraph> add_edge(const Graph& g, int i, int j) {
  if (!(1 <= i && i < j && j <= g.n())) throw std::invalid_argument("add_edge needs 1 <= i < j <= n");
  if (g.has_edge(i, j)) return std::nullopt;
  int after = 0;
  for (const auto& e : g.edges())
    if (e > Graph::Edge(i, j)) ++after;
  auto edges = g.edges();
  edges.emplace_back(i, j);
  return SignedGraph{Graph(g.n(), std::move(edges)), after % 2 ? -1 : 1};
}

}  // namespace confseq
