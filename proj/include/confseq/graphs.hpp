#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confseq {

enum class Family { Full, NoDupTarget, JFamily, HFamily };

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Graph on vertices 1..n, edges (i,j) with i < j kept in lexicographic order.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  explicit Graph(int n, std::vector<Edge> edges = {});

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(int i, int j) const;
  /// Connected components as sorted vertex lists ordered by smallest vertex.
  const std::vector<std::vector<int>>& components() const { return components_; }
  int l() const { return static_cast<int>(components_.size()); }
  /// Index (0-based) of the component containing vertex v.
  int component_of(int v) const { return comp_of_[v - 1]; }
  bool has_repeated_target() const;
  /// Bit k set when edge number k of the lexicographic list of all pairs is present.
  std::uint32_t mask() const { return mask_; }
  std::string to_string() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }
  friend bool operator<(const Graph& a, const Graph& b);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> components_;
  std::vector<int> comp_of_;
  std::uint32_t mask_ = 0;
};

/// Position of (i,j) in the lexicographic list of pairs of {1..n}.
int edge_index(int n, int i, int j);

bool in_family(const Graph& g, Family f);
/// Ordered by edge count, then lexicographically by edge list. Requires 1 <= n <= 6.
std::vector<Graph> enumerate(int n, Family family);

struct SignedGraph {
  Graph graph;
  int sign = 1;
};

/// Graph with (i,j) inserted and the sign (-1)^t, t the number of existing
/// edges after (i,j); nullopt when the edge is already present.
std::optional<SignedGraph> add_edge(const Graph& g, int i, int j);

}  // namespace confseq
