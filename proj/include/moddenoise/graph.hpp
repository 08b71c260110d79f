#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace moddenoise {

enum class GraphFamily { path, complete, star, custom };

std::string_view to_string(GraphFamily family) noexcept;
GraphFamily parse_graph_family(std::string_view name);

/// Undirected edge {u, v} with 1-based vertex labels and u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple, connected, unweighted graph on vertices 1..n.
///
/// Construction validates everything: no self-loops, no duplicate edges,
/// labels in range, and connectivity (checked by breadth-first search).
/// A Graph is immutable afterwards.
class Graph {
 public:
  /// Path P_n, complete K_n or star S_n (center vertex 1). Requires n >= 2.
  static Graph make(GraphFamily family, int n);

  /// Arbitrary graph. Edge orientation is irrelevant; {i, j} and {j, i} are
  /// the same edge and listing both is a duplicate.
  static Graph custom(int n, std::vector<Edge> edges);

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int max_degree() const noexcept { return max_degree_; }
  GraphFamily family() const noexcept { return family_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  /// Combinatorial Laplacian L = D - A.
  Eigen::MatrixXd laplacian() const;

 private:
  Graph(int n, std::vector<Edge> edges, GraphFamily family);

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  int max_degree_ = 0;
  GraphFamily family_ = GraphFamily::custom;
};

inline Graph build_graph(GraphFamily family, int n) { return Graph::make(family, n); }
inline Graph build_custom_graph(int n, std::vector<Edge> edges) {
  return Graph::custom(n, std::move(edges));
}
inline Eigen::MatrixXd laplacian(const Graph& g) { return g.laplacian(); }

/// Reads an edge list: first line `n`, then one `i j` pair per line (1-based).
/// Blank lines and lines starting with '#' are skipped.
Graph read_edge_list(const std::string& path);
Graph parse_edge_list(std::string_view text);

}  // namespace moddenoise
