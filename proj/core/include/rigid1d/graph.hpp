#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rigid1d {

using Vertex = std::int32_t;

/// Unordered vertex pair, stored normalized with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr auto operator<=>(const Edge&) const = default;
};

/// Finite simple undirected graph on vertices 0..n-1. Immutable once built;
/// edges are kept in ascending lexicographic order and adjacency lists in
/// ascending vertex order (CSR layout).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Throws std::invalid_argument on loops, duplicates, or out-of-range endpoints.
  Graph(int n, std::vector<Edge> edges);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph star(int n);
  static Graph petersen();

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  int min_degree() const noexcept;
  int max_degree() const noexcept;
  bool has_edge(Vertex a, Vertex b) const noexcept;

  // Index of edge {a,b} in edges(), or -1.
  std::ptrdiff_t edge_index(Vertex a, Vertex b) const noexcept;

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency();

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Vertex> nbrs_;
};

/// G[S] relabeled to 0..|S|-1; `to_parent[i]` is the original vertex of i.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;
};

// Text format: "n m" header, then m lines "u v" (u < v). Blank lines and
// lines starting with '#' are skipped. Writers emit canonical order.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

}  // namespace rigid1d
