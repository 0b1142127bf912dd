#include "rigid1d/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rigid1d {

Graph::Graph(int n) : Graph(n, {}) {}

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("graph: negative vertex count");
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.v >= n) {
      throw std::invalid_argument("graph: endpoint out of range in edge " + std::to_string(e.u) +
                                  "-" + std::to_string(e.v));
    }
    if (e.u == e.v) throw std::invalid_argument("graph: self-loop at " + std::to_string(e.u));
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("graph: duplicate edge " + std::to_string(dup->u) + "-" +
                                std::to_string(dup->v));
  }
  build_adjacency();
}

void Graph::build_adjacency() {
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (int v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  nbrs_.assign(offsets_.back(), 0);
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  // Lexicographic edge order fills every list in ascending order: partners
  // below x arrive (sorted) before the edges whose first endpoint is x.
  for (const Edge& e : edges_) {
    nbrs_[cursor[e.u]++] = e.v;
    nbrs_[cursor[e.v]++] = e.u;
  }
}

Graph Graph::complete(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph Graph::cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, std::move(edges));
}

Graph Graph::path(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

Graph Graph::star(int n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
  return Graph(n, std::move(edges));
}

Graph Graph::petersen() {
  // Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5..9.
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(edges));
}

int Graph::min_degree() const noexcept {
  int best = n_ == 0 ? 0 : std::numeric_limits<int>::max();
  for (Vertex v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

int Graph::max_degree() const noexcept {
  int best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::has_edge(Vertex a, Vertex b) const noexcept {
  if (!contains(a) || !contains(b) || a == b) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::ptrdiff_t Graph::edge_index(Vertex a, Vertex b) const noexcept {
  if (a == b) return -1;
  const Edge key(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return it - edges_.begin();
}

namespace {

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line)) throw std::runtime_error("graph file: missing header");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0) {
    throw std::runtime_error("graph file: bad header '" + line + "'");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line)) throw std::runtime_error("graph file: fewer edges than declared");
    std::istringstream row(line);
    long long u = -1, v = -1;
    if (!(row >> u >> v)) throw std::runtime_error("graph file: bad edge line '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("graph file: endpoint out of range in '" + line + "'");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (next_data_line(in, line)) throw std::runtime_error("graph file: more edges than declared");
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file " + path);
  write_graph(out, g);
}

}  // namespace rigid1d
