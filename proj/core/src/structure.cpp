#include "rigid1d/structure.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace rigid1d {

std::vector<int> component_labels(const Graph& g) {
  const int n = g.order();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> stack;
  int next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (const Vertex y : g.neighbors(x)) {
        if (label[y] == -1) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

int component_count(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

bool is_2_connected(const Graph& g) {
  const int n = g.order();
  if (n < 3 || !is_connected(g)) return false;

  // Iterative Hopcroft-Tarjan lowpoint search from vertex 0.
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> stack{0};
  int time = 0;
  int root_children = 0;
  disc[0] = low[0] = time++;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    const auto nb = g.neighbors(x);
    if (cursor[x] < nb.size()) {
      const Vertex y = nb[cursor[x]++];
      if (disc[y] == -1) {
        parent[y] = x;
        disc[y] = low[y] = time++;
        if (x == 0) ++root_children;
        stack.push_back(y);
      } else if (y != parent[x]) {
        low[x] = std::min(low[x], disc[y]);
      }
    } else {
      stack.pop_back();
      const Vertex p = parent[x];
      if (p >= 0) {
        low[p] = std::min(low[p], low[x]);
        if (p != 0 && low[x] >= disc[p]) return false;
      }
    }
  }
  return root_children < 2;
}

InducedSubgraph induced(const Graph& g, std::span<const Vertex> subset) {
  std::vector<Vertex> local(static_cast<std::size_t>(g.order()), -1);
  InducedSubgraph out;
  out.to_parent.assign(subset.begin(), subset.end());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const Vertex v = subset[i];
    if (!g.contains(v)) throw std::invalid_argument("induced: vertex " + std::to_string(v) + " out of range");
    if (local[v] != -1) throw std::invalid_argument("induced: vertex " + std::to_string(v) + " repeated");
    local[v] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (const Vertex y : g.neighbors(subset[i])) {
      const Vertex j = local[y];
      if (j > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), j);
    }
  }
  out.graph = Graph(static_cast<int>(subset.size()), std::move(edges));
  return out;
}

namespace {

struct CycleCandidate {
  int length = std::numeric_limits<int>::max();
  Vertex root = -1;
  Vertex a = -1;  // closing edge a-b, both reached from root
  Vertex b = -1;
};

}  // namespace

std::optional<std::vector<Vertex>> find_shortest_cycle(const Graph& g) {
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Vertex> parent(static_cast<std::size_t>(n));
  std::vector<Vertex> queue;
  queue.reserve(static_cast<std::size_t>(n));

  CycleCandidate best;
  std::vector<Vertex> best_parent;
  for (Vertex r = 0; r < n; ++r) {
    if (best.length == 3) break;
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(r);
    dist[r] = 0;
    parent[r] = -1;
    bool improved = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      // Any cycle closed beyond this depth cannot beat the current best.
      if (2 * dist[x] + 1 >= best.length) break;
      for (const Vertex y : g.neighbors(x)) {
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (y != parent[x] && dist[y] >= dist[x]) {
          const int len = dist[x] + dist[y] + 1;
          if (len < best.length) {
            best = {len, r, x, y};
            improved = true;
          }
        }
      }
    }
    if (improved) best_parent = parent;
  }
  if (best.root < 0) return std::nullopt;

  // At the global minimum the two tree paths meet only at the root.
  std::vector<Vertex> left;
  for (Vertex x = best.a; x != -1; x = best_parent[x]) left.push_back(x);
  std::vector<Vertex> right;
  for (Vertex x = best.b; x != best.root; x = best_parent[x]) right.push_back(x);
  std::vector<Vertex> cycle(left.rbegin(), left.rend());
  cycle.insert(cycle.end(), right.begin(), right.end());
  return cycle;
}

int girth(const Graph& g) {
  const auto c = find_shortest_cycle(g);
  return c ? static_cast<int>(c->size()) : 0;
}

bool contains_F1_or_F2(const Graph& g) {
  const int n = g.order();
  std::vector<int> common(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> touched;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    // Count length-2 walks u - x - w for w > u.
    for (const Vertex x : g.neighbors(u)) {
      for (const Vertex w : g.neighbors(x)) {
        if (w <= u) continue;
        if (common[w]++ == 0) touched.push_back(w);
      }
    }
    bool found = false;
    for (const Vertex w : touched) {
      if (common[w] >= 3 || (common[w] >= 2 && g.has_edge(u, w))) found = true;
      common[w] = 0;
    }
    if (found) return true;
  }
  return false;
}

int max_crossing_degree(const Graph& g, const std::vector<bool>& in_a) {
  int worst = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    int crossing = 0;
    for (const Vertex y : g.neighbors(v)) crossing += in_a[v] != in_a[y] ? 1 : 0;
    worst = std::max(worst, crossing);
  }
  return worst;
}

}  // namespace rigid1d
