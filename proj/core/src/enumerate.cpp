#include "rigid1d/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rigid1d {

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

Graph graph_from_mask(int n, std::uint64_t mask, const std::vector<Edge>& pairs) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1ULL) edges.push_back(pairs[i]);
  return Graph(n, std::move(edges));
}

bool mask_connected(int n, std::uint64_t mask, const std::vector<Edge>& pairs) {
  if (n <= 1) return true;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1ULL) {
      adj[static_cast<std::size_t>(pairs[i].u)] |= 1U << pairs[i].v;
      adj[static_cast<std::size_t>(pairs[i].v)] |= 1U << pairs[i].u;
    }
  }
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t rest = frontier; rest; rest &= rest - 1) next |= adj[static_cast<std::size_t>(__builtin_ctz(rest))];
    next &= ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == (n == 32 ? ~0U : (1U << n) - 1);
}

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > 10) throw std::invalid_argument("canonical_code: n must be <= 10");
  const auto pairs = all_pairs(n);
  std::uint32_t adj[10] = {};
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~0ULL;
  do {
    // Code bit i is set iff pair i of the relabeled graph is an edge.
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      code |= static_cast<std::uint64_t>(adj[perm[static_cast<std::size_t>(pairs[i].u)]] >> perm[static_cast<std::size_t>(pairs[i].v)] & 1U) << i;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

struct RegularSearch {
  int n;
  int d;
  const std::vector<Edge>& pairs;
  std::vector<int> degree;
  std::vector<Edge> chosen;
  std::set<std::uint64_t> seen;
  std::vector<Graph> out;

  // Pairs are ordered by first endpoint, so once the scan passes every pair
  // starting at u, vertex u must already be full.
  void search(std::size_t i) {
    if (i == pairs.size()) {
      // The last vertex owns no row, so its degree is only checked here.
      if (n > 0 && degree.back() != d) return;
      Graph g(n, chosen);
      if (seen.insert(canonical_code(g)).second) out.push_back(std::move(g));
      return;
    }
    const Edge e = pairs[i];
    const bool row_ends = i + 1 == pairs.size() || pairs[i + 1].u != e.u;
    if (degree[e.u] < d && degree[e.v] < d) {
      ++degree[e.u];
      ++degree[e.v];
      chosen.push_back(e);
      if (!row_ends || degree[e.u] == d) search(i + 1);
      chosen.pop_back();
      --degree[e.u];
      --degree[e.v];
    }
    // Skipping is only viable if u can still reach degree d.
    const int remaining_in_row = n - 1 - e.v;
    if (degree[e.u] + remaining_in_row >= d) search(i + 1);
  }
};

}  // namespace

std::vector<Graph> enumerate_regular_graphs(int n, int d) {
  if (n > 10) throw std::invalid_argument("enumerate_regular_graphs: n must be <= 10");
  if ((n * d) % 2 != 0 || d >= n) return {};
  const auto pairs = all_pairs(n);
  RegularSearch search{n, d, pairs, std::vector<int>(static_cast<std::size_t>(n), 0), {}, {}, {}};
  // Every class has a labeling with N(0) = {1, ..., d}, so those edges are
  // fixed up front and the other pairs at vertex 0 are skipped.
  for (Vertex v = 1; v <= d; ++v) {
    search.chosen.emplace_back(0, v);
    ++search.degree[0];
    ++search.degree[static_cast<std::size_t>(v)];
  }
  search.search(static_cast<std::size_t>(n - 1));
  return std::move(search.out);
}

}  // namespace rigid1d
