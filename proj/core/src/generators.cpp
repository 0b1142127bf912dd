#include "rigid1d/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rigid1d/rng.hpp"

namespace rigid1d {

namespace {

std::int64_t pair_count(int n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }

}  // namespace

Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_gnp: p must lie in [0, 1]");
  if (n < 0) throw std::invalid_argument("gen_gnp: negative n");
  if (p == 0.0 || n < 2) return Graph(n);
  if (p == 1.0) return Graph::complete(n);

  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(pair_count(n)) * p * 1.1) + 16);
  const double log_q = std::log1p(-p);
  // Pairs (w, v) with w < v, scanned row by row.
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.uniform01();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph(n, std::move(edges));
}

Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gen_gnm: negative n");
  const std::int64_t total = pair_count(n);
  if (m < 0 || m > total) {
    throw std::invalid_argument("gen_gnm: m = " + std::to_string(m) + " outside [0, C(n,2)] = [0, " +
                                std::to_string(total) + "]");
  }
  Rng rng(seed);
  std::unordered_set<std::int64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(m) * 2);
  for (std::int64_t j = total - m; j < total; ++j) {
    const auto t = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(j + 1)));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::int64_t> picked(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());

  // Pair index k enumerates (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges;
  edges.reserve(picked.size());
  Vertex u = 0;
  std::int64_t row_start = 0;
  for (const std::int64_t k : picked) {
    while (k >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    edges.emplace_back(u, static_cast<Vertex>(u + 1 + (k - row_start)));
  }
  return Graph(n, std::move(edges));
}

Graph ProcessTrace::prefix(std::int64_t i) const {
  if (i < 0 || i > static_cast<std::int64_t>(edges.size())) {
    throw std::out_of_range("ProcessTrace::prefix: index outside recorded sequence");
  }
  return Graph(n, std::vector<Edge>(edges.begin(), edges.begin() + i));
}

ProcessTrace run_process_to_min_degree(int n, int k, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("run_process_to_min_degree: negative k");
  if (n <= k) {
    throw std::invalid_argument("run_process_to_min_degree: need n > k (n = " + std::to_string(n) +
                                ", k = " + std::to_string(k) + ")");
  }
  ProcessTrace trace;
  trace.n = n;
  trace.k = k;

  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(pair_count(n)));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

  Rng rng(seed);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  int deficient = k > 0 ? n : 0;
  const std::size_t total = pairs.size();
  for (std::size_t t = 0; t < total && deficient > 0; ++t) {
    const auto j = t + static_cast<std::size_t>(rng.below(total - t));
    std::swap(pairs[t], pairs[j]);
    const Edge e = pairs[t];
    trace.edges.push_back(e);
    for (const Vertex x : {e.u, e.v}) {
      if (++degree[x] == k) --deficient;
    }
  }
  trace.tau = static_cast<std::int64_t>(trace.edges.size());
  return trace;
}

Graph gen_random_regular(int n, int d, std::uint64_t seed, RegularOptions options) {
  if (n < 0 || d < 0) throw std::invalid_argument("gen_random_regular: negative parameter");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0) {
    throw std::invalid_argument("gen_random_regular: n*d must be even");
  }
  if (d >= n && !(n == 0 && d == 0)) {
    throw std::invalid_argument("gen_random_regular: need d < n");
  }
  Rng rng(seed);
  const auto points = static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
  std::vector<Vertex> cells(points);
  for (std::size_t i = 0; i < points; ++i) cells[i] = static_cast<Vertex>(i / static_cast<std::size_t>(d));

  std::vector<Edge> edges;
  for (int attempt = 0; attempt < options.max_restarts; ++attempt) {
    // Fisher-Yates on the point cells, then pair consecutive points.
    std::vector<Vertex> perm = cells;
    rng.shuffle(perm);
    edges.clear();
    bool simple = true;
    for (std::size_t i = 0; i < points; i += 2) {
      if (perm[i] == perm[i + 1]) {
        simple = false;
        break;
      }
      edges.emplace_back(perm[i], perm[i + 1]);
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(n, std::move(edges));
  }
  throw std::runtime_error("gen_random_regular: no simple pairing within " +
                           std::to_string(options.max_restarts) + " restarts");
}

}  // namespace rigid1d
