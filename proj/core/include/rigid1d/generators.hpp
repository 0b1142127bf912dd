#pragma once

#include <cstdint>
#include <vector>

#include "rigid1d/graph.hpp"

namespace rigid1d {

// G(n, p): every pair independently with probability p. Pairs are visited by
// geometric skipping (Batagelj-Brandes), so the cost is O(n + m).
Graph gen_gnp(int n, double p, std::uint64_t seed);

// G(n, m): uniform over labeled graphs with exactly m edges (Floyd sampling
// over the C(n,2) pair indices).
Graph gen_gnm(int n, std::int64_t m, std::uint64_t seed);

/// Random graph process observed up to its hitting time for minimum degree k.
/// `edges` holds the added edges in order up to and including step `tau`.
struct ProcessTrace {
  int n = 0;
  int k = 2;
  std::vector<Edge> edges;
  std::int64_t tau = 0;

  // G_i: the graph formed by the first i added edges (0 <= i <= tau).
  Graph prefix(std::int64_t i) const;
};

// Consumes a uniform shuffle of all C(n,2) pairs until min degree >= k.
ProcessTrace run_process_to_min_degree(int n, int k, std::uint64_t seed);

struct RegularOptions {
  int max_restarts = 10000;
};

// Uniform d-regular simple graph via the pairing model, restarting the whole
// pairing on any loop or repeated edge. Throws std::runtime_error if the
// restart budget runs out.
Graph gen_random_regular(int n, int d, std::uint64_t seed, RegularOptions options = {});

}  // namespace rigid1d
