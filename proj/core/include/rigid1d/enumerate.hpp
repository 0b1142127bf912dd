#pragma once

#include <cstdint>
#include <vector>

#include "rigid1d/graph.hpp"

namespace rigid1d {

// The C(n,2) vertex pairs in lexicographic order; bit i of a graph mask
// selects pairs[i].
std::vector<Edge> all_pairs(int n);
Graph graph_from_mask(int n, std::uint64_t mask, const std::vector<Edge>& pairs);
bool mask_connected(int n, std::uint64_t mask, const std::vector<Edge>& pairs);

// Lexicographically smallest adjacency bit string over all relabelings
// (n <= 10). Equal codes mean isomorphic graphs.
std::uint64_t canonical_code(const Graph& g);

// One representative per isomorphism class of d-regular graphs on n
// vertices (connected or not), by backtracking over pairs with degree
// pruning, deduplicated by canonical_code. Intended for n <= 10.
std::vector<Graph> enumerate_regular_graphs(int n, int d);

}  // namespace rigid1d
