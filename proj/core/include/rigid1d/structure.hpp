#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rigid1d/graph.hpp"

namespace rigid1d {

// Component label per vertex, labels 0.. in order of smallest member.
std::vector<int> component_labels(const Graph& g);
int component_count(const Graph& g);
bool is_connected(const Graph& g);

// Connected, at least 3 vertices, and no cut vertex. K2 and K1 are not
// 2-connected under this convention.
bool is_2_connected(const Graph& g);

// Throws std::invalid_argument on out-of-range or repeated vertices. The
// vertex order of `subset` becomes the new labeling.
InducedSubgraph induced(const Graph& g, std::span<const Vertex> subset);

// A minimum-length cycle, or nullopt for forests. Roots are tried in
// ascending order and the first cycle found at the smallest length wins, so
// the result is a pure function of the graph.
std::optional<std::vector<Vertex>> find_shortest_cycle(const Graph& g);

// Girth via BFS from every vertex; 0 for forests.
int girth(const Graph& g);

// True iff some edge has >= 2 common neighbours (K4 minus an edge, F1) or
// some vertex pair has >= 3 common neighbours (K_{2,3}, F2).
bool contains_F1_or_F2(const Graph& g);

// Largest number of crossing edges at one vertex for the bipartition given by
// `in_a` (true = side A). A matching cut has value <= 1.
int max_crossing_degree(const Graph& g, const std::vector<bool>& in_a);

}  // namespace rigid1d
