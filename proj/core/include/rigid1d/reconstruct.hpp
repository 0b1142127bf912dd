#pragma once

#include <cstdint>
#include <vector>

#include "rigid1d/embedding.hpp"
#include "rigid1d/graph.hpp"

namespace rigid1d {

struct ReconstructOptions {
  std::size_t class_limit = 2;           // 0 = enumerate every class
  std::uint64_t node_budget = 10'000'000;
};

struct ReconstructStats {
  std::uint64_t nodes = 0;         // placements attempted
  std::uint64_t propagations = 0;  // placements forced by two anchors
  std::uint64_t branches = 0;      // +/- splits on a single placed neighbour
};

struct ReconstructionResult {
  // One canonical representative per isometry class: vertex 0 at 0 and the
  // second vertex of the search order at a positive coordinate.
  std::vector<Embedding> classes;
  bool exhausted = false;   // search tree fully explored
  bool budget_hit = false;  // stopped by node_budget (exhausted is false)
  ReconstructStats stats;
  std::vector<Vertex> order;  // BFS placement order
};

// Branch-and-propagate search over the BFS order from vertex 0. A vertex with
// two placed neighbours has its position forced; one with a single placed
// neighbour branches on the sign, except the first such vertex, which is
// fixed to + to quotient reflections. Coordinate collisions prune
// immediately. Requires a connected graph and positive lengths on exactly
// the edges of g; throws std::invalid_argument otherwise.
ReconstructionResult reconstruct(const Graph& g, const EdgeLengths& lengths, const ReconstructOptions& options = {});

enum class FrameworkStatus { kUnique, kMultiple, kBudget };

// Classification of (g, f) by a class_limit = 2 search. f must be injective.
FrameworkStatus framework_rigidity(const Graph& g, const Embedding& f, std::uint64_t node_budget = 10'000'000);

// True iff the lengths of f admit exactly one isometry class. Throws
// BudgetExceeded when the node budget runs out first.
bool framework_globally_rigid(const Graph& g, const Embedding& f, std::uint64_t node_budget = 10'000'000);

}  // namespace rigid1d
