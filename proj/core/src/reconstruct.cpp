#include "rigid1d/reconstruct.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "rigid1d/errors.hpp"
#include "rigid1d/structure.hpp"

namespace rigid1d {

namespace {

struct PlacedNeighbour {
  Vertex vertex;
  const Rational* length;
};

class BranchSearch {
 public:
  BranchSearch(const Graph& g, const EdgeLengths& lengths, const ReconstructOptions& options,
               ReconstructionResult& result)
      : lengths_(lengths), options_(options), result_(result) {
    const int n = g.order();
    std::vector<int> rank(static_cast<std::size_t>(n), -1);
    auto& order = result_.order;
    order.push_back(0);
    rank[0] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (const Vertex y : g.neighbors(order[head])) {
        if (rank[y] == -1) {
          rank[y] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    earlier_.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Vertex v = order[k];
      for (const Vertex y : g.neighbors(v)) {
        if (rank[y] < static_cast<int>(k)) {
          const auto idx = g.edge_index(v, y);
          earlier_[k].push_back({y, &lengths_.lengths[static_cast<std::size_t>(idx)]});
        }
      }
      std::sort(earlier_[k].begin(), earlier_[k].end(),
                [&](const PlacedNeighbour& a, const PlacedNeighbour& b) { return rank[a.vertex] < rank[b.vertex]; });
    }
    coords_.resize(static_cast<std::size_t>(n));
    rank_ = std::move(rank);
    later_.resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k)
      for (const Vertex y : g.neighbors(order[k]))
        if (rank_[y] > static_cast<int>(k)) later_[k].push_back(rank_[y]);
  }

  void run() {
    const auto& order = result_.order;
    coords_[static_cast<std::size_t>(order[0])] = 0;
    used_.insert(coords_[static_cast<std::size_t>(order[0])]);
    ++result_.stats.nodes;
    if (!descend(1)) return;
    result_.exhausted = !result_.budget_hit;
  }

 private:
  // Returns false when the search must stop (class limit or budget).
  bool descend(std::size_t k) {
    const auto& order = result_.order;
    if (k == order.size()) return record_leaf();
    const auto& placed = earlier_[k];
    const Vertex v = order[k];
    if (placed.size() >= 2) {
      const Rational& x1 = coords_[static_cast<std::size_t>(placed[0].vertex)];
      const Rational& x2 = coords_[static_cast<std::size_t>(placed[1].vertex)];
      auto forced = position_from_two_anchors(x1, *placed[0].length, x2, *placed[1].length);
      if (!forced) return true;
      ++result_.stats.propagations;
      return try_place(k, v, *forced);
    }
    // Exactly one placed neighbour: the BFS parent.
    const Rational& base = coords_[static_cast<std::size_t>(placed[0].vertex)];
    const Rational& len = *placed[0].length;
    const bool first_branch = k == 1;
    if (!first_branch) ++result_.stats.branches;
    if (!try_place(k, v, base + len)) return false;
    if (first_branch) return true;
    return try_place(k, v, base - len);
  }

  bool try_place(std::size_t k, Vertex v, const Rational& x) {
    if (++result_.stats.nodes > options_.node_budget) {
      result_.budget_hit = true;
      return false;
    }
    if (used_.count(x) != 0) return true;
    for (const auto& nb : earlier_[k]) {
      if (abs(x - coords_[static_cast<std::size_t>(nb.vertex)]) != *nb.length) return true;
    }
    coords_[static_cast<std::size_t>(v)] = x;
    const auto it = used_.insert(x).first;
    const bool keep_going = !still_placeable(k) || descend(k + 1);
    used_.erase(it);
    return keep_going;
  }

  // Forward check after placing order[k]: every later neighbour that now has
  // two placed neighbours must still have a free position agreeing with all
  // of them.
  bool still_placeable(std::size_t k) {
    for (const int r : later_[k]) {
      const auto& nbs = earlier_[static_cast<std::size_t>(r)];
      if (nbs.size() < 2 || rank_[nbs[1].vertex] > static_cast<int>(k)) continue;
      const auto pos = position_from_two_anchors(coords_[static_cast<std::size_t>(nbs[0].vertex)], *nbs[0].length,
                                                 coords_[static_cast<std::size_t>(nbs[1].vertex)], *nbs[1].length);
      if (!pos || used_.count(*pos) != 0) return false;
      for (std::size_t i = 2; i < nbs.size() && rank_[nbs[i].vertex] <= static_cast<int>(k); ++i) {
        if (abs(*pos - coords_[static_cast<std::size_t>(nbs[i].vertex)]) != *nbs[i].length) return false;
      }
    }
    return true;
  }

  bool record_leaf() {
    for (std::size_t i = 0; i < lengths_.edges.size(); ++i) {
      const Edge& e = lengths_.edges[i];
      if (abs(coords_[static_cast<std::size_t>(e.u)] - coords_[static_cast<std::size_t>(e.v)]) != lengths_.lengths[i]) {
        return true;
      }
    }
    result_.classes.emplace_back(coords_);
    return options_.class_limit == 0 || result_.classes.size() < options_.class_limit;
  }

  const EdgeLengths& lengths_;
  const ReconstructOptions& options_;
  ReconstructionResult& result_;
  std::vector<std::vector<PlacedNeighbour>> earlier_;
  std::vector<std::vector<int>> later_;  // ranks of neighbours placed after order[k]
  std::vector<int> rank_;
  std::vector<Rational> coords_;
  std::set<Rational> used_;
};

}  // namespace

ReconstructionResult reconstruct(const Graph& g, const EdgeLengths& lengths, const ReconstructOptions& options) {
  if (lengths.edges.size() != lengths.lengths.size() ||
      !std::equal(lengths.edges.begin(), lengths.edges.end(), g.edges().begin(), g.edges().end())) {
    throw std::invalid_argument("reconstruct: lengths must be given on exactly the edges of the graph");
  }
  for (const auto& len : lengths.lengths) {
    if (sgn(len) <= 0) throw std::invalid_argument("reconstruct: edge lengths must be positive");
  }
  if (!is_connected(g)) throw std::invalid_argument("reconstruct: graph must be connected");

  ReconstructionResult result;
  if (g.order() == 0) {
    result.classes.emplace_back();
    result.exhausted = true;
    return result;
  }
  BranchSearch search(g, lengths, options, result);
  search.run();
  return result;
}

FrameworkStatus framework_rigidity(const Graph& g, const Embedding& f, std::uint64_t node_budget) {
  if (!is_injective(f)) throw std::invalid_argument("framework_rigidity: embedding must be injective");
  ReconstructOptions options;
  options.class_limit = 2;
  options.node_budget = node_budget;
  const auto result = reconstruct(g, lengths_of(g, f), options);
  if (result.classes.size() >= 2) return FrameworkStatus::kMultiple;
  if (result.budget_hit) return FrameworkStatus::kBudget;
  return FrameworkStatus::kUnique;
}

bool framework_globally_rigid(const Graph& g, const Embedding& f, std::uint64_t node_budget) {
  switch (framework_rigidity(g, f, node_budget)) {
    case FrameworkStatus::kUnique: return true;
    case FrameworkStatus::kMultiple: return false;
    case FrameworkStatus::kBudget: break;
  }
  throw BudgetExceeded("framework_globally_rigid: node budget of " + std::to_string(node_budget) + " exhausted");
}

}  // namespace rigid1d
