#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rigid1d/graph.hpp"

namespace rigid1d {

/// Exact fraction num/den, den > 0.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Accepts "0.99", "99/100" or "1".
  static Ratio parse(const std::string& text);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

struct ExploreParams {
  std::int64_t sigma = 1;   // round cap for the failure rule
  Ratio z_floor{99, 100};   // fail while |Z| < z_floor * n

  // sigma = ceil(sigma_const * ln n), at least 1.
  static ExploreParams defaults(int n, double sigma_const = 6000.0, Ratio z_floor = {99, 100});
};

enum class ExploreStatus { kSuccess, kFailure };
enum class ExploreRule { kFailure, kSuccess, kToY, kToX };

const char* to_string(ExploreStatus s) noexcept;
const char* to_string(ExploreRule r) noexcept;

struct ExploreRound {
  std::int64_t index = 0;
  Vertex picked = -1;               // -1 on terminating rounds
  std::vector<Vertex> revealed;     // W_i
  ExploreRule rule = ExploreRule::kToY;
  std::int64_t x = 0, x_done = 0, y = 0, z = 0;  // sizes after the round
};

struct ExplorationOutcome {
  Vertex start = -1;
  ExploreStatus status = ExploreStatus::kFailure;
  std::vector<Vertex> a_v;          // sorted; filled on success
  std::int64_t rounds = 0;          // t
  std::int64_t x = 0, x_done = 0, y = 0, z = 0;
  std::vector<ExploreRound> trace;  // only when requested
};

/// Modified breadth-first exploration that keeps a vertex only when its
/// processed neighbour reveals two or more fresh vertices or touches the
/// boundary set Y. Reuses scratch space across calls; not thread-safe, one
/// instance per task.
class Explorer {
 public:
  explicit Explorer(const Graph& g);

  ExplorationOutcome run(Vertex v, const ExploreParams& params, bool record_trace = false);

 private:
  enum class Where : unsigned char { kZ, kY, kX, kDone };

  const Graph& g_;
  std::vector<Where> where_;
  std::vector<Vertex> touched_;
};

// Throws std::invalid_argument when v is not a vertex of g.
ExplorationOutcome explore_from(const Graph& g, Vertex v, const ExploreParams& params,
                                bool record_trace = false);

struct ExploreSummary {
  std::vector<ExplorationOutcome> outcomes;
  double success_fraction = 0.0;
  std::size_t max_a_v = 0;
};

ExploreSummary explore_all(const Graph& g, const ExploreParams& params);

// Largest number of edges between A and its complement at any one vertex,
// computed locally from the neighbourhoods of A.
int cut_degree(const Graph& g, std::span<const Vertex> a);

struct DeficientSet {
  std::vector<Vertex> vertices;  // sorted
  bool exact = false;            // maximum size guaranteed only when true
};

// A set A with |A| <= eps*n and |N(A)| <= |A|. Maximum-size by exhaustive
// search when n <= exact_limit, otherwise a sound greedy harvest.
DeficientSet find_deficient_set(const Graph& g, double eps, int exact_limit = 26);

// External neighbourhood of a vertex set.
std::vector<Vertex> open_neighbourhood(const Graph& g, std::span<const Vertex> a);

}  // namespace rigid1d
