#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rigid1d/embedding.hpp"
#include "rigid1d/errors.hpp"
#include "rigid1d/explore.hpp"
#include "rigid1d/graph.hpp"

namespace rigid1d {

class Rng;

// ---------------------------------------------------------------------------
// Sufficient conditions: crossing edges between large sets, and two-neighbour
// expansion of large sets.
// ---------------------------------------------------------------------------

struct SetPair {
  std::vector<Vertex> u;
  std::vector<Vertex> w;
};

struct EnumerationBudget {
  // Maximum number of size-s candidate sets examined by an exact check.
  std::uint64_t max_candidates = 50'000'000;
};

// ceil(n / divisor), at least 1.
int threshold_size(int n, int divisor);

// A pair of disjoint s-sets with no edge between them, or nullopt if every
// pair of disjoint sets of size >= s is joined by an edge. Enumerates the
// s-sets U and tests whether V \ (U cup N(U)) still holds s vertices.
// Throws BudgetExceeded when C(n, s) exceeds the budget.
std::optional<SetPair> check_cross_property(const Graph& g, int s, EnumerationBudget budget = {});

struct FalsifierResult {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  std::optional<SetPair> first_violation;
};

// Samples random disjoint s-set pairs. Can refute the crossing property but
// never confirm it.
FalsifierResult falsify_cross_property(const Graph& g, int s, std::uint64_t samples, Rng& rng);

// A set U with s <= |U| < n such that no outside vertex has two neighbours
// in U, or nullopt. U is closed under "add a vertex with two neighbours
// inside", so the check reduces to closing every s-set. Throws
// BudgetExceeded when C(n, s) exceeds the budget.
std::optional<std::vector<Vertex>> check_p2(const Graph& g, int s, EnumerationBudget budget = {});

// Both conditions at threshold ceil(n/15); true implies global rigidity.
bool lemma_main_check(const Graph& g, EnumerationBudget budget = {}, int divisor = 15);

// ---------------------------------------------------------------------------
// Non-rigidity certificates.
// ---------------------------------------------------------------------------

/// Bipartition whose crossing edges form a matching.
struct CutCertificate {
  std::vector<Vertex> a;  // sorted
  std::vector<Vertex> b;  // sorted
};

bool is_valid_cut(const Graph& g, const CutCertificate& cut);

struct MatchingCutOptions {
  int exact_limit = 20;
  // Exploration attempts for the heuristic pass on large graphs (0 = all).
  int max_explorations = 0;
  double sigma_const = 6000.0;
  Ratio z_floor{99, 100};
};

struct MatchingCutResult {
  std::optional<CutCertificate> cut;
  bool exhaustive = false;  // absence is conclusive only when true
  std::string method;
};

MatchingCutResult find_matching_cut(const Graph& g, const MatchingCutOptions& options = {});

/// Two injective, non-isometric embeddings with equal lengths on every edge.
struct WitnessPair {
  Embedding f;
  Embedding g;
};

struct WitnessCheck {
  bool f_injective = false;
  bool g_injective = false;
  bool lengths_agree = false;
  bool non_isometric = false;

  bool ok() const noexcept { return f_injective && g_injective && lengths_agree && non_isometric; }
};

WitnessCheck check_witness(const Graph& g, const WitnessPair& w);

// A on [0,1), matched B vertices at f(a)+10, unmatched B inside (10, 11)
// off f(A)+10; g = f on A and f - 20 on B. Throws std::invalid_argument for
// K2 or an invalid certificate.
WitnessPair build_witness_pair(const Graph& g, const CutCertificate& cut);

// ---------------------------------------------------------------------------
// Exact decision.
// ---------------------------------------------------------------------------

enum class RigidityStatus { kRigid, kNotRigid, kUnknown };
const char* to_string(RigidityStatus s) noexcept;

struct RigidityVerdict {
  RigidityStatus status = RigidityStatus::kUnknown;
  std::optional<WitnessPair> witness;
  std::optional<CutCertificate> certificate;
  std::string reason;
  std::string method;
  std::uint64_t budget_used = 0;
  // Edges whose f- and g-differences share a sign in the witness.
  std::vector<Edge> plus_edges;
};

struct OracleOptions {
  std::size_t max_edges = 24;
  std::uint64_t max_nodes = 2'000'000'000ULL;
};

// Exhaustive sign-assignment search. An assignment splits E into E+ (g - f
// constant along the edge) and E- (g + f constant). It yields a witness iff
// neither (V, E+) nor (V, E-) is connected and no two vertices share both an
// E+ component and an E- component; f = M*D - C and g = M*D + C then work,
// with C, D the component indices and M exceeding the number of E+
// components. The search assigns edges one at a time and prunes as soon as
// either condition fails, since both only get worse as edges are added.
RigidityVerdict decide_global_rigidity(const Graph& g, const OracleOptions& options = {});

struct SubsetOptions {
  int exact_limit = 20;
  // Vertices to start explorations from in the parent graph; empty means
  // the subset itself in the given order.
  std::vector<Vertex> hints;
  int max_explorations = 64;
  double sigma_const = 6000.0;
  Ratio z_floor{99, 100};
};

struct SubsetCertificate {
  InducedSubgraph sub;
  CutCertificate cut;      // in the labels of sub.graph
  WitnessPair witness;     // in the labels of sub.graph
  std::string method;
};

// Tries to show G[subset] is not globally rigid: an exact matching-cut search
// when small, otherwise A_v from an exploration in the parent graph
// intersected with the subset, then the generic heuristics. nullopt means no
// certificate was found.
std::optional<SubsetCertificate> certify_not_rigid_subset(const Graph& g, std::span<const Vertex> subset,
                                                          const SubsetOptions& options = {});

}  // namespace rigid1d
