#include "rigid1d/certify.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

namespace rigid1d {

namespace {

// C(n, k) saturating at UINT64_MAX.
std::uint64_t binom_saturating(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __uint128_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

// Advances idx to the next k-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<Vertex>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

void require_budget(const char* what, int n, int s, const EnumerationBudget& budget) {
  const auto count = binom_saturating(n, s);
  if (count > budget.max_candidates) {
    throw BudgetExceeded(std::string(what) + ": C(" + std::to_string(n) + ", " + std::to_string(s) +
                         ") candidate sets exceed the enumeration budget of " +
                         std::to_string(budget.max_candidates));
  }
}

}  // namespace

int threshold_size(int n, int divisor) {
  if (divisor <= 0) throw std::invalid_argument("threshold_size: divisor must be positive");
  return std::max(1, (n + divisor - 1) / divisor);
}

std::optional<SetPair> check_cross_property(const Graph& g, int s, EnumerationBudget budget) {
  if (s < 1) throw std::invalid_argument("check_cross_property: s must be >= 1");
  const int n = g.order();
  if (2 * s > n) return std::nullopt;
  require_budget("check_cross_property", n, s, budget);

  std::vector<std::uint32_t> mark(static_cast<std::size_t>(n), 0);
  std::uint32_t epoch = 0;
  std::vector<Vertex> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), 0);
  do {
    ++epoch;
    int covered = 0;
    for (const Vertex u : idx) {
      if (mark[u] != epoch) {
        mark[u] = epoch;
        ++covered;
      }
      for (const Vertex y : g.neighbors(u)) {
        if (mark[y] != epoch) {
          mark[y] = epoch;
          ++covered;
        }
      }
    }
    if (n - covered >= s) {
      SetPair out;
      out.u = idx;
      for (Vertex v = 0; v < n && static_cast<int>(out.w.size()) < s; ++v)
        if (mark[v] != epoch) out.w.push_back(v);
      return out;
    }
  } while (next_combination(idx, n));
  return std::nullopt;
}

FalsifierResult falsify_cross_property(const Graph& g, int s, std::uint64_t samples, Rng& rng) {
  if (s < 1) throw std::invalid_argument("falsify_cross_property: s must be >= 1");
  FalsifierResult result;
  const int n = g.order();
  if (2 * s > n) return result;

  std::vector<std::uint64_t> picked(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> in_w(static_cast<std::size_t>(n), 0);
  std::vector<Vertex> chosen;
  chosen.reserve(static_cast<std::size_t>(2 * s));
  for (std::uint64_t sample = 1; sample <= samples; ++sample) {
    // Floyd's subset sampling, then a shuffle to split it at random.
    chosen.clear();
    for (int j = n - 2 * s; j < n; ++j) {
      auto t = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(j) + 1));
      if (picked[t] == sample) t = j;
      picked[t] = sample;
      chosen.push_back(t);
    }
    rng.shuffle(chosen);
    for (int i = s; i < 2 * s; ++i) in_w[chosen[static_cast<std::size_t>(i)]] = sample;
    bool crossing = false;
    for (int i = 0; i < s && !crossing; ++i) {
      for (const Vertex y : g.neighbors(chosen[static_cast<std::size_t>(i)])) {
        if (in_w[y] == sample) {
          crossing = true;
          break;
        }
      }
    }
    ++result.samples;
    if (!crossing) {
      ++result.violations;
      if (!result.first_violation) {
        SetPair pair;
        pair.u.assign(chosen.begin(), chosen.begin() + s);
        pair.w.assign(chosen.begin() + s, chosen.end());
        std::sort(pair.u.begin(), pair.u.end());
        std::sort(pair.w.begin(), pair.w.end());
        result.first_violation = std::move(pair);
      }
    }
  }
  return result;
}

std::optional<std::vector<Vertex>> check_p2(const Graph& g, int s, EnumerationBudget budget) {
  if (s < 1) throw std::invalid_argument("check_p2: s must be >= 1");
  const int n = g.order();
  if (s >= n) return std::nullopt;
  require_budget("check_p2", n, s, budget);

  std::vector<int> count(static_cast<std::size_t>(n));
  std::vector<char> inside(static_cast<std::size_t>(n));
  std::vector<Vertex> members;
  members.reserve(static_cast<std::size_t>(n));
  std::vector<Vertex> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::fill(count.begin(), count.end(), 0);
    std::fill(inside.begin(), inside.end(), 0);
    members.clear();
    for (const Vertex u : idx) {
      inside[u] = 1;
      members.push_back(u);
    }
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (const Vertex y : g.neighbors(members[head])) {
        if (inside[y]) continue;
        if (++count[y] == 2) {
          inside[y] = 1;
          members.push_back(y);
        }
      }
    }
    if (static_cast<int>(members.size()) < n) {
      std::sort(members.begin(), members.end());
      return members;
    }
  } while (next_combination(idx, n));
  return std::nullopt;
}

bool lemma_main_check(const Graph& g, EnumerationBudget budget, int divisor) {
  const int n = g.order();
  if (n <= 1) return true;
  const int s = threshold_size(n, divisor);
  return !check_p2(g, s, budget) && !check_cross_property(g, s, budget);
}

bool is_valid_cut(const Graph& g, const CutCertificate& cut) {
  const int n = g.order();
  if (cut.a.empty() || cut.b.empty()) return false;
  if (cut.a.size() + cut.b.size() != static_cast<std::size_t>(n)) return false;
  std::vector<char> side(static_cast<std::size_t>(n), -1);
  for (const Vertex v : cut.a) {
    if (!g.contains(v) || side[v] != -1) return false;
    side[v] = 0;
  }
  for (const Vertex v : cut.b) {
    if (!g.contains(v) || side[v] != -1) return false;
    side[v] = 1;
  }
  std::vector<bool> in_a(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) in_a[v] = side[v] == 0;
  return max_crossing_degree(g, in_a) <= 1;
}

namespace {

CutCertificate cut_from_side(int n, const std::vector<char>& in_a) {
  CutCertificate cut;
  for (Vertex v = 0; v < n; ++v) (in_a[v] ? cut.a : cut.b).push_back(v);
  return cut;
}

CutCertificate cut_from_set(int n, std::vector<Vertex> a) {
  std::vector<char> in_a(static_cast<std::size_t>(n), 0);
  for (const Vertex v : a) in_a[v] = 1;
  return cut_from_side(n, in_a);
}

struct ExactCutSearch {
  const Graph& g;
  std::vector<char> in_a;
  std::vector<int> cross;
  int b_count = 0;

  bool search(Vertex v) {
    const int n = g.order();
    if (v == n) return b_count > 0;
    for (const char side : {char{1}, char{0}}) {
      if (v == 0 && side == 0) continue;
      in_a[v] = side;
      bool ok = true;
      for (const Vertex y : g.neighbors(v)) {
        if (y >= v) break;
        if (in_a[y] != side) {
          ++cross[v];
          ++cross[y];
          if (cross[v] > 1 || cross[y] > 1) ok = false;
        }
      }
      if (side == 0) ++b_count;
      if (ok && search(v + 1)) return true;
      if (side == 0) --b_count;
      for (const Vertex y : g.neighbors(v)) {
        if (y >= v) break;
        if (in_a[y] != side) {
          --cross[v];
          --cross[y];
        }
      }
    }
    return false;
  }
};

}  // namespace

MatchingCutResult find_matching_cut(const Graph& g, const MatchingCutOptions& options) {
  MatchingCutResult result;
  const int n = g.order();
  if (n < 2) {
    result.exhaustive = true;
    result.method = "exact";
    return result;
  }
  if (n <= options.exact_limit) {
    ExactCutSearch search{g, std::vector<char>(static_cast<std::size_t>(n), 1),
                          std::vector<int>(static_cast<std::size_t>(n), 0)};
    result.exhaustive = true;
    result.method = "exact";
    if (search.search(0)) result.cut = cut_from_side(n, search.in_a);
    return result;
  }

  result.exhaustive = false;
  const auto labels = component_labels(g);
  if (std::any_of(labels.begin(), labels.end(), [](int c) { return c != 0; })) {
    std::vector<Vertex> a;
    for (Vertex v = 0; v < n; ++v)
      if (labels[v] == 0) a.push_back(v);
    result.cut = cut_from_set(n, std::move(a));
    result.method = "component";
    return result;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) <= 1) {
      result.cut = cut_from_set(n, {v});
      result.method = "pendant";
      return result;
    }
  }
  if (auto cycle = find_shortest_cycle(g); cycle && static_cast<int>(cycle->size()) < n) {
    auto cut = cut_from_set(n, *cycle);
    if (is_valid_cut(g, cut)) {
      result.cut = std::move(cut);
      result.method = "shortest-cycle";
      return result;
    }
  }
  Explorer explorer(g);
  const auto params = ExploreParams::defaults(n, options.sigma_const, options.z_floor);
  const int attempts = options.max_explorations > 0 ? std::min(n, options.max_explorations) : n;
  for (Vertex v = 0; v < attempts; ++v) {
    const auto outcome = explorer.run(v, params);
    if (outcome.status != ExploreStatus::kSuccess || static_cast<int>(outcome.a_v.size()) >= n) continue;
    auto cut = cut_from_set(n, outcome.a_v);
    if (is_valid_cut(g, cut)) {
      result.cut = std::move(cut);
      result.method = "exploration";
      return result;
    }
  }
  result.method = "heuristic";
  return result;
}

WitnessCheck check_witness(const Graph& g, const WitnessPair& w) {
  WitnessCheck check;
  if (w.f.order() != g.order() || w.g.order() != g.order()) return check;
  check.f_injective = is_injective(w.f);
  check.g_injective = is_injective(w.g);
  check.lengths_agree = true;
  for (const Edge& e : g.edges()) {
    if (abs(w.f[e.u] - w.f[e.v]) != abs(w.g[e.u] - w.g[e.v])) {
      check.lengths_agree = false;
      break;
    }
  }
  check.non_isometric = !is_isometric(w.f, w.g);
  return check;
}

WitnessPair build_witness_pair(const Graph& g, const CutCertificate& cut) {
  const int n = g.order();
  if (n == 2 && g.size() == 1) throw std::invalid_argument("build_witness_pair: K2 has no witness");
  if (!is_valid_cut(g, cut)) throw std::invalid_argument("build_witness_pair: invalid matching-cut certificate");

  std::vector<char> in_a(static_cast<std::size_t>(n), 0);
  for (const Vertex v : cut.a) in_a[v] = 1;
  std::vector<Rational> f(static_cast<std::size_t>(n));
  const auto a_size = static_cast<long>(cut.a.size());
  for (std::size_t i = 0; i < cut.a.size(); ++i) {
    f[static_cast<std::size_t>(cut.a[i])] = Rational(static_cast<long>(i), a_size);
    f[static_cast<std::size_t>(cut.a[i])].canonicalize();
  }
  std::vector<Vertex> unmatched;
  for (const Vertex b : cut.b) {
    Vertex partner = -1;
    for (const Vertex y : g.neighbors(b)) {
      if (in_a[y]) partner = y;
    }
    if (partner >= 0) {
      f[static_cast<std::size_t>(b)] = f[static_cast<std::size_t>(partner)] + 10;
    } else {
      unmatched.push_back(b);
    }
  }
  // Odd multiples of 1/(2k|A|) stay strictly inside (10, 10 + 1/|A|) and never
  // hit the even multiples that make up f(A) + 10.
  const auto k = static_cast<long>(unmatched.size());
  for (long j = 0; j < k; ++j) {
    Rational offset(2 * j + 1, 2 * k * a_size);
    offset.canonicalize();
    f[static_cast<std::size_t>(unmatched[static_cast<std::size_t>(j)])] = Rational(10) + offset;
  }
  std::vector<Rational> gv = f;
  for (const Vertex b : cut.b) gv[static_cast<std::size_t>(b)] -= 20;

  WitnessPair w{Embedding(std::move(f)), Embedding(std::move(gv))};
  if (!check_witness(g, w).ok()) throw std::logic_error("build_witness_pair: construction failed to validate");
  return w;
}

const char* to_string(RigidityStatus s) noexcept {
  switch (s) {
    case RigidityStatus::kRigid: return "Rigid";
    case RigidityStatus::kNotRigid: return "NotRigid";
    case RigidityStatus::kUnknown: return "Unknown";
  }
  return "?";
}

namespace {

class SignSearch {
 public:
  SignSearch(const Graph& g, std::vector<Edge> order, std::uint64_t max_nodes)
      : n_(g.order()),
        order_(std::move(order)),
        full_(n_ == 64 ? ~0ULL : (1ULL << n_) - 1),
        max_nodes_(max_nodes),
        plus_((order_.size() + 1) * static_cast<std::size_t>(n_)),
        minus_((order_.size() + 1) * static_cast<std::size_t>(n_)),
        choice_(order_.size(), 0) {
    for (int v = 0; v < n_; ++v) {
      plus_[static_cast<std::size_t>(v)] = 1ULL << v;
      minus_[static_cast<std::size_t>(v)] = 1ULL << v;
    }
  }

  enum class Outcome { kExhausted, kFound, kBudget };

  Outcome run() {
    if (order_.empty()) return Outcome::kFound;
    return descend(0);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  const std::vector<char>& choice() const noexcept { return choice_; }
  const std::uint64_t* plus_at(std::size_t depth) const { return &plus_[depth * static_cast<std::size_t>(n_)]; }
  const std::uint64_t* minus_at(std::size_t depth) const { return &minus_[depth * static_cast<std::size_t>(n_)]; }
  std::size_t depth() const noexcept { return order_.size(); }

 private:
  // Joins the components of x and y in `same`; fails if some pair would then
  // share components in both partitions or the joined side spans V.
  bool join(std::uint64_t* same, const std::uint64_t* other, Vertex x, Vertex y) const {
    const std::uint64_t px = same[x];
    const std::uint64_t py = same[y];
    if (px & (1ULL << y)) return true;
    for (std::uint64_t rest = px; rest; rest &= rest - 1) {
      const int u = __builtin_ctzll(rest);
      if (other[u] & py) return false;
    }
    const std::uint64_t merged = px | py;
    if (merged == full_) return false;
    for (std::uint64_t rest = merged; rest; rest &= rest - 1) same[__builtin_ctzll(rest)] = merged;
    return true;
  }

  Outcome descend(std::size_t depth) {
    if (depth == order_.size()) return Outcome::kFound;
    const Edge e = order_[depth];
    const auto width = static_cast<std::size_t>(n_);
    // The first edge is fixed to the "+" side: negating every sign maps g to
    // -g and stays in the same isometry class.
    for (const char sign : {char{1}, char{0}}) {
      if (depth == 0 && sign == 0) break;
      if (++nodes_ > max_nodes_) return Outcome::kBudget;
      std::copy_n(&plus_[depth * width], width, &plus_[(depth + 1) * width]);
      std::copy_n(&minus_[depth * width], width, &minus_[(depth + 1) * width]);
      std::uint64_t* p = &plus_[(depth + 1) * width];
      std::uint64_t* m = &minus_[(depth + 1) * width];
      const bool ok = sign ? join(p, m, e.u, e.v) : join(m, p, e.u, e.v);
      if (!ok) continue;
      choice_[depth] = sign;
      const Outcome sub = descend(depth + 1);
      if (sub != Outcome::kExhausted) return sub;
    }
    return Outcome::kExhausted;
  }

  int n_;
  std::vector<Edge> order_;
  std::uint64_t full_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> plus_;
  std::vector<std::uint64_t> minus_;
  std::vector<char> choice_;
};

// Edges sorted so each prefix stays close to a BFS tree grown from vertex 0.
std::vector<Edge> bfs_edge_order(const Graph& g) {
  const int n = g.order();
  std::vector<int> rank(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> queue{0};
  rank[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Vertex y : g.neighbors(queue[head])) {
      if (rank[y] == -1) {
        rank[y] = static_cast<int>(queue.size());
        queue.push_back(y);
      }
    }
  }
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    const auto ka = std::make_pair(std::max(rank[a.u], rank[a.v]), std::min(rank[a.u], rank[a.v]));
    const auto kb = std::make_pair(std::max(rank[b.u], rank[b.v]), std::min(rank[b.u], rank[b.v]));
    return ka < kb;
  });
  return edges;
}

std::vector<long> component_index(const std::uint64_t* comp, int n) {
  std::vector<long> index(static_cast<std::size_t>(n), -1);
  long next = 0;
  for (int v = 0; v < n; ++v) {
    if (index[static_cast<std::size_t>(v)] != -1) continue;
    for (std::uint64_t rest = comp[v]; rest; rest &= rest - 1) index[static_cast<std::size_t>(__builtin_ctzll(rest))] = next;
    ++next;
  }
  return index;
}

}  // namespace

RigidityVerdict decide_global_rigidity(const Graph& g, const OracleOptions& options) {
  RigidityVerdict verdict;
  const int n = g.order();
  if (n <= 1) {
    verdict.status = RigidityStatus::kRigid;
    verdict.method = "trivial";
    return verdict;
  }
  const auto labels = component_labels(g);
  if (std::any_of(labels.begin(), labels.end(), [](int c) { return c != 0; })) {
    // Shift every component except the one holding vertex 0 by n.
    std::vector<Rational> f, gv;
    std::vector<Vertex> a;
    for (Vertex v = 0; v < n; ++v) {
      f.emplace_back(v);
      gv.emplace_back(labels[v] == 0 ? v : v + n);
      if (labels[v] == 0) a.push_back(v);
    }
    verdict.status = RigidityStatus::kNotRigid;
    verdict.method = "disconnected";
    verdict.witness = WitnessPair{Embedding(std::move(f)), Embedding(std::move(gv))};
    verdict.certificate = cut_from_set(n, std::move(a));
    return verdict;
  }
  if (g.size() > options.max_edges) {
    verdict.status = RigidityStatus::kUnknown;
    verdict.method = "sign-enumeration";
    verdict.reason = "edge budget: |E| = " + std::to_string(g.size()) + " exceeds " + std::to_string(options.max_edges);
    return verdict;
  }
  if (n > 64) {
    verdict.status = RigidityStatus::kUnknown;
    verdict.method = "sign-enumeration";
    verdict.reason = "vertex limit: n = " + std::to_string(n) + " exceeds 64";
    return verdict;
  }

  SignSearch search(g, bfs_edge_order(g), options.max_nodes);
  const auto outcome = search.run();
  verdict.method = "sign-enumeration";
  verdict.budget_used = search.nodes();
  switch (outcome) {
    case SignSearch::Outcome::kExhausted:
      verdict.status = RigidityStatus::kRigid;
      return verdict;
    case SignSearch::Outcome::kBudget:
      verdict.status = RigidityStatus::kUnknown;
      verdict.reason = "node budget of " + std::to_string(options.max_nodes) + " exhausted";
      return verdict;
    case SignSearch::Outcome::kFound:
      break;
  }

  const std::size_t leaf = search.depth();
  const auto plus_comp = component_index(search.plus_at(leaf), n);
  const auto minus_comp = component_index(search.minus_at(leaf), n);
  const long scale = *std::max_element(plus_comp.begin(), plus_comp.end()) + 2;
  std::vector<Rational> f, gv;
  for (Vertex v = 0; v < n; ++v) {
    const long c = plus_comp[static_cast<std::size_t>(v)];
    const long d = minus_comp[static_cast<std::size_t>(v)];
    f.emplace_back(scale * d - c);
    gv.emplace_back(scale * d + c);
  }
  const auto order = bfs_edge_order(g);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (search.choice()[i]) verdict.plus_edges.push_back(order[i]);
  std::sort(verdict.plus_edges.begin(), verdict.plus_edges.end());

  verdict.status = RigidityStatus::kNotRigid;
  verdict.witness = WitnessPair{Embedding(std::move(f)), Embedding(std::move(gv))};
  if (!check_witness(g, *verdict.witness).ok()) {
    throw std::logic_error("decide_global_rigidity: witness failed to validate");
  }
  return verdict;
}

std::optional<SubsetCertificate> certify_not_rigid_subset(const Graph& g, std::span<const Vertex> subset,
                                                          const SubsetOptions& options) {
  if (subset.size() < 2) return std::nullopt;
  SubsetCertificate out;
  out.sub = induced(g, subset);
  const Graph& h = out.sub.graph;
  const int k = h.order();
  if (k == 2 && h.size() == 1) return std::nullopt;

  auto finish = [&](CutCertificate cut, std::string method) -> std::optional<SubsetCertificate> {
    if (!is_valid_cut(h, cut)) return std::nullopt;
    out.witness = build_witness_pair(h, cut);
    out.cut = std::move(cut);
    out.method = std::move(method);
    return std::move(out);
  };

  if (k <= options.exact_limit) {
    MatchingCutOptions mc;
    mc.exact_limit = options.exact_limit;
    auto found = find_matching_cut(h, mc);
    if (!found.cut) return std::nullopt;
    return finish(std::move(*found.cut), "exact");
  }

  std::vector<Vertex> local(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < subset.size(); ++i) local[subset[i]] = static_cast<Vertex>(i);
  const std::span<const Vertex> hints = options.hints.empty() ? subset : std::span<const Vertex>(options.hints);
  const auto params = ExploreParams::defaults(g.order(), options.sigma_const, options.z_floor);
  Explorer explorer(g);
  int attempts = 0;
  for (const Vertex v : hints) {
    if (options.max_explorations > 0 && attempts >= options.max_explorations) break;
    ++attempts;
    const auto outcome = explorer.run(v, params);
    if (outcome.status != ExploreStatus::kSuccess) continue;
    std::vector<char> in_a(static_cast<std::size_t>(k), 0);
    std::size_t inside = 0;
    for (const Vertex x : outcome.a_v) {
      if (local[x] >= 0) {
        in_a[local[x]] = 1;
        ++inside;
      }
    }
    if (inside == 0 || inside == static_cast<std::size_t>(k)) continue;
    if (auto done = finish(cut_from_side(k, in_a), "exploration")) return done;
  }

  MatchingCutOptions mc;
  mc.exact_limit = options.exact_limit;
  mc.max_explorations = options.max_explorations;
  mc.sigma_const = options.sigma_const;
  mc.z_floor = options.z_floor;
  auto found = find_matching_cut(h, mc);
  if (!found.cut) return std::nullopt;
  return finish(std::move(*found.cut), found.method);
}

}  // namespace rigid1d
