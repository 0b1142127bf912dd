#include "rigid1d/explore.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace rigid1d {

Ratio Ratio::parse(const std::string& text) {
  auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  Ratio r;
  const auto slash = text.find('/');
  const auto dot = text.find('.');
  if (slash != std::string::npos) {
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    if (!digits_only(a) || !digits_only(b)) throw std::invalid_argument("ratio: malformed '" + text + "'");
    r = {std::stoll(a), std::stoll(b)};
  } else if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!digits_only(whole) || !digits_only(frac) || frac.size() > 15) {
      throw std::invalid_argument("ratio: malformed '" + text + "'");
    }
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = {std::stoll(whole) * den + std::stoll(frac), den};
  } else {
    if (!digits_only(text)) throw std::invalid_argument("ratio: malformed '" + text + "'");
    r = {std::stoll(text), 1};
  }
  if (r.den == 0) throw std::invalid_argument("ratio: zero denominator");
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

ExploreParams ExploreParams::defaults(int n, double sigma_const, Ratio z_floor) {
  ExploreParams p;
  const double raw = n > 1 ? std::ceil(sigma_const * std::log(static_cast<double>(n))) : 1.0;
  p.sigma = std::max<std::int64_t>(1, static_cast<std::int64_t>(raw));
  p.z_floor = z_floor;
  return p;
}

const char* to_string(ExploreStatus s) noexcept {
  return s == ExploreStatus::kSuccess ? "success" : "failure";
}

const char* to_string(ExploreRule r) noexcept {
  switch (r) {
    case ExploreRule::kFailure: return "failure";
    case ExploreRule::kSuccess: return "success";
    case ExploreRule::kToY: return "to_y";
    case ExploreRule::kToX: return "to_x";
  }
  return "?";
}

Explorer::Explorer(const Graph& g) : g_(g), where_(static_cast<std::size_t>(g.order()), Where::kZ) {}

ExplorationOutcome Explorer::run(Vertex v, const ExploreParams& params, bool record_trace) {
  if (!g_.contains(v)) throw std::invalid_argument("explore: vertex " + std::to_string(v) + " not in graph");
  if (params.sigma < 1) throw std::invalid_argument("explore: sigma must be >= 1");
  if (params.z_floor.den <= 0 || params.z_floor.num <= 0 || params.z_floor.num > params.z_floor.den) {
    throw std::invalid_argument("explore: z_floor must lie in (0, 1]");
  }
  const auto n = static_cast<std::int64_t>(g_.order());
  // |Z| < num/den * n  <=>  |Z| * den < num * n
  const __int128 floor_rhs = static_cast<__int128>(params.z_floor.num) * n;

  ExplorationOutcome out;
  out.start = v;
  std::vector<Vertex> queue{v};  // X in insertion order; X^- is queue[0, head)
  std::size_t head = 0;
  std::int64_t y = 0;
  where_[v] = Where::kX;
  touched_.push_back(v);
  std::vector<Vertex> revealed;

  auto sizes = [&](auto& rec) {
    rec.x = static_cast<std::int64_t>(queue.size());
    rec.x_done = static_cast<std::int64_t>(head);
    rec.y = y;
    rec.z = n - rec.x - y;
  };

  for (std::int64_t i = 0;; ++i) {
    const std::int64_t z = n - static_cast<std::int64_t>(queue.size()) - y;
    if (i <= params.sigma && static_cast<__int128>(z) * params.z_floor.den < floor_rhs) {
      out.status = ExploreStatus::kFailure;
      out.rounds = i;
      if (record_trace) {
        ExploreRound rec{i, -1, {}, ExploreRule::kFailure};
        sizes(rec);
        out.trace.push_back(std::move(rec));
      }
      break;
    }
    if (head == queue.size()) {
      out.status = ExploreStatus::kSuccess;
      out.rounds = i;
      out.a_v = queue;
      std::sort(out.a_v.begin(), out.a_v.end());
      if (record_trace) {
        ExploreRound rec{i, -1, {}, ExploreRule::kSuccess};
        sizes(rec);
        out.trace.push_back(std::move(rec));
      }
      break;
    }
    const Vertex vi = queue[head++];
    where_[vi] = Where::kDone;

    revealed.clear();
    bool touches_y = false;
    std::int64_t fresh = 0;
    for (const Vertex w : g_.neighbors(vi)) {
      if (where_[w] == Where::kY) {
        touches_y = true;
        revealed.push_back(w);
      } else if (where_[w] == Where::kZ) {
        ++fresh;
        revealed.push_back(w);
      }
    }
    ExploreRule rule;
    if (!touches_y && fresh <= 1) {
      rule = ExploreRule::kToY;
      for (const Vertex w : revealed) {
        where_[w] = Where::kY;
        touched_.push_back(w);
        ++y;
      }
    } else {
      rule = ExploreRule::kToX;
      for (const Vertex w : revealed) {
        if (where_[w] == Where::kY) --y;
        else touched_.push_back(w);
        where_[w] = Where::kX;
        queue.push_back(w);
      }
    }
    if (record_trace) {
      ExploreRound rec{i, vi, revealed, rule};
      sizes(rec);
      out.trace.push_back(std::move(rec));
    }
  }
  out.x = static_cast<std::int64_t>(queue.size());
  out.x_done = static_cast<std::int64_t>(head);
  out.y = y;
  out.z = n - out.x - y;

  for (const Vertex w : touched_) where_[w] = Where::kZ;
  touched_.clear();
  return out;
}

ExplorationOutcome explore_from(const Graph& g, Vertex v, const ExploreParams& params, bool record_trace) {
  Explorer explorer(g);
  return explorer.run(v, params, record_trace);
}

ExploreSummary explore_all(const Graph& g, const ExploreParams& params) {
  ExploreSummary summary;
  Explorer explorer(g);
  std::size_t successes = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto outcome = explorer.run(v, params);
    if (outcome.status == ExploreStatus::kSuccess) {
      ++successes;
      summary.max_a_v = std::max(summary.max_a_v, outcome.a_v.size());
    }
    summary.outcomes.push_back(std::move(outcome));
  }
  summary.success_fraction =
      g.order() == 0 ? 1.0 : static_cast<double>(successes) / static_cast<double>(g.order());
  return summary;
}

int cut_degree(const Graph& g, std::span<const Vertex> a) {
  std::unordered_map<Vertex, int> inside;  // vertex -> index in a
  inside.reserve(a.size() * 2);
  for (std::size_t i = 0; i < a.size(); ++i) inside.emplace(a[i], static_cast<int>(i));
  std::unordered_map<Vertex, int> outside_hits;
  int worst = 0;
  for (const Vertex x : a) {
    int crossing = 0;
    for (const Vertex y : g.neighbors(x)) {
      if (inside.count(y) != 0) continue;
      ++crossing;
      worst = std::max(worst, ++outside_hits[y]);
    }
    worst = std::max(worst, crossing);
  }
  return worst;
}

std::vector<Vertex> open_neighbourhood(const Graph& g, std::span<const Vertex> a) {
  std::vector<Vertex> members(a.begin(), a.end());
  std::sort(members.begin(), members.end());
  std::vector<Vertex> out;
  for (const Vertex x : a) {
    for (const Vertex y : g.neighbors(x)) {
      if (!std::binary_search(members.begin(), members.end(), y)) out.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct ExactDeficient {
  const std::vector<std::uint64_t>& nbr;
  int n;
  int limit;
  std::uint64_t best = 0;
  int best_size = 0;

  void search(int v, std::uint64_t set, std::uint64_t reach, int size) {
    if (v == n) {
      const int boundary = __builtin_popcountll(reach & ~set);
      if (boundary <= size && size > best_size) {
        best_size = size;
        best = set;
      }
      return;
    }
    // Remaining vertices cannot produce a larger set.
    if (size + (n - v) <= best_size) return;
    if (size < limit) search(v + 1, set | (1ULL << v), reach | nbr[static_cast<std::size_t>(v)], size + 1);
    search(v + 1, set, reach, size);
  }
};

}  // namespace

DeficientSet find_deficient_set(const Graph& g, double eps, int exact_limit) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("find_deficient_set: eps must lie in (0, 1)");
  const int n = g.order();
  const int limit = static_cast<int>(std::floor(eps * n * (1.0 + 1e-12)));
  DeficientSet out;
  if (limit <= 0) {
    out.exact = true;
    return out;
  }

  if (n <= std::min(exact_limit, 62)) {
    std::vector<std::uint64_t> nbr(static_cast<std::size_t>(n), 0);
    for (const Edge& e : g.edges()) {
      nbr[static_cast<std::size_t>(e.u)] |= 1ULL << e.v;
      nbr[static_cast<std::size_t>(e.v)] |= 1ULL << e.u;
    }
    ExactDeficient search{nbr, n, limit};
    search.search(0, 0, 0, 0);
    for (Vertex v = 0; v < n; ++v)
      if (search.best >> v & 1ULL) out.vertices.push_back(v);
    out.exact = true;
    return out;
  }

  // Greedy harvest: small components, then sets grown outward from vertices
  // of degree <= 1 while the boundary stays no larger than the set.
  std::vector<std::vector<Vertex>> candidates;
  {
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    for (Vertex s = 0; s < n; ++s) {
      if (label[s] != -1) continue;
      std::vector<Vertex> comp{s};
      label[s] = s;
      for (std::size_t i = 0; i < comp.size() && static_cast<int>(comp.size()) <= limit; ++i) {
        for (const Vertex y : g.neighbors(comp[i])) {
          if (label[y] == -1) {
            label[y] = s;
            comp.push_back(y);
          }
        }
      }
      // Finish labeling big components without keeping them.
      if (static_cast<int>(comp.size()) > limit) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
          for (const Vertex y : g.neighbors(comp[i])) {
            if (label[y] == -1) {
              label[y] = s;
              comp.push_back(y);
            }
          }
        }
        continue;
      }
      candidates.push_back(std::move(comp));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) > 1) continue;
    std::vector<Vertex> set{v};
    bool grew = true;
    while (grew && static_cast<int>(set.size()) < limit) {
      grew = false;
      for (const Vertex u : open_neighbourhood(g, set)) {
        std::vector<Vertex> bigger = set;
        bigger.push_back(u);
        if (open_neighbourhood(g, bigger).size() <= bigger.size()) {
          set = std::move(bigger);
          grew = true;
          break;
        }
      }
    }
    candidates.push_back(std::move(set));
  }

  std::vector<Vertex> current;
  for (auto& cand : candidates) {
    std::sort(cand.begin(), cand.end());
    std::vector<Vertex> merged;
    std::set_union(current.begin(), current.end(), cand.begin(), cand.end(), std::back_inserter(merged));
    if (static_cast<int>(merged.size()) > limit) continue;
    if (open_neighbourhood(g, merged).size() <= merged.size()) current = std::move(merged);
  }
  out.vertices = std::move(current);
  out.exact = false;
  return out;
}

}  // namespace rigid1d
