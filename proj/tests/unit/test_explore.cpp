#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "rigid1d/explore.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/rng.hpp"

using namespace rigid1d;

namespace {

// Δ(G[A, V \ A]) by plain degree counting.
int crossing_degree_direct(const Graph& g, const std::vector<Vertex>& a) {
  std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
  for (const Vertex v : a) in[v] = 1;
  int worst = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    int c = 0;
    for (const Vertex w : g.neighbors(v)) c += in[v] != in[w];
    worst = std::max(worst, c);
  }
  return worst;
}

ExploreParams params(std::int64_t sigma, Ratio z) { return ExploreParams{sigma, z}; }

}  // namespace

TEST_CASE("ratio parsing") {
  const Ratio a = Ratio::parse("0.99");
  CHECK(a.num == 99);
  CHECK(a.den == 100);
  const Ratio b = Ratio::parse("2/4");
  CHECK(b.num == 1);
  CHECK(b.den == 2);
  CHECK(Ratio::parse("1").num == 1);
  CHECK_THROWS_AS(Ratio::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Ratio::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Ratio::parse("-1/2"), std::invalid_argument);
}

TEST_CASE("default parameters") {
  const auto p = ExploreParams::defaults(100000);
  CHECK(p.sigma == static_cast<std::int64_t>(std::ceil(6000 * std::log(100000.0))));
  CHECK(p.z_floor.num == 99);
  CHECK(p.z_floor.den == 100);
  CHECK(ExploreParams::defaults(1).sigma == 1);
}

TEST_CASE("triangle never succeeds") {
  // With the default floor |Z_0| = 2 < 0.99 * 3 already fails; with any
  // positive floor both neighbours join X in round 0 and Z is empty in round 1.
  const auto o = explore_from(Graph::complete(3), 0, ExploreParams::defaults(3));
  CHECK(o.status == ExploreStatus::kFailure);
  CHECK(o.rounds == 0);
  const auto loose = explore_from(Graph::complete(3), 0, params(1, {1, 100}), true);
  CHECK(loose.status == ExploreStatus::kFailure);
  CHECK(loose.rounds == 1);
  CHECK(loose.x == 3);
  CHECK(loose.z == 0);
  CHECK(loose.trace[0].revealed == std::vector<Vertex>{1, 2});
}

TEST_CASE("path: the lone neighbour moves to Y and the start is closed off") {
  const Graph p4 = Graph::path(4);
  const auto o = explore_from(p4, 0, params(10, {1, 2}));
  CHECK(o.status == ExploreStatus::kSuccess);
  CHECK(o.rounds == 1);
  CHECK(o.a_v == std::vector<Vertex>{0});
  CHECK(crossing_degree_direct(p4, o.a_v) == 1);
  CHECK(cut_degree(p4, o.a_v) == 1);
  CHECK(explore_from(p4, 0, ExploreParams::defaults(4)).status == ExploreStatus::kFailure);
}

TEST_CASE("star: every leaf joins X in the first round") {
  for (const int n : {200, 500}) {
    const auto o = explore_from(Graph::star(n), 0, ExploreParams::defaults(n));
    CHECK(o.status == ExploreStatus::kFailure);
    CHECK(o.rounds == 1);
    CHECK(o.z == 0);
  }
}

TEST_CASE("empty graph: every start succeeds alone") {
  const Graph g(200);
  const auto s = explore_all(g, ExploreParams::defaults(200));
  CHECK(s.success_fraction == 1.0);
  CHECK(s.max_a_v == 1);
  for (Vertex v = 0; v < 200; ++v) {
    CHECK(s.outcomes[v].a_v == std::vector<Vertex>{v});
    CHECK(s.outcomes[v].rounds == 1);
  }
}

TEST_CASE("cycle fixture") {
  // Frozen outcome of the deterministic process on C_200 from vertex 0 with
  // default parameters, recomputed by the reference explorer below.
  const Graph c = Graph::cycle(200);
  const auto o = explore_from(c, 0, ExploreParams::defaults(200), true);
  CHECK(o.status == ExploreStatus::kFailure);
  CHECK(o.rounds == 1);
  CHECK(o.x == 3);
  CHECK(o.x_done == 1);
  CHECK(o.y == 0);
  CHECK(o.z == 197);
  REQUIRE(o.trace.size() == 2);
  CHECK(o.trace[0].rule == ExploreRule::kToX);
  CHECK(o.trace[0].revealed == std::vector<Vertex>{1, 199});
  CHECK(o.trace[1].rule == ExploreRule::kFailure);
  const auto naive = oracle::explore_naive(c, 0, ExploreParams::defaults(200).sigma, {99, 100});
  CHECK_FALSE(naive.success);
  CHECK(naive.rounds == 1);

  // With a permissive floor the two neighbours each expose one fresh vertex,
  // which goes to Y, and X closes.
  const auto loose = explore_from(c, 0, params(1, {1, 1000}));
  CHECK(loose.status == ExploreStatus::kSuccess);
  CHECK(loose.a_v == std::vector<Vertex>{0, 1, 199});
  CHECK(loose.rounds == 3);
  CHECK(loose.y == 2);
}

TEST_CASE("explorer agrees with the reference and keeps its invariants") {
  Rng rng(99);
  for (int t = 0; t < 300; ++t) {
    const int n = 5 + static_cast<int>(rng.below(400));
    const double c = 0.3 + 2.0 * rng.uniform01();
    const Graph g = gen_gnp(n, c / n, rng.next());
    const Ratio z = rng.bernoulli(0.5) ? Ratio{99, 100} : Ratio{1, 2};
    const std::int64_t sigma = rng.bernoulli(0.5) ? ExploreParams::defaults(n).sigma : 1 + static_cast<std::int64_t>(rng.below(4));
    Explorer explorer(g);
    for (int k = 0; k < 5; ++k) {
      const auto v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
      const auto o = explorer.run(v, params(sigma, z), true);
      const auto ref = oracle::explore_naive(g, v, sigma, z);
      CHECK((o.status == ExploreStatus::kSuccess) == ref.success);
      CHECK(o.rounds == ref.rounds);
      CHECK(ref.invariants_ok);
      CHECK(ref.done_growth_violations == 0);
      CHECK(o.rounds <= n);
      CHECK(o.x + o.y + o.z == n);
      for (std::size_t i = 0; i < o.trace.size(); ++i) {
        const auto& r = o.trace[i];
        CHECK(r.index == static_cast<std::int64_t>(i));
        CHECK(r.x + r.y + r.z == n);
        CHECK(r.x_done <= r.x);
        if (r.picked >= 0) CHECK(r.x_done == r.index + 1);
      }
      if (o.status == ExploreStatus::kSuccess) {
        CHECK(std::vector<Vertex>(ref.a_v.begin(), ref.a_v.end()) == o.a_v);
        CHECK(std::binary_search(o.a_v.begin(), o.a_v.end(), v));
        CHECK(static_cast<std::int64_t>(o.a_v.size()) == o.rounds);
        CHECK(o.x == o.x_done);
        CHECK(crossing_degree_direct(g, o.a_v) <= 1);
        CHECK(cut_degree(g, o.a_v) <= 1);
      }
    }
  }
}

TEST_CASE("exploration is deterministic") {
  const Graph g = gen_gnp(5000, 1.1 / 5000, 3);
  const auto p = ExploreParams::defaults(5000);
  for (Vertex v = 0; v < 50; ++v) {
    const auto a = explore_from(g, v, p, true);
    const auto b = explore_from(g, v, p, true);
    CHECK(a.a_v == b.a_v);
    CHECK(a.rounds == b.rounds);
    CHECK(a.trace.size() == b.trace.size());
  }
}

TEST_CASE("exploration rejects bad input") {
  const Graph g = Graph::cycle(5);
  CHECK_THROWS_AS(explore_from(g, 5, ExploreParams::defaults(5)), std::invalid_argument);
  CHECK_THROWS_AS(explore_from(g, -1, ExploreParams::defaults(5)), std::invalid_argument);
  CHECK_THROWS_AS(explore_from(g, 0, params(0, {1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(explore_from(g, 0, params(1, {0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(explore_from(g, 0, params(1, {3, 2})), std::invalid_argument);
}

TEST_CASE("cut degree and open neighbourhood") {
  const Graph c = Graph::cycle(6);
  const std::vector<Vertex> a{0, 1, 2};
  CHECK(cut_degree(c, a) == 1);
  CHECK(open_neighbourhood(c, a) == std::vector<Vertex>{3, 5});
  const std::vector<Vertex> hub{0};
  CHECK(cut_degree(Graph::star(5), hub) == 4);
  const std::vector<Vertex> leaves{1, 2};
  CHECK(cut_degree(Graph::star(5), leaves) == 2);
}

TEST_CASE("deficient set examples") {
  for (const int n : {5, 12, 40}) CHECK(find_deficient_set(Graph::complete(n), 0.4).vertices.empty());
  for (const int n : {6, 20, 40}) {
    const auto d = find_deficient_set(Graph::path(n), 1.0 / n);
    REQUIRE(d.vertices.size() == 1);
    CHECK((d.vertices[0] == 0 || d.vertices[0] == n - 1));
  }
  CHECK_THROWS_AS(find_deficient_set(Graph::path(5), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(find_deficient_set(Graph::path(5), 1.0), std::invalid_argument);
}

TEST_CASE("exact deficient sets are maximum and always satisfy the inequalities") {
  Rng rng(55);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const Graph g = gen_gnp(n, rng.uniform01() * 0.6, rng.next());
    const double eps = 0.05 + 0.9 * rng.uniform01();
    const auto d = find_deficient_set(g, eps);
    CHECK(d.exact);
    CHECK(static_cast<double>(d.vertices.size()) <= eps * n + 1e-9);
    CHECK(open_neighbourhood(g, d.vertices).size() <= d.vertices.size());
    const auto limit = static_cast<std::size_t>(std::floor(eps * n * (1.0 + 1e-12)));
    CHECK(d.vertices.size() == oracle::max_deficient_bruteforce(g, limit));
  }
}

TEST_CASE("heuristic deficient sets are sound") {
  Rng rng(56);
  for (int t = 0; t < 20; ++t) {
    const int n = 3000;
    const Graph g = gen_gnm(n, 40LL * n / 10 + static_cast<std::int64_t>(rng.below(3000)), rng.next());
    const auto d = find_deficient_set(g, 0.05);
    CHECK_FALSE(d.exact);
    CHECK(static_cast<double>(d.vertices.size()) <= 0.05 * n);
    CHECK(open_neighbourhood(g, d.vertices).size() <= d.vertices.size());
  }
  const int n = 3000;
  const Graph g = gen_gnm(n, 20LL * n, 1);
  const auto d = find_deficient_set(g, 0.05);
  CHECK(d.vertices.size() <= static_cast<std::size_t>(0.05 * n));
  CHECK(open_neighbourhood(g, d.vertices).size() <= d.vertices.size());
  CHECK(n - static_cast<int>(d.vertices.size()) >= 0.95 * n);
}
