#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "rigid1d/enumerate.hpp"
#include "rigid1d/graph.hpp"
#include "rigid1d/rng.hpp"
#include "rigid1d/structure.hpp"

using namespace rigid1d;

TEST_CASE("graph rejects loops, duplicates and bad endpoints") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(-1), std::invalid_argument);
}

TEST_CASE("adjacency agrees with the edge set") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(12));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.bernoulli(0.4)) edges.emplace_back(v, u);
    const Graph g(n, edges);
    std::size_t half_edges = 0;
    for (Vertex v = 0; v < n; ++v) {
      half_edges += g.neighbors(v).size();
      for (const Vertex w : g.neighbors(v)) {
        CHECK(g.has_edge(v, w));
        CHECK(g.edge_index(v, w) >= 0);
      }
    }
    CHECK(half_edges == 2 * g.size());
    for (const Edge& e : g.edges()) CHECK(e.u < e.v);
  }
}

TEST_CASE("named graphs") {
  CHECK(Graph::complete(5).size() == 10);
  CHECK(Graph::cycle(4).size() == 4);
  CHECK(Graph::path(3).size() == 2);
  CHECK(Graph::star(20).degree(0) == 19);
  const Graph p = Graph::petersen();
  CHECK(p.order() == 10);
  CHECK(p.size() == 15);
  for (Vertex v = 0; v < 10; ++v) CHECK(p.degree(v) == 3);
}

TEST_CASE("text format round trip is canonical") {
  const std::string text = "# comment\n4 3\n\n2 3\n0 1\n# another\n1 2\n";
  std::istringstream in(text);
  const Graph g = read_graph(in);
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  std::ostringstream out;
  write_graph(out, g);
  CHECK(out.str() == "4 3\n0 1\n1 2\n2 3\n");
  std::istringstream again(out.str());
  CHECK(read_graph(again) == g);
}

TEST_CASE("text format rejects bad input") {
  std::istringstream short_list("3 2\n0 1\n");
  CHECK_THROWS(read_graph(short_list));
  std::istringstream loop("2 1\n1 1\n");
  CHECK_THROWS(read_graph(loop));
  std::istringstream junk("x y\n");
  CHECK_THROWS(read_graph(junk));
}

TEST_CASE("is_2_connected examples") {
  CHECK(is_2_connected(Graph::cycle(4)));
  CHECK_FALSE(is_2_connected(Graph::path(3)));
  CHECK_FALSE(is_2_connected(Graph::complete(2)));
  CHECK_FALSE(is_2_connected(Graph(1)));
  CHECK(is_2_connected(Graph::complete(3)));
  // Two triangles sharing a vertex.
  CHECK_FALSE(is_2_connected(Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}})));
}

TEST_CASE("is_2_connected matches vertex deletion on all graphs with n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto pairs = all_pairs(n);
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
      const Graph g = graph_from_mask(n, mask, pairs);
      bool expect = n >= 3 && is_connected(g);
      for (Vertex cut = 0; cut < n && expect; ++cut) {
        std::vector<Vertex> rest;
        for (Vertex v = 0; v < n; ++v)
          if (v != cut) rest.push_back(v);
        if (!is_connected(induced(g, rest).graph)) expect = false;
      }
      CHECK(is_2_connected(g) == expect);
    }
  }
}

TEST_CASE("induced subgraphs") {
  const Graph k4 = Graph::complete(4);
  const std::vector<Vertex> tri{0, 1, 2};
  CHECK(induced(k4, tri).graph == Graph::complete(3));
  const Graph c5 = Graph::cycle(5);
  const std::vector<Vertex> all{0, 1, 2, 3, 4};
  CHECK(induced(c5, all).graph == c5);
  const std::vector<Vertex> adjacent{2, 3};
  const auto sub = induced(c5, adjacent);
  CHECK(sub.graph.order() == 2);
  CHECK(sub.graph.size() == 1);
  CHECK(sub.to_parent == adjacent);
  const std::vector<Vertex> bad{0, 7};
  CHECK_THROWS_AS(induced(c5, bad), std::invalid_argument);
}

TEST_CASE("shortest cycles") {
  CHECK_FALSE(find_shortest_cycle(Graph::path(6)).has_value());
  CHECK_FALSE(find_shortest_cycle(Graph::star(6)).has_value());
  const auto k4 = find_shortest_cycle(Graph::complete(4));
  REQUIRE(k4.has_value());
  CHECK(k4->size() == 3);
  const Graph p = Graph::petersen();
  const auto c = find_shortest_cycle(p);
  REQUIRE(c.has_value());
  CHECK(c->size() == 5);
  CHECK(girth(p) == 5);
  for (std::size_t i = 0; i < c->size(); ++i) CHECK(p.has_edge((*c)[i], (*c)[(i + 1) % c->size()]));
}

TEST_CASE("shortest cycle length equals girth from cycle enumeration, n <= 8") {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));
    std::vector<Edge> edges;
    const double p = 0.15 + 0.5 * rng.uniform01();
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) edges.emplace_back(u, v);
    const Graph g(n, edges);
    const int expect = oracle::girth_by_cycles(g);
    const auto c = find_shortest_cycle(g);
    CHECK(girth(g) == expect);
    if (expect == 0) {
      CHECK_FALSE(c.has_value());
    } else {
      REQUIRE(c.has_value());
      CHECK(static_cast<int>(c->size()) == expect);
      for (std::size_t i = 0; i < c->size(); ++i) CHECK(g.has_edge((*c)[i], (*c)[(i + 1) % c->size()]));
    }
  }
}

TEST_CASE("F1/F2 detection examples") {
  CHECK(contains_F1_or_F2(Graph::complete(4)));
  CHECK_FALSE(contains_F1_or_F2(Graph::cycle(5)));
  CHECK_FALSE(contains_F1_or_F2(Graph::petersen()));
  CHECK(contains_F1_or_F2(Graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}})));  // K_{2,3}
  CHECK(contains_F1_or_F2(Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}})));          // K4 minus an edge
  CHECK_FALSE(contains_F1_or_F2(Graph::cycle(4)));
}

TEST_CASE("F1/F2 detection agrees with naive subgraph search on all graphs with n <= 6") {
  for (int n = 1; n <= 6; ++n) {
    const auto pairs = all_pairs(n);
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
      const Graph g = graph_from_mask(n, mask, pairs);
      CHECK(contains_F1_or_F2(g) == (oracle::contains_f1_naive(g) || oracle::contains_f2_naive(g)));
    }
  }
}

TEST_CASE("F1/F2 detection agrees with naive subgraph search on random graphs with n = 7") {
  Rng rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const Graph g = graph_from_mask(7, rng.below(1ULL << 21), all_pairs(7));
    CHECK(contains_F1_or_F2(g) == (oracle::contains_f1_naive(g) || oracle::contains_f2_naive(g)));
  }
}

TEST_CASE("components") {
  const Graph g(6, {{0, 1}, {2, 3}, {3, 4}});
  const auto labels = component_labels(g);
  CHECK(labels == std::vector<int>{0, 0, 1, 1, 1, 2});
  CHECK(component_count(g) == 3);
  CHECK_FALSE(is_connected(g));
  CHECK(is_connected(Graph(1)));
  CHECK(is_connected(Graph(0)));
}

TEST_CASE("max crossing degree") {
  const Graph c4 = Graph::cycle(4);
  CHECK(max_crossing_degree(c4, {true, true, false, false}) == 1);
  CHECK(max_crossing_degree(c4, {true, false, true, false}) == 2);
}

TEST_CASE("canonical codes identify isomorphic graphs") {
  const Graph a(4, {{0, 1}, {1, 2}});
  const Graph b(4, {{2, 3}, {3, 0}});
  const Graph c(4, {{0, 1}, {2, 3}});
  CHECK(canonical_code(a) == canonical_code(b));
  CHECK(canonical_code(a) != canonical_code(c));
}

TEST_CASE("regular graph enumeration counts isomorphism classes") {
  // Known counts of cubic graphs (connected or not) on 4, 6, 8 vertices and
  // of 2-regular graphs on 6, 7, 8 vertices (partitions into cycles >= 3).
  CHECK(enumerate_regular_graphs(4, 3).size() == 1);
  CHECK(enumerate_regular_graphs(6, 3).size() == 2);
  CHECK(enumerate_regular_graphs(8, 3).size() == 6);
  CHECK(enumerate_regular_graphs(6, 2).size() == 2);
  CHECK(enumerate_regular_graphs(7, 2).size() == 2);
  CHECK(enumerate_regular_graphs(8, 2).size() == 3);
  CHECK(enumerate_regular_graphs(5, 3).empty());
  for (const auto& g : enumerate_regular_graphs(8, 3))
    for (Vertex v = 0; v < 8; ++v) CHECK(g.degree(v) == 3);
}

TEST_CASE("connected labeled graph counts") {
  // 1, 1, 4, 38, 728, 26704: connected labeled graphs on 1..6 vertices.
  const std::vector<std::uint64_t> expect{1, 1, 4, 38, 728, 26704};
  for (int n = 1; n <= 6; ++n) {
    const auto pairs = all_pairs(n);
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) count += mask_connected(n, mask, pairs);
    CHECK(count == expect[static_cast<std::size_t>(n - 1)]);
  }
}
