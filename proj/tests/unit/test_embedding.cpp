#include <doctest.h>

#include <set>
#include <stdexcept>

#include "rigid1d/embedding.hpp"
#include "rigid1d/generators.hpp"
#include "rigid1d/rng.hpp"

using namespace rigid1d;

namespace {

Rational rat(std::int64_t a, std::int64_t b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Embedding ints(std::initializer_list<std::int64_t> xs) { return Embedding::from_integers(xs); }

Embedding random_embedding(int n, Rng& rng) {
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.emplace_back(rng.between(-50, 50), rng.between(1, 6));
  for (auto& q : v) q.canonicalize();
  return Embedding(std::move(v));
}

Embedding affine(const Embedding& f, int a, Rational b) {
  b.canonicalize();
  std::vector<Rational> v;
  for (const auto& x : f.values()) v.push_back(a * x + b);
  return Embedding(std::move(v));
}

}  // namespace

TEST_CASE("rational text") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(format_rational(parse_rational("6/4")) == "3/2");
  CHECK(format_rational(parse_rational("-3")) == "-3");
  CHECK(format_rational(parse_rational("0/7")) == "0");
  CHECK(parse_rational("-1/-2") == Rational(1, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1/2/3"));
}

TEST_CASE("lengths_of examples") {
  const Graph tri = Graph::complete(3);
  const auto l = lengths_of(tri, ints({0, 1, 3}));
  CHECK(l.at(0, 1) == 1);
  CHECK(l.at(1, 2) == 2);
  CHECK(l.at(0, 2) == 3);

  const auto c = lengths_of(Graph::cycle(4), ints({0, 1, 3, 2}));
  CHECK(c.at(0, 1) == 1);
  CHECK(c.at(1, 2) == 2);
  CHECK(c.at(2, 3) == 1);
  CHECK(c.at(3, 0) == 2);
  CHECK_THROWS_AS(c.at(0, 2), std::out_of_range);

  CHECK_THROWS_AS(lengths_of(tri, ints({0, 1})), std::invalid_argument);
}

TEST_CASE("lengths are invariant under isometries") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(12));
    const Graph g = gen_gnp(n, 0.5, rng.next());
    const Embedding f = random_embedding(n, rng);
    Rational b(rng.between(-100, 100), rng.between(1, 9));
    b.canonicalize();
    for (const int a : {1, -1}) {
      const auto lf = lengths_of(g, f);
      const auto lg = lengths_of(g, affine(f, a, b));
      CHECK(lf.lengths == lg.lengths);
    }
  }
}

TEST_CASE("is_isometric examples") {
  CHECK(is_isometric(ints({0, 1, 3}), ints({5, 4, 2})));
  CHECK_FALSE(is_isometric(ints({0, 1, 3}), ints({0, 1, -1})));
  CHECK(is_isometric(ints({0, 1, 3}), ints({0, 1, 3})));
  CHECK(is_isometric(Embedding{}, Embedding{}));
  CHECK_THROWS_AS(is_isometric(ints({0, 1}), ints({0, 1, 2})), std::invalid_argument);
}

TEST_CASE("is_isometric is an equivalence relation") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const Embedding f = random_embedding(n, rng);
    const Embedding g = affine(f, rng.bernoulli(0.5) ? 1 : -1, Rational(rng.between(-9, 9), 2));
    const Embedding h = affine(g, rng.bernoulli(0.5) ? 1 : -1, Rational(rng.between(-9, 9), 3));
    const Embedding other = random_embedding(n, rng);
    CHECK(is_isometric(f, f));
    CHECK(is_isometric(f, g) == is_isometric(g, f));
    CHECK(is_isometric(f, g));
    CHECK(is_isometric(g, h));
    CHECK(is_isometric(f, h));
    CHECK(is_isometric(f, other) == is_isometric(other, f));
    if (is_isometric(f, other)) CHECK(is_isometric(h, other));
  }
}

TEST_CASE("is_injective examples") {
  CHECK(is_injective(ints({0, 1, 3})));
  CHECK_FALSE(is_injective(ints({0, 1, 0})));
  CHECK(is_injective(Embedding{}));
  CHECK_FALSE(is_injective(Embedding({Rational(1, 2), Rational(2, 4)})));
}

TEST_CASE("position_from_two_anchors examples") {
  CHECK(position_from_two_anchors(0, 2, 3, 1) == Rational(2));
  CHECK(position_from_two_anchors(0, 5, 3, 2) == Rational(5));
  CHECK_FALSE(position_from_two_anchors(0, 1, 10, 1).has_value());
  CHECK(position_from_two_anchors(Rational(1, 3), Rational(1, 6), Rational(2, 3), Rational(1, 6)) == Rational(1, 2));
}

TEST_CASE("position_from_two_anchors solves both equations and round trips") {
  Rng rng(21);
  for (int t = 0; t < 2000; ++t) {
    const Rational x1 = rat(rng.between(-20, 20), rng.between(1, 4));
    Rational x2 = rat(rng.between(-20, 20), rng.between(1, 4));
    if (x1 == x2) x2 += 1;
    const Rational d1 = rat(rng.between(0, 20), rng.between(1, 4));
    const Rational d2 = rat(rng.between(0, 20), rng.between(1, 4));
    int exact = 0;
    for (const Rational& c : {Rational(x1 + d1), Rational(x1 - d1)})
      if (abs(c - x2) == d2) ++exact;
    const auto v = position_from_two_anchors(x1, d1, x2, d2);
    if (v) {
      CHECK(abs(*v - x1) == d1);
      CHECK(abs(*v - x2) == d2);
    }
    CHECK(v.has_value() == (exact > 0));

    const Rational w = rat(rng.between(-40, 40), rng.between(1, 4));
    if (w == x1 || w == x2) continue;
    CHECK(position_from_two_anchors(x1, abs(x1 - w), x2, abs(x2 - w)) == w);
  }
}

TEST_CASE("canonical_form") {
  const Embedding c = canonical_form(ints({5, 3, 9}));
  CHECK(c == ints({0, 2, -4}));
  CHECK(canonical_form(ints({5, 7, 9})) == ints({0, 2, 4}));
  CHECK(canonical_form(ints({5, 7, 9}), 0, 2) == ints({0, 2, 4}));
  CHECK(canonical_form(ints({5, 3, 9}), 0, 2) == ints({0, -2, 4}));
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const Embedding f = random_embedding(6, rng);
    if (!is_injective(f)) continue;
    const Embedding c2 = canonical_form(f);
    CHECK(is_isometric(f, c2));
    CHECK(c2[0] == 0);
    CHECK(sgn(c2[1]) > 0);
    CHECK(canonical_form(affine(f, -1, 7)) == c2);
  }
}

TEST_CASE("adversarial battery is injective and degenerate") {
  Rng rng(8);
  for (const int n : {2, 5, 16, 24, 60}) {
    const auto battery = adversarial_battery(n, 20, rng);
    CHECK(battery.size() == 20);
    std::size_t repeated = 0;
    for (const Embedding& f : battery) {
      CHECK(f.order() == n);
      CHECK(is_injective(f));
      std::set<Rational> distances;
      std::size_t pairs = 0;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
          distances.insert(abs(f[u] - f[v]));
          ++pairs;
        }
      if (distances.size() < pairs) ++repeated;
    }
    if (n >= 16) CHECK(repeated == battery.size());
  }
}
