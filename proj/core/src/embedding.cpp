#include "rigid1d/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rigid1d/rng.hpp"

namespace rigid1d {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("rational: empty string");
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("rational: malformed '" + s + "'");
    return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s));
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("rational: malformed '" + s + "'");
  const mpz_class d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw std::invalid_argument("rational: zero denominator in '" + s + "'");
  Rational q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

Embedding Embedding::from_integers(const std::vector<std::int64_t>& xs) {
  std::vector<Rational> values;
  values.reserve(xs.size());
  for (const auto x : xs) values.emplace_back(static_cast<long>(x));
  return Embedding(std::move(values));
}

const Rational& EdgeLengths::at(Vertex a, Vertex b) const {
  const Edge key(a, b);
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) {
    throw std::out_of_range("edge lengths: no length for " + std::to_string(key.u) + "-" +
                            std::to_string(key.v));
  }
  return lengths[static_cast<std::size_t>(it - edges.begin())];
}

EdgeLengths lengths_of(const Graph& g, const Embedding& f) {
  if (f.order() != g.order()) {
    throw std::invalid_argument("lengths_of: embedding has " + std::to_string(f.order()) +
                                " values for " + std::to_string(g.order()) + " vertices");
  }
  EdgeLengths out;
  out.edges.assign(g.edges().begin(), g.edges().end());
  out.lengths.reserve(out.edges.size());
  for (const Edge& e : out.edges) out.lengths.push_back(abs(f[e.u] - f[e.v]));
  return out;
}

bool is_injective(const Embedding& f) {
  std::vector<const Rational*> sorted;
  sorted.reserve(f.values().size());
  for (const auto& x : f.values()) sorted.push_back(&x);
  std::sort(sorted.begin(), sorted.end(), [](const Rational* a, const Rational* b) { return *a < *b; });
  return std::adjacent_find(sorted.begin(), sorted.end(),
                            [](const Rational* a, const Rational* b) { return *a == *b; }) == sorted.end();
}

bool is_isometric(const Embedding& f, const Embedding& g) {
  if (f.order() != g.order()) throw std::invalid_argument("is_isometric: vertex sets differ");
  if (f.order() == 0) return true;
  const Rational shift = g[0] - f[0];
  const Rational mirror = g[0] + f[0];
  bool plus = true;
  bool minus = true;
  for (Vertex v = 0; v < f.order() && (plus || minus); ++v) {
    if (plus && g[v] != f[v] + shift) plus = false;
    if (minus && g[v] != mirror - f[v]) minus = false;
  }
  return plus || minus;
}

std::optional<Rational> position_from_two_anchors(const Rational& x1, const Rational& d1,
                                                  const Rational& x2, const Rational& d2) {
  if (x1 == x2) throw std::invalid_argument("position_from_two_anchors: anchors coincide");
  if (sgn(d1) < 0 || sgn(d2) < 0) throw std::invalid_argument("position_from_two_anchors: negative length");
  const Rational first[2] = {x1 - d1, x1 + d1};
  for (const Rational& v : first) {
    if (abs(v - x2) == d2) return v;
  }
  return std::nullopt;
}

Embedding canonical_form(const Embedding& f, Vertex first, Vertex second) {
  if (f.order() == 0) return f;
  std::vector<Rational> values = f.values();
  const Rational base = values[static_cast<std::size_t>(first)];
  for (auto& x : values) x -= base;
  if (second >= 0 && second < f.order() && sgn(values[static_cast<std::size_t>(second)]) < 0) {
    for (auto& x : values) x = -x;
  }
  return Embedding(std::move(values));
}

namespace {

std::vector<std::int64_t> distinct_from_range(int n, std::int64_t range, Rng& rng) {
  // Partial Fisher-Yates over [0, range].
  std::vector<std::int64_t> pool(static_cast<std::size_t>(range + 1));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(n));
  return pool;
}

}  // namespace

Embedding adversarial_embedding(int n, BatteryKind kind, Rng& rng) {
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(n));
  switch (kind) {
    case BatteryKind::kSmallRange: {
      const std::int64_t range = n + n / 4 + static_cast<std::int64_t>(rng.below(3));
      for (const auto x : distinct_from_range(n, range, rng)) values.emplace_back(static_cast<long>(x));
      break;
    }
    case BatteryKind::kArithmetic: {
      const long start = static_cast<long>(rng.between(-10, 10));
      const long step = static_cast<long>(rng.between(1, 5));
      std::vector<long> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0L);
      rng.shuffle(order);
      for (const long k : order) values.emplace_back(start + k * step);
      break;
    }
    case BatteryKind::kDoubling: {
      std::set<Rational> used;
      for (int i = 0; i < n; ++i) {
        mpz_class p = 1;
        p <<= i;
        values.emplace_back(p - 1);
        used.insert(values.back());
      }
      // Copy existing differences onto a quarter of the points.
      if (n >= 4) {
        for (int r = 0; r < n / 4 + 1; ++r) {
          const auto k = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
          const auto a = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
          const auto b = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
          const auto c = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
          if (k == a || b == c) continue;
          const Rational candidate = values[a] + (values[b] - values[c]);
          if (used.count(candidate) != 0) continue;
          used.erase(values[k]);
          values[k] = candidate;
          used.insert(candidate);
        }
      }
      rng.shuffle(values);
      break;
    }
    case BatteryKind::kRationalGrid: {
      const long q = static_cast<long>(rng.between(2, 7));
      const std::int64_t range = n + n / 2 + 1;
      for (const auto x : distinct_from_range(n, range, rng)) {
        values.emplace_back(static_cast<long>(x), q);
        values.back().canonicalize();
      }
      break;
    }
  }
  return Embedding(std::move(values));
}

std::vector<Embedding> adversarial_battery(int n, int count, Rng& rng) {
  static constexpr BatteryKind kinds[] = {BatteryKind::kSmallRange, BatteryKind::kArithmetic,
                                          BatteryKind::kDoubling, BatteryKind::kRationalGrid};
  std::vector<Embedding> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(adversarial_embedding(n, kinds[i % 4], rng));
  return out;
}

}  // namespace rigid1d
