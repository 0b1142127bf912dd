#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rigid1d/graph.hpp"

namespace rigid1d {

class Rng;

using Rational = mpq_class;

// "num/den" or "num"; the result is canonicalized. Throws on zero denominators
// and malformed text.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Vertex coordinates on the line, total on 0..n-1.
class Embedding {
 public:
  Embedding() = default;
  // Values are canonicalized on construction.
  explicit Embedding(std::vector<Rational> values) : values_(std::move(values)) {
    for (auto& q : values_) q.canonicalize();
  }
  static Embedding from_integers(const std::vector<std::int64_t>& xs);

  int order() const noexcept { return static_cast<int>(values_.size()); }
  const Rational& operator[](Vertex v) const { return values_[static_cast<std::size_t>(v)]; }
  Rational& operator[](Vertex v) { return values_[static_cast<std::size_t>(v)]; }
  const std::vector<Rational>& values() const noexcept { return values_; }

  friend bool operator==(const Embedding& a, const Embedding& b) { return a.values_ == b.values_; }

 private:
  std::vector<Rational> values_;
};

/// Edge lengths indexed like Graph::edges().
struct EdgeLengths {
  std::vector<Edge> edges;
  std::vector<Rational> lengths;

  // Throws std::out_of_range if {a,b} is not in the domain.
  const Rational& at(Vertex a, Vertex b) const;
};

// |f(x) - f(y)| on every edge. Throws std::invalid_argument if f is not total.
EdgeLengths lengths_of(const Graph& g, const Embedding& f);

bool is_injective(const Embedding& f);

// g = f + b or g = -f + b. Throws std::invalid_argument on size mismatch.
bool is_isometric(const Embedding& f, const Embedding& g);

// The unique v with |v - x1| = d1 and |v - x2| = d2, if any. Requires x1 != x2.
std::optional<Rational> position_from_two_anchors(const Rational& x1, const Rational& d1,
                                                  const Rational& x2, const Rational& d2);

// Representative of the isometry class: `first` at 0, and `second` (the
// vertex whose sign decides the reflection) at a positive coordinate.
Embedding canonical_form(const Embedding& f, Vertex first = 0, Vertex second = 1);

/// Embeddings that deliberately repeat pairwise distances.
enum class BatteryKind {
  kSmallRange,   // distinct integers drawn from [0, R] with R close to n
  kArithmetic,   // a + k*d, vertices shuffled
  kDoubling,     // 2^k - 1 style gaps, then differences copied to force repeats
  kRationalGrid  // distinct multiples of 1/q in a short window
};

Embedding adversarial_embedding(int n, BatteryKind kind, Rng& rng);

// `count` embeddings cycling through all kinds, drawn from `rng`.
std::vector<Embedding> adversarial_battery(int n, int count, Rng& rng);

}  // namespace rigid1d
