#pragma once

// Seeded randomness. Every random decision in the library is a pure function
// of (seed, stream, counter) through the SplitMix64 finalizer, so results do
// not depend on call order, thread scheduling, or the standard library's
// distribution implementations.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cycleshred/graph.hpp"

namespace cycleshred {

using Seed = std::uint64_t;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for an independent stream.
constexpr Seed derive_seed(Seed seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(Seed seed, std::uint64_t stream = 0) : key_(derive_seed(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in [0, 1).
  double uniform() { return to_unit((*this)()); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Fisher-Yates with our own index draws (std::shuffle is not portable
/// across standard libraries).
template <typename T>
void shuffle(std::vector<T>& items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Uniform draw keyed by an edge; independent of enumeration order.
inline double edge_uniform(Seed seed, std::uint64_t stream, const Edge& e) {
  return to_unit(splitmix64(derive_seed(seed, stream) ^ splitmix64(edge_key(e))));
}

inline std::optional<Seed> env_seed() {
  const char* raw = std::getenv("CYCLESHRED_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used, 0);
    if (used != std::string(raw).size()) return std::nullopt;
    return value;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline Seed default_seed() { return env_seed().value_or(0); }

/// G(n, p) by geometric skipping over the pairs (w, v), w < v, ordered by v
/// then w. Expected time O(n + m).
inline Graph gnp(std::size_t n, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  if (n < 1) throw InputError("gnp needs n >= 1");
  Graph g(n);
  if (p == 0.0) return g;
  if (p == 1.0) {
    for (Vertex v = 1; v < n; ++v) {
      for (Vertex w = 0; w < v; ++w) g.add_edge(w, v);
    }
    return g;
  }
  CounterRng rng(seed, 0x676e70);
  const double log_q = std::log1p(-p);
  double v = 1.0;
  double w = -1.0;
  const auto nd = static_cast<double>(n);
  while (v < nd) {
    const double r = rng.uniform();
    w += 1.0 + std::floor(std::log1p(-r) / log_q);
    while (w >= v && v < nd) {
      w -= v;
      v += 1.0;
    }
    if (v < nd) g.add_edge(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return g;
}

/// Probabilities p_1..p_k of a random edge split; part k+1 gets the rest.
class SplitSpec {
 public:
  static constexpr double kSlack = 1e-12;

  SplitSpec() = default;
  explicit SplitSpec(std::vector<double> probs) : probs_(std::move(probs)) {
    double total = 0.0;
    for (double q : probs_) {
      if (!(q >= 0.0 && q <= 1.0)) throw InputError("split probability outside [0, 1]");
      total += q;
    }
    if (total > 1.0 + kSlack) throw InputError("split probabilities sum above 1");
  }

  /// `parts` equal shares (the last one implicit).
  static SplitSpec uniform(std::size_t parts) {
    if (parts == 0) throw InputError("uniform split needs at least one part");
    return SplitSpec(std::vector<double>(parts - 1, 1.0 / static_cast<double>(parts)));
  }

  std::size_t part_count() const { return probs_.size() + 1; }
  const std::vector<double>& probabilities() const { return probs_; }

  std::size_t part_for(double u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      acc += probs_[i];
      if (u < acc) return i;
    }
    return probs_.size();
  }

 private:
  std::vector<double> probs_;
};

/// Independent per-edge assignment to `spec.part_count()` edge-disjoint parts.
inline std::vector<Graph> split(const Graph& g, const SplitSpec& spec, Seed seed) {
  std::vector<Graph> parts(spec.part_count(), Graph(g.vertex_count()));
  for (const Edge& e : g.edge_list()) {
    parts[spec.part_for(edge_uniform(seed, 0x73706c, e))].add_edge(e.u, e.v);
  }
  return parts;
}

/// P(Bin(n, p) is odd) = (1 - (1 - 2p)^n) / 2.
inline double odd_parity_probability(std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0, 1]");
  return (1.0 - std::pow(1.0 - 2.0 * p, static_cast<double>(n))) / 2.0;
}

}  // namespace cycleshred
