#pragma once

// Hamilton cycles by rotation-extension with restarts, and greedy packing of
// edge-disjoint Hamilton cycles out of a dense graph.

#include <optional>
#include <string_view>

#include "cycleshred/decomposition.hpp"
#include "cycleshred/detail/posa_path.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred {

struct HamiltonConfig {
  /// Rotation budget per attempt, as a multiple of n.
  double rotations_per_vertex = 100.0;
  std::size_t restarts = 5;
  Seed seed = 0;
  /// Cap on Hamilton searches in one pack (0 = unlimited).
  std::size_t max_attempts = 0;
};

namespace detail {

/// On-path neighbour of the back at a random position other than the
/// back's predecessor, or -1.
inline std::int64_t random_pivot(const Graph& g, const PosaPath& path, CounterRng& rng) {
  const auto nb = g.neighbors(path.back());
  const auto limit = static_cast<std::int64_t>(path.size()) - 2;
  if (nb.empty()) return -1;
  const auto start = static_cast<std::size_t>(rng.below(nb.size()));
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const auto pos = path.position(nb[(start + i) % nb.size()]);
    if (pos != PosaPath::kOff && pos < limit) return pos;
  }
  return -1;
}

/// Re-cuts a closed non-spanning cycle so it can grow: finds a path vertex
/// with an off-path neighbour, makes it the back and extends.
inline bool open_closed_cycle(const Graph& g, PosaPath& path, CounterRng& rng) {
  const auto s = path.size();
  const auto offset = static_cast<std::size_t>(rng.below(s));
  for (std::size_t k = 0; k < s; ++k) {
    const auto i = (offset + k) % s;
    for (Vertex y : g.neighbors(path[i])) {
      if (path.on_path(y)) continue;
      path.recut_cycle(i);
      path.push_back(y);
      path.extend_fully(rng);
      return true;
    }
  }
  return false;
}

inline std::optional<Cycle> hamilton_attempt(const Graph& g, std::size_t budget, CounterRng& rng) {
  const auto n = g.vertex_count();
  PosaPath path(g, nullptr);
  path.reset(static_cast<Vertex>(rng.below(n)));
  path.extend_fully(rng);
  for (std::size_t rotations = 0; rotations <= budget; ++rotations) {
    const bool closes = path.size() >= 3 && g.has_edge(path.front(), path.back());
    if (closes && path.size() == n) return Cycle{path.vertices()};
    if (closes && open_closed_cycle(g, path, rng)) continue;
    if (closes && path.size() < n) return std::nullopt;  // disconnected
    const auto pivot = random_pivot(g, path, rng);
    if (pivot < 0) {
      path.reverse_all();
      if (random_pivot(g, path, rng) < 0) return std::nullopt;
      continue;
    }
    path.rotate(static_cast<std::size_t>(pivot));
    path.extend_fully(rng);
  }
  return std::nullopt;
}

}  // namespace detail

/// A Hamilton cycle of `g`, or nullopt when the search budget runs out. A
/// nullopt is not a proof of non-Hamiltonicity.
inline std::optional<Cycle> find_hamilton_cycle(const Graph& g, const HamiltonConfig& cfg = {},
                                                std::uint64_t stream = 0) {
  const auto n = g.vertex_count();
  if (n < 3 || g.min_degree() < 2) return std::nullopt;
  const auto budget = static_cast<std::size_t>(cfg.rotations_per_vertex * static_cast<double>(n));
  for (std::size_t r = 0; r < std::max<std::size_t>(1, cfg.restarts); ++r) {
    CounterRng rng(cfg.seed, (stream << 8) + r);
    auto c = detail::hamilton_attempt(g, budget, rng);
    if (c) {
      if (!is_cycle_of(g, *c) || c->length() != n) {
        throw std::logic_error("rotation-extension produced an invalid Hamilton cycle");
      }
      return c;
    }
  }
  return std::nullopt;
}

enum class PackStop { target_reached, search_failed, budget };

constexpr std::string_view pack_stop_name(PackStop s) {
  switch (s) {
    case PackStop::target_reached: return "target-reached";
    case PackStop::search_failed: return "search-failed";
    case PackStop::budget: return "budget";
  }
  return "unknown";
}

struct PackResult {
  std::vector<Cycle> cycles;
  Graph remainder;
  std::size_t attempts = 0;
  PackStop stop_reason = PackStop::target_reached;
};

/// Repeatedly extracts Hamilton cycles from the shrinking remainder until
/// `target` are found, a search fails, or `cfg.max_attempts` is hit.
inline PackResult pack_hamilton_cycles(const Graph& g, std::size_t target,
                                       const HamiltonConfig& cfg = {}) {
  PackResult out;
  out.remainder = g;
  while (out.cycles.size() < target) {
    if (cfg.max_attempts != 0 && out.attempts >= cfg.max_attempts) {
      out.stop_reason = PackStop::budget;
      return out;
    }
    auto c = find_hamilton_cycle(out.remainder, cfg, out.attempts);
    ++out.attempts;
    if (!c) {
      out.stop_reason = PackStop::search_failed;
      return out;
    }
    remove_cycle(out.remainder, *c);
    out.cycles.push_back(std::move(*c));
  }
  out.stop_reason = PackStop::target_reached;
  return out;
}

}  // namespace cycleshred
