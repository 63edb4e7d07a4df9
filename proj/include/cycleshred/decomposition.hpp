#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "cycleshred/graph.hpp"

namespace cycleshred {

/// Simple cycle v0, v1, ..., v(k-1), closing back to v0. k >= 3.
struct Cycle {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      out.push_back(make_edge(vertices[i], vertices[(i + 1) % vertices.size()]));
    }
    return out;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// True iff `c` is a simple cycle whose edges are all present in `g`.
inline bool is_cycle_of(const Graph& g, const Cycle& c) {
  const auto k = c.vertices.size();
  if (k < 3) return false;
  std::vector<Vertex> sorted = c.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!g.has_edge(c.vertices[i], c.vertices[(i + 1) % k])) return false;
  }
  return true;
}

/// Removes the cycle's edges from `g`; throws if one is missing.
inline void remove_cycle(Graph& g, const Cycle& c) {
  for (const auto& e : c.edges()) g.remove_edge(e);
}

/// Pipeline stage that produced a piece.
enum class Stage {
  euler_repair,
  long_cycle,
  hamilton,
  matching_closure,
  peel,
  leftover_edge,
};

inline constexpr std::array<Stage, 6> kAllStages = {
    Stage::euler_repair, Stage::long_cycle, Stage::hamilton,
    Stage::matching_closure, Stage::peel, Stage::leftover_edge};

constexpr std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::euler_repair: return "euler-repair";
    case Stage::long_cycle: return "long-cycle";
    case Stage::hamilton: return "hamilton";
    case Stage::matching_closure: return "matching-closure";
    case Stage::peel: return "peel";
    case Stage::leftover_edge: return "leftover-edge";
  }
  return "unknown";
}

inline std::optional<Stage> stage_from_name(std::string_view name) {
  for (Stage s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Cycles and single edges, each with the stage that produced it.
struct Decomposition {
  std::size_t n = 0;
  std::vector<Cycle> cycles;
  std::vector<Stage> cycle_stages;
  std::vector<Edge> single_edges;
  std::vector<Stage> edge_stages;

  std::size_t piece_count() const { return cycles.size() + single_edges.size(); }

  void add_cycle(Cycle c, Stage s) {
    cycles.push_back(std::move(c));
    cycle_stages.push_back(s);
  }

  void add_edge(Edge e, Stage s) {
    single_edges.push_back(make_edge(e.u, e.v));
    edge_stages.push_back(s);
  }

  std::size_t count(Stage s) const {
    return static_cast<std::size_t>(std::count(cycle_stages.begin(), cycle_stages.end(), s) +
                                    std::count(edge_stages.begin(), edge_stages.end(), s));
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

}  // namespace cycleshred
