#pragma once

// Decomposition checker and the counting lower bound. Deliberately rebuilds
// everything from raw edge lists and touches no construction code.

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "cycleshred/decomposition.hpp"
#include "cycleshred/graph.hpp"

namespace cycleshred {

struct BadCycle {
  std::size_t index;
  std::string reason;
};

struct VerifyReport {
  bool valid = false;
  std::size_t piece_count = 0;
  std::size_t covered_edges = 0;
  std::vector<Edge> duplicate_edges;
  std::vector<Edge> missing_edges;
  std::vector<Edge> foreign_edges;  // piece edges that are not in G
  std::vector<BadCycle> bad_cycles;
};

inline VerifyReport verify_decomposition(const Graph& g, const Decomposition& d) {
  VerifyReport r;
  r.piece_count = d.cycles.size() + d.single_edges.size();
  const auto n = g.vertex_count();

  // Host edge keys from scratch; value counts how many pieces claim the edge.
  std::unordered_map<std::uint64_t, std::uint32_t> claims;
  claims.reserve(g.edge_count() * 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w : g.neighbors(u)) {
      if (u < w) claims.emplace((std::uint64_t{u} << 32) | w, 0);
    }
  }

  auto claim = [&](Vertex a, Vertex b) {
    const Vertex lo = std::min(a, b);
    const Vertex hi = std::max(a, b);
    const auto key = (std::uint64_t{lo} << 32) | hi;
    auto it = claims.find(key);
    if (it == claims.end()) {
      r.foreign_edges.push_back(Edge{lo, hi});
      return;
    }
    if (++it->second == 2) r.duplicate_edges.push_back(Edge{lo, hi});
  };

  std::vector<std::uint32_t> seen(n, 0);
  for (std::size_t i = 0; i < d.cycles.size(); ++i) {
    const auto& vs = d.cycles[i].vertices;
    if (vs.size() < 3) {
      r.bad_cycles.push_back({i, "fewer than 3 vertices"});
      continue;
    }
    const auto stamp = static_cast<std::uint32_t>(i + 1);
    bool ok = true;
    for (Vertex v : vs) {
      if (v >= n) {
        r.bad_cycles.push_back({i, "vertex " + std::to_string(v) + " out of range"});
        ok = false;
        break;
      }
      if (seen[v] == stamp) {
        r.bad_cycles.push_back({i, "vertex " + std::to_string(v) + " repeated"});
        ok = false;
        break;
      }
      seen[v] = stamp;
    }
    if (!ok) continue;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const Vertex a = vs[j];
      const Vertex b = vs[(j + 1) % vs.size()];
      if (!claims.contains((std::uint64_t{std::min(a, b)} << 32) | std::max(a, b))) {
        r.bad_cycles.push_back({i, "edge " + std::to_string(a) + "-" + std::to_string(b) + " not in graph"});
      }
      claim(a, b);
    }
  }
  for (const auto& e : d.single_edges) {
    if (e.u >= n || e.v >= n || e.u == e.v) {
      r.foreign_edges.push_back(e);
      continue;
    }
    claim(e.u, e.v);
  }

  for (const auto& [key, count] : claims) {
    if (count == 0) {
      r.missing_edges.push_back(Edge{static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)});
    } else {
      ++r.covered_edges;
    }
  }
  std::sort(r.missing_edges.begin(), r.missing_edges.end());
  std::sort(r.duplicate_edges.begin(), r.duplicate_edges.end());
  std::sort(r.foreign_edges.begin(), r.foreign_edges.end());
  r.valid = r.duplicate_edges.empty() && r.missing_edges.empty() && r.foreign_edges.empty() &&
            r.bad_cycles.empty() && r.covered_edges == g.edge_count();
  return r;
}

/// odd/2 + max(0, ceil((m - odd/2) / n)): every odd vertex needs its own
/// single edge and a cycle covers at most n edges.
inline std::size_t lower_bound(const Graph& g) {
  std::size_t odd = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) odd += g.neighbors(v).size() % 2;
  const std::size_t half = odd / 2;
  const std::size_t m = g.edge_count();
  const std::size_t n = g.vertex_count();
  if (m <= half || n == 0) return half;
  return half + (m - half + n - 1) / n;
}

}  // namespace cycleshred
