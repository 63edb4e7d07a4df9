#pragma once

// Small edge sets E0 whose removal leaves every vertex of a target set S with
// odd degree flipped: the odd-degree vertices of (V, E0) are exactly S. With
// S = odd(G) this makes G - E0 an Euler graph.
//
// Construction: a greedy matching inside S, shortest paths between the
// leftover (independent) vertices, and whole small tree components; E0 is
// the mod-2 union of the three.

#include <algorithm>
#include <deque>
#include <optional>

#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred {

struct OddMatching {
  EdgeSet matching;
  VertexSet unmatched;  // independent in G
};

namespace detail {

inline VertexSet normalize_vertex_set(const Graph& g, VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= g.vertex_count()) {
    throw InputError("vertex " + std::to_string(s.back()) + " out of range");
  }
  return s;
}

/// Neighbor lists sorted by id, for deterministic lowest-id tie-breaks.
class SortedAdjacency {
 public:
  explicit SortedAdjacency(const Graph& g) : offsets_(g.vertex_count() + 1, 0) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      offsets_[v + 1] = offsets_[v] + g.neighbors(v).size();
    }
    targets_.resize(offsets_.back());
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      auto nb = g.neighbors(v);
      auto* out = targets_.data() + offsets_[v];
      std::copy(nb.begin(), nb.end(), out);
      std::sort(out, out + nb.size());
    }
  }

  std::span<const Vertex> operator[](Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t vertex_count() const { return offsets_.size() - 1; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// BFS shortest path from `from` to `to`, or empty if unreachable.
inline Path bfs_path(const SortedAdjacency& adj, Vertex from, Vertex to,
                     std::vector<std::uint32_t>& stamp, std::uint32_t& epoch,
                     std::vector<Vertex>& parent) {
  if (from == to) return {from};
  ++epoch;
  std::deque<Vertex> queue{from};
  stamp[from] = epoch;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : adj[x]) {
      if (stamp[y] == epoch) continue;
      stamp[y] = epoch;
      parent[y] = x;
      if (y == to) {
        Path path{to};
        for (Vertex z = to; z != from;) {
          z = parent[z];
          path.push_back(z);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(y);
    }
  }
  return {};
}

}  // namespace detail

/// Greedy matching inside `s`: scan `s` in increasing order and match each
/// free vertex with its lowest-id free neighbor in `s`. The unmatched rest is
/// independent in `g`. With `augment`, one pass of length-3 augmenting paths
/// a-x=y-b (a, b unmatched) follows.
inline OddMatching greedy_odd_matching(const Graph& g, VertexSet s, bool augment = false) {
  s = detail::normalize_vertex_set(g, std::move(s));
  constexpr auto kFree = static_cast<Vertex>(-1);
  std::vector<char> in_s(g.vertex_count(), 0);
  for (Vertex v : s) in_s[v] = 1;
  std::vector<Vertex> mate(g.vertex_count(), kFree);

  for (Vertex v : s) {
    if (mate[v] != kFree) continue;
    Vertex best = kFree;
    for (Vertex w : g.neighbors(v)) {
      if (in_s[w] && mate[w] == kFree && w < best) best = w;
    }
    if (best != kFree) {
      mate[v] = best;
      mate[best] = v;
    }
  }

  if (augment) {
    for (Vertex a : s) {
      if (mate[a] != kFree) continue;
      bool done = false;
      for (Vertex x : g.neighbors(a)) {
        if (done) break;
        if (!in_s[x] || mate[x] == kFree) continue;
        const Vertex y = mate[x];
        for (Vertex b : g.neighbors(y)) {
          if (b != a && in_s[b] && mate[b] == kFree) {
            mate[a] = x;
            mate[x] = a;
            mate[y] = b;
            mate[b] = y;
            done = true;
            break;
          }
        }
      }
    }
  }

  OddMatching out;
  std::vector<Edge> matched;
  for (Vertex v : s) {
    if (mate[v] == kFree) {
      out.unmatched.push_back(v);
    } else if (v < mate[v]) {
      matched.push_back(Edge{v, mate[v]});
    }
  }
  out.matching = EdgeSet(std::move(matched));
  return out;
}

struct PairPaths {
  std::vector<Path> paths;
  VertexSet residue;  // vertices left without a partner in their component
};

/// Pairs the vertices of `s` within their connected components (random order
/// keyed by `pairing_seed`) and joins each pair by a BFS shortest path with
/// lowest-id tie-breaking. Paths may share edges.
inline PairPaths pair_via_paths(const Graph& g, VertexSet s, Seed pairing_seed) {
  s = detail::normalize_vertex_set(g, std::move(s));
  PairPaths out;
  if (s.empty()) return out;

  std::size_t comp_count = 0;
  const auto label = component_labels(g, &comp_count);
  std::vector<std::vector<Vertex>> groups(comp_count);
  for (Vertex v : s) groups[label[v]].push_back(v);

  const detail::SortedAdjacency adj(g);
  std::vector<std::uint32_t> stamp(g.vertex_count(), 0);
  std::vector<Vertex> parent(g.vertex_count(), 0);
  std::uint32_t epoch = 0;
  CounterRng rng(pairing_seed, 0x70616972);

  for (auto& group : groups) {
    if (group.empty()) continue;
    shuffle(group, rng);
    if (group.size() % 2 == 1) {
      out.residue.push_back(group.back());
      group.pop_back();
    }
    for (std::size_t i = 0; i + 1 < group.size(); i += 2) {
      out.paths.push_back(detail::bfs_path(adj, group[i], group[i + 1], stamp, epoch, parent));
    }
  }
  std::sort(out.residue.begin(), out.residue.end());
  return out;
}

/// Edges lying outside the largest connected component.
inline EdgeSet small_component_edges(const Graph& g) {
  const auto comps = connected_components(g);
  std::vector<Edge> out;
  for (std::size_t c = 1; c < comps.size(); ++c) {
    for (Vertex u : comps[c]) {
      for (Vertex w : g.neighbors(u)) {
        if (u < w) out.push_back(Edge{u, w});
      }
    }
  }
  return EdgeSet(std::move(out));
}

struct EulerRepairStats {
  std::size_t target_size = 0;
  std::size_t matching_edges = 0;
  std::size_t path_count = 0;
  std::size_t path_edges_total = 0;
  std::size_t max_path_length = 0;
  std::size_t tree_edges = 0;
  std::size_t e0_size = 0;
  std::size_t residue_size = 0;
};

struct EulerRepair {
  EdgeSet e0;
  EdgeSet matching_part;
  std::vector<Path> path_part;
  EdgeSet tree_part;
  VertexSet residue;  // unrepaired target vertices; empty for the default target
  EulerRepairStats stats;
};

struct EulerRepairOptions {
  Seed pairing_seed = 0;
  bool augment = false;
};

/// Builds E0 with odd(V, E0) = S \ residue. `target` defaults to odd(G).
///
/// Small components that are trees and whose target vertices are exactly
/// their odd-degree vertices contribute all of their edges (the tree part);
/// every other target vertex is handled by the matching and the paths, paired
/// inside its own component. A residue can only arise for an explicit target
/// with an odd number of vertices in some component.
inline EulerRepair euler_reduction(const Graph& g, std::optional<VertexSet> target = std::nullopt,
                                   const EulerRepairOptions& options = {}) {
  VertexSet s;
  if (target) {
    s = detail::normalize_vertex_set(g, std::move(*target));
    if (s.size() % 2 == 1) throw InputError("target vertex set must have even size");
  } else {
    s = odd_vertices(g);
  }

  EulerRepair out;
  out.stats.target_size = s.size();

  std::vector<char> in_s(g.vertex_count(), 0);
  for (Vertex v : s) in_s[v] = 1;

  std::vector<char> handled(g.vertex_count(), 0);
  std::vector<Edge> tree_edges;
  const auto comps = connected_components(g);
  for (std::size_t c = 1; c < comps.size(); ++c) {
    std::size_t degree_sum = 0;
    bool target_is_odd_set = true;
    for (Vertex v : comps[c]) {
      const auto d = g.neighbors(v).size();
      degree_sum += d;
      if ((d % 2 == 1) != static_cast<bool>(in_s[v])) target_is_odd_set = false;
    }
    const std::size_t edges = degree_sum / 2;
    if (edges == 0 || edges + 1 != comps[c].size() || !target_is_odd_set) continue;
    for (Vertex u : comps[c]) {
      handled[u] = 1;
      for (Vertex w : g.neighbors(u)) {
        if (u < w) tree_edges.push_back(Edge{u, w});
      }
    }
  }

  VertexSet rest;
  for (Vertex v : s) {
    if (!handled[v]) rest.push_back(v);
  }

  auto matched = greedy_odd_matching(g, std::move(rest), options.augment);
  auto paired = pair_via_paths(g, matched.unmatched, options.pairing_seed);

  std::vector<Edge> multiset(matched.matching.begin(), matched.matching.end());
  for (const auto& path : paired.paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      multiset.push_back(make_edge(path[i], path[i + 1]));
    }
    const std::size_t len = path.empty() ? 0 : path.size() - 1;
    out.stats.path_edges_total += len;
    out.stats.max_path_length = std::max(out.stats.max_path_length, len);
  }
  multiset.insert(multiset.end(), tree_edges.begin(), tree_edges.end());

  out.e0 = EdgeSet::parity_union(std::move(multiset));
  out.stats.matching_edges = matched.matching.size();
  out.stats.path_count = paired.paths.size();
  out.stats.tree_edges = tree_edges.size();
  out.stats.e0_size = out.e0.size();
  out.stats.residue_size = paired.residue.size();
  out.matching_part = std::move(matched.matching);
  out.path_part = std::move(paired.paths);
  out.tree_part = EdgeSet(std::move(tree_edges));
  out.residue = std::move(paired.residue);
  return out;
}

}  // namespace cycleshred
