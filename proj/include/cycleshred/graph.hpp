#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cycleshred {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// A walk given as its vertex sequence; consecutive entries are adjacent.
using Path = std::vector<Vertex>;

/// Raised for malformed caller input (bad vertex ids, self-loops, parity
/// preconditions). Algorithmic shortfalls are reported in results instead.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected edge stored canonically with the smaller endpoint first.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

constexpr std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

constexpr Edge edge_from_key(std::uint64_t key) {
  return Edge{static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)};
}

/// Canonical set of undirected edges kept as a sorted vector.
class EdgeSet {
 public:
  EdgeSet() = default;

  /// Accepts edges in any order and orientation; duplicates collapse.
  explicit EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    for (auto& e : edges_) e = make_edge(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  EdgeSet(std::initializer_list<Edge> edges) : EdgeSet(std::vector<Edge>(edges)) {}

  /// Mod-2 union of a multiset: keeps edges that appear an odd number of times.
  static EdgeSet parity_union(std::vector<Edge> multiset) {
    for (auto& e : multiset) e = make_edge(e.u, e.v);
    std::sort(multiset.begin(), multiset.end());
    std::vector<Edge> odd;
    for (std::size_t i = 0; i < multiset.size();) {
      std::size_t j = i;
      while (j < multiset.size() && multiset[j] == multiset[i]) ++j;
      if ((j - i) % 2 == 1) odd.push_back(multiset[i]);
      i = j;
    }
    EdgeSet out;
    out.edges_ = std::move(odd);
    return out;
  }

  bool contains(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(e.u, e.v));
  }

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  const std::vector<Edge>& items() const { return edges_; }

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<Edge> edges_;
};

inline EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return EdgeSet(std::move(out));
}

/// Vertices incident to an odd number of edges of `edges`.
inline VertexSet odd_vertices_of(std::span<const Edge> edges) {
  std::vector<Vertex> ends;
  ends.reserve(2 * edges.size());
  for (const auto& e : edges) {
    ends.push_back(e.u);
    ends.push_back(e.v);
  }
  std::sort(ends.begin(), ends.end());
  VertexSet odd;
  for (std::size_t i = 0; i < ends.size();) {
    std::size_t j = i;
    while (j < ends.size() && ends[j] == ends[i]) ++j;
    if ((j - i) % 2 == 1) odd.push_back(ends[i]);
    i = j;
  }
  return odd;
}

inline VertexSet odd_vertices_of(const EdgeSet& edges) {
  return odd_vertices_of(std::span<const Edge>(edges.items()));
}

/// Simple undirected graph on vertices 0..n-1.
///
/// Neighbor lists are unordered; deletion swaps the removed entry with the
/// last one, and a per-edge slot map keeps both list positions so that
/// presence queries and deletions are O(1) on average.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
    slots_.reserve(edges.size());
    for (const auto& e : edges) {
      if (!add_edge(e.u, e.v)) {
        throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
      }
    }
  }

  Graph(std::size_t n, const EdgeSet& edges) : Graph(n, std::span<const Edge>(edges.items())) {}

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return m_; }

  std::size_t degree(Vertex v) const {
    check_vertex(v);
    return adj_[v].size();
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= adj_.size() || b >= adj_.size() || a == b) return false;
    return slots_.contains(edge_key(make_edge(a, b)));
  }

  /// Returns false if the edge was already present.
  bool add_edge(Vertex a, Vertex b) {
    check_vertex(a);
    check_vertex(b);
    const Edge e = make_edge(a, b);
    auto [it, inserted] = slots_.try_emplace(edge_key(e), 0);
    if (!inserted) return false;
    it->second = pack(adj_[e.u].size(), adj_[e.v].size());
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    ++m_;
    return true;
  }

  /// Returns false if the edge was absent.
  bool remove_edge(Vertex a, Vertex b) {
    if (a >= adj_.size() || b >= adj_.size() || a == b) return false;
    const Edge e = make_edge(a, b);
    auto it = slots_.find(edge_key(e));
    if (it == slots_.end()) return false;
    const auto [pu, pv] = unpack(it->second);
    slots_.erase(it);
    detach(e.u, pu);
    detach(e.v, pv);
    --m_;
    return true;
  }

  void remove_edge(const Edge& e) {
    if (!remove_edge(e.u, e.v)) {
      throw InputError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " not present");
    }
  }

  /// All edges in lexicographic order.
  std::vector<Edge> edge_list() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u) {
      for (Vertex w : adj_[u]) {
        if (u < w) out.push_back(Edge{u, w});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  EdgeSet edges() const { return EdgeSet(edge_list()); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adj_) d = std::max(d, a.size());
    return d;
  }

  std::size_t min_degree() const {
    if (adj_.empty()) return 0;
    std::size_t d = adj_[0].size();
    for (const auto& a : adj_) d = std::min(d, a.size());
    return d;
  }

  double average_degree() const {
    return adj_.empty() ? 0.0 : 2.0 * static_cast<double>(m_) / static_cast<double>(adj_.size());
  }

 private:
  static std::uint64_t pack(std::size_t pu, std::size_t pv) {
    return (static_cast<std::uint64_t>(pu) << 32) | static_cast<std::uint32_t>(pv);
  }
  static std::pair<std::uint32_t, std::uint32_t> unpack(std::uint64_t s) {
    return {static_cast<std::uint32_t>(s >> 32), static_cast<std::uint32_t>(s & 0xffffffffu)};
  }

  void check_vertex(Vertex v) const {
    if (v >= adj_.size()) {
      throw InputError("vertex " + std::to_string(v) + " out of range for n=" +
                       std::to_string(adj_.size()));
    }
  }

  // Removes adj_[x][pos] by moving the last entry into its place.
  void detach(Vertex x, std::uint32_t pos) {
    auto& list = adj_[x];
    const Vertex moved = list.back();
    list.pop_back();
    if (pos == list.size()) return;
    list[pos] = moved;
    auto& slot = slots_.at(edge_key(make_edge(x, moved)));
    auto [pu, pv] = unpack(slot);
    if (x < moved) {
      pu = pos;
    } else {
      pv = pos;
    }
    slot = pack(pu, pv);
  }

  std::vector<std::vector<Vertex>> adj_;
  std::unordered_map<std::uint64_t, std::uint64_t> slots_;
  std::size_t m_ = 0;
};

inline std::size_t degree(const Graph& g, Vertex v) { return g.degree(v); }

inline VertexSet odd_vertices(const Graph& g) {
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.neighbors(v).size() % 2 == 1) out.push_back(v);
  }
  return out;
}

inline bool is_euler(const Graph& g) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.neighbors(v).size() % 2 == 1) return false;
  }
  return true;
}

/// G minus `e0`; every edge of `e0` must be present.
inline Graph remove_edges(const Graph& g, const EdgeSet& e0) {
  Graph out = g;
  for (const auto& e : e0) {
    if (!out.remove_edge(e.u, e.v)) {
      throw InputError("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                       " is not in the graph");
    }
  }
  return out;
}

/// Component label per vertex; labels follow the order of the smallest vertex.
inline std::vector<std::uint32_t> component_labels(const Graph& g, std::size_t* count = nullptr) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(g.vertex_count(), kUnset);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (label[y] == kUnset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

/// Components as sorted vertex sets, largest first (ties: smallest vertex first).
inline std::vector<VertexSet> connected_components(const Graph& g) {
  std::size_t count = 0;
  const auto label = component_labels(g, &count);
  std::vector<VertexSet> comps(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) comps[label[v]].push_back(v);
  std::stable_sort(comps.begin(), comps.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });
  return comps;
}

/// Subgraph spanned by the given edges of `g`, on the same vertex set.
inline Graph edge_subgraph(std::size_t n, std::span<const Edge> edges) { return Graph(n, edges); }

inline Graph induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  Graph out(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (!keep[u]) continue;
    for (Vertex w : g.neighbors(u)) {
      if (u < w && keep[w]) out.add_edge(u, w);
    }
  }
  return out;
}

}  // namespace cycleshred
