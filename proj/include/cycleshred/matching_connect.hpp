#pragma once

// Closing matchings into few cycles through vertex-disjoint connector paths
// drawn from a reserved sparse random graph. Includes the greedy edge
// colouring that produces the matchings, the per-part random sparsification,
// and the auxiliary pairing that routes high-degree vertices as path centres.

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <unordered_set>
#include <utility>

#include "cycleshred/cycle_extract.hpp"
#include "cycleshred/decomposition.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred {

/// A matching edge; with a centre c it stands for the length-2 path u-c-v.
struct TaggedEdge {
  Edge edge;
  std::optional<Vertex> center;

  friend bool operator==(const TaggedEdge&, const TaggedEdge&) = default;
};

struct TaggedMatching {
  std::vector<TaggedEdge> edges;

  static TaggedMatching plain(std::span<const Edge> es) {
    TaggedMatching m;
    for (const auto& e : es) m.edges.push_back({make_edge(e.u, e.v), std::nullopt});
    return m;
  }

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }

  friend bool operator==(const TaggedMatching&, const TaggedMatching&) = default;

  /// Endpoints u, v of every edge (centres excluded), sorted.
  VertexSet endpoints() const {
    VertexSet out;
    for (const auto& t : edges) {
      out.push_back(t.edge.u);
      out.push_back(t.edge.v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Underlying graph edges: e itself, or u-c and c-v for a centred edge.
  std::vector<Edge> expanded_edges() const {
    std::vector<Edge> out;
    for (const auto& t : edges) {
      if (t.center) {
        out.push_back(make_edge(t.edge.u, *t.center));
        out.push_back(make_edge(*t.center, t.edge.v));
      } else {
        out.push_back(t.edge);
      }
    }
    return out;
  }
};

inline std::vector<Edge> expand(const TaggedEdge& t) {
  if (!t.center) return {t.edge};
  return {make_edge(t.edge.u, *t.center), make_edge(*t.center, t.edge.v)};
}

/// Greedy first-available colouring of a (multi)graph edge list in the given
/// order. Uses at most 2*Delta - 1 classes.
inline std::vector<TaggedMatching> edge_color_list(std::size_t n, std::span<const TaggedEdge> edges) {
  std::vector<std::vector<std::uint32_t>> used(n);
  std::vector<TaggedMatching> classes;
  std::vector<char> taken;
  for (const auto& t : edges) {
    const auto& cu = used[t.edge.u];
    const auto& cv = used[t.edge.v];
    taken.assign(cu.size() + cv.size() + 1, 0);
    for (auto c : cu) {
      if (c < taken.size()) taken[c] = 1;
    }
    for (auto c : cv) {
      if (c < taken.size()) taken[c] = 1;
    }
    std::uint32_t color = 0;
    while (taken[color]) ++color;
    if (color >= classes.size()) classes.resize(color + 1);
    classes[color].edges.push_back(t);
    used[t.edge.u].push_back(color);
    used[t.edge.v].push_back(color);
  }
  return classes;
}

/// Colour classes of `h`, edges taken in lexicographic order.
inline std::vector<TaggedMatching> edge_color(const Graph& h) {
  const auto list = h.edge_list();
  return edge_color_list(h.vertex_count(), TaggedMatching::plain(list).edges);
}

/// max over non-isolated v of |N(v) ∩ S| / |N(v)|; 0 when every vertex is isolated.
inline double neighborhood_ratio(const Graph& g, const VertexSet& s) {
  std::vector<char> in_s(g.vertex_count(), 0);
  for (Vertex v : s) {
    if (v >= g.vertex_count()) throw InputError("vertex out of range in neighborhood_ratio");
    in_s[v] = 1;
  }
  double best = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto nb = g.neighbors(v);
    if (nb.empty()) continue;
    std::size_t hits = 0;
    for (Vertex w : nb) hits += static_cast<std::size_t>(in_s[w]);
    best = std::max(best, static_cast<double>(hits) / static_cast<double>(nb.size()));
  }
  return best;
}

struct SparsePart {
  Graph graph;
  TaggedMatching matching;
  double ratio = 0.0;  // neighborhood_ratio(graph, matching endpoints)
};

/// Splits the connector graph and the matching into k parts, each edge placed
/// independently and uniformly.
inline std::vector<SparsePart> sparsify_split(const Graph& gc, const TaggedMatching& m,
                                              std::size_t k, Seed seed) {
  if (k == 0) throw InputError("sparsify_split needs k >= 1");
  std::vector<SparsePart> parts(k);
  if (k == 1) {
    parts[0].graph = gc;
    parts[0].matching = m;
  } else {
    auto graphs = split(gc, SplitSpec::uniform(k), derive_seed(seed, 1));
    for (std::size_t i = 0; i < k; ++i) parts[i].graph = std::move(graphs[i]);
    const auto stream = derive_seed(seed, 2);
    for (const auto& t : m.edges) {
      const auto key = splitmix64(edge_key(t.edge) ^ splitmix64(t.center.value_or(0xffffffffu)));
      const auto slot = static_cast<std::size_t>(to_unit(splitmix64(stream ^ key)) * static_cast<double>(k));
      parts[std::min(slot, k - 1)].matching.edges.push_back(t);
    }
  }
  for (auto& part : parts) part.ratio = neighborhood_ratio(part.graph, part.matching.endpoints());
  return parts;
}

struct PairRequest {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  /// Throws unless all 2k vertices are distinct and in range.
  void validate(std::size_t n) const {
    std::vector<Vertex> all;
    for (const auto& [a, b] : pairs) {
      all.push_back(a);
      all.push_back(b);
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      throw InputError("pair request vertices must be distinct");
    }
    if (!all.empty() && all.back() >= n) throw InputError("pair request vertex out of range");
  }
};

struct ConnectorConfig {
  /// Longest connector path, in edges.
  std::size_t max_path_len = 8;
  /// Full re-routing attempts with reshuffled pair order; the best is kept.
  std::size_t retries = 3;
  Seed seed = 0;
};

/// ceil(4 log n / log(np)), the default connector length cap; n when np <= e.
inline std::size_t default_path_cap(std::size_t n, double p) {
  const double np = static_cast<double>(n) * p;
  if (np <= std::exp(1.0)) return std::max<std::size_t>(n, 2);
  return std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(4.0 * safe_log(static_cast<double>(n)) / std::log(np))));
}

struct ConnectResult {
  std::vector<std::optional<Path>> paths;  // per pair, in request order
  std::vector<std::size_t> unserved;

  std::size_t served() const { return paths.size() - unserved.size(); }
};

namespace detail {

/// Scratch state for depth-capped BFS over the unblocked part of a graph.
class ConnectorRouter {
 public:
  explicit ConnectorRouter(const Graph& g)
      : g_(g), stamp_(g.vertex_count(), 0), parent_(g.vertex_count(), 0), depth_(g.vertex_count(), 0) {}

  /// Shortest a-b path whose interior avoids `blocked`, with at most `cap`
  /// edges. `forbid_direct` rejects the single edge a-b.
  std::optional<Path> route(Vertex a, Vertex b, const std::vector<char>& blocked, std::size_t cap,
                            bool forbid_direct) {
    ++epoch_;
    std::deque<Vertex> queue{a};
    stamp_[a] = epoch_;
    depth_[a] = 0;
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (depth_[x] >= cap) continue;
      for (Vertex y : g_.neighbors(x)) {
        if (stamp_[y] == epoch_) continue;
        if (y == b) {
          if (forbid_direct && x == a) continue;
          Path path{b};
          for (Vertex z = x; z != a; z = parent_[z]) path.push_back(z);
          path.push_back(a);
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (blocked[y]) continue;
        stamp_[y] = epoch_;
        parent_[y] = x;
        depth_[y] = depth_[x] + 1;
        queue.push_back(y);
      }
    }
    return std::nullopt;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> depth_;
  std::uint32_t epoch_ = 0;
};

/// Routes all pairs sequentially; interior vertices of accepted paths become
/// blocked for later pairs. `blocked` must already contain every request
/// vertex (and anything else to avoid). Keeps the best of `retries` orders.
inline ConnectResult route_pairs(const Graph& gc, const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                 const std::vector<char>& blocked, const ConnectorConfig& cfg,
                                 const std::vector<char>& forbid_direct) {
  ConnectResult best;
  best.paths.assign(pairs.size(), std::nullopt);
  for (std::size_t i = 0; i < pairs.size(); ++i) best.unserved.push_back(i);
  if (pairs.empty()) return best;

  ConnectorRouter router(gc);
  std::vector<std::size_t> order(pairs.size());
  const std::size_t attempts = std::max<std::size_t>(1, cfg.retries);
  for (std::size_t attempt = 0; attempt < attempts && !best.unserved.empty(); ++attempt) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    CounterRng rng(cfg.seed, 0x636f6e6e00 + attempt);
    shuffle(order, rng);
    auto mask = blocked;
    ConnectResult trial;
    trial.paths.assign(pairs.size(), std::nullopt);
    for (auto i : order) {
      const auto [a, b] = pairs[i];
      auto path = router.route(a, b, mask, cfg.max_path_len, forbid_direct[i] != 0);
      if (!path) continue;
      for (std::size_t j = 1; j + 1 < path->size(); ++j) mask[(*path)[j]] = 1;
      trial.paths[i] = std::move(path);
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!trial.paths[i]) trial.unserved.push_back(i);
    }
    if (trial.unserved.size() < best.unserved.size()) best = std::move(trial);
  }
  return best;
}

}  // namespace detail

/// Vertex-disjoint connector paths for disjoint pairs. Path interiors avoid
/// every request vertex and each other; pairs that cannot be routed within
/// the length cap are listed as unserved.
inline ConnectResult connect_pairs(const Graph& gc, const PairRequest& req,
                                   const ConnectorConfig& cfg = {}) {
  req.validate(gc.vertex_count());
  std::vector<char> blocked(gc.vertex_count(), 0);
  for (const auto& [a, b] : req.pairs) {
    blocked[a] = 1;
    blocked[b] = 1;
  }
  return detail::route_pairs(gc, req.pairs, blocked, cfg,
                             std::vector<char>(req.pairs.size(), 0));
}

/// Greedy first-fit grouping so that no group holds two edges with the same
/// centre. `group_cap` bounds group size (0 = unbounded).
inline std::vector<TaggedMatching> split_avoiding_duplicates(const TaggedMatching& m,
                                                             std::size_t group_cap = 0) {
  std::vector<TaggedMatching> groups;
  std::vector<std::unordered_set<Vertex>> centers;
  for (const auto& t : m.edges) {
    std::size_t g = 0;
    for (; g < groups.size(); ++g) {
      if (group_cap != 0 && groups[g].size() >= group_cap) continue;
      if (t.center && centers[g].contains(*t.center)) continue;
      break;
    }
    if (g == groups.size()) {
      groups.emplace_back();
      centers.emplace_back();
    }
    groups[g].edges.push_back(t);
    if (t.center) centers[g].insert(*t.center);
  }
  return groups;
}

struct ClosureResult {
  std::vector<Cycle> cycles;
  EdgeSet connector_edges_used;
  std::vector<TaggedEdge> failed;  // matching edges left off every cycle
  std::size_t served_matching_edges = 0;
  std::size_t closure_groups = 0;

  /// Graph edges of the failed matching edges (centred edges expanded).
  std::vector<Edge> failed_edges() const {
    std::vector<Edge> out;
    for (const auto& t : failed) {
      for (const auto& e : expand(t)) out.push_back(e);
    }
    return out;
  }
};

namespace detail {

inline void validate_matching(std::size_t n, const TaggedMatching& m) {
  std::vector<Vertex> ends;
  for (const auto& t : m.edges) {
    if (t.edge.u == t.edge.v) throw InputError("matching edge is a loop");
    ends.push_back(t.edge.u);
    ends.push_back(t.edge.v);
  }
  std::sort(ends.begin(), ends.end());
  if (std::adjacent_find(ends.begin(), ends.end()) != ends.end()) {
    throw InputError("matching edges share an endpoint");
  }
  if (!ends.empty() && ends.back() >= n) throw InputError("matching vertex out of range");
  for (const auto& t : m.edges) {
    if (t.center && (*t.center >= n || std::binary_search(ends.begin(), ends.end(), *t.center))) {
      throw InputError("matching centre coincides with an endpoint or is out of range");
    }
  }
}

inline void append_piece(std::vector<Vertex>& cycle, const TaggedEdge& t) {
  cycle.push_back(t.edge.u);
  if (t.center) cycle.push_back(*t.center);
  cycle.push_back(t.edge.v);
}

inline void append_interior(std::vector<Vertex>& cycle, const Path& p) {
  for (std::size_t j = 1; j + 1 < p.size(); ++j) cycle.push_back(p[j]);
}

inline void add_path_edges(std::vector<Edge>& out, const Path& p) {
  for (std::size_t j = 0; j + 1 < p.size(); ++j) out.push_back(make_edge(p[j], p[j + 1]));
}

/// One closure group: centres distinct. Edges of emitted connectors are
/// removed from `work`.
inline void close_group(Graph& work, const TaggedMatching& group, const ConnectorConfig& cfg,
                        ClosureResult& out, std::vector<Edge>& used_edges) {
  const auto k = group.size();
  if (k == 0) return;
  ++out.closure_groups;
  const auto n = work.vertex_count();
  std::vector<char> blocked(n, 0);
  for (const auto& t : group.edges) {
    blocked[t.edge.u] = 1;
    blocked[t.edge.v] = 1;
    if (t.center) blocked[*t.center] = 1;
  }
  // Pair i joins the end of edge i to the start of edge i+1.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    pairs.emplace_back(group.edges[i].edge.v, group.edges[(i + 1) % k].edge.u);
  }
  // With a single uncentred edge the direct connector would duplicate it.
  std::vector<char> forbid(k, 0);
  if (k == 1 && !group.edges[0].center) forbid[0] = 1;

  auto routed = route_pairs(work, pairs, blocked, cfg, forbid);

  auto emit = [&](std::vector<Vertex> vertices, const std::vector<const Path*>& connectors,
                  std::size_t matching_edges) {
    std::vector<Edge> edges;
    for (const auto* p : connectors) add_path_edges(edges, *p);
    for (const auto& e : edges) work.remove_edge(e);
    used_edges.insert(used_edges.end(), edges.begin(), edges.end());
    out.cycles.push_back(Cycle{std::move(vertices)});
    out.served_matching_edges += matching_edges;
  };

  if (routed.unserved.empty()) {
    std::vector<Vertex> cycle;
    std::vector<const Path*> connectors;
    for (std::size_t i = 0; i < k; ++i) {
      append_piece(cycle, group.edges[i]);
      append_interior(cycle, *routed.paths[i]);
      connectors.push_back(&*routed.paths[i]);
    }
    emit(std::move(cycle), connectors, k);
    return;
  }

  // Broken closure: maximal chains e_s, p_s, ..., e_t with p_t unserved.
  // Each chain gets one more connector from e_t back to e_s.
  std::size_t start = routed.unserved.front() + 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (!routed.paths[i]) continue;
    for (std::size_t j = 1; j + 1 < routed.paths[i]->size(); ++j) blocked[(*routed.paths[i])[j]] = 1;
  }
  std::size_t consumed = 0;
  while (consumed < k) {
    std::vector<std::size_t> chain;
    std::size_t i = start % k;
    while (true) {
      chain.push_back(i);
      ++consumed;
      if (!routed.paths[i]) break;
      i = (i + 1) % k;
    }
    start = i + 1;

    const Vertex tail = group.edges[chain.back()].edge.v;
    const Vertex head = group.edges[chain.front()].edge.u;
    const bool single_plain = chain.size() == 1 && !group.edges[chain.front()].center;
    std::vector<std::pair<Vertex, Vertex>> closing{{tail, head}};
    auto closed = route_pairs(work, closing, blocked, cfg, std::vector<char>{single_plain ? char{1} : char{0}});
    if (!closed.paths[0]) {
      for (auto idx : chain) out.failed.push_back(group.edges[idx]);
      continue;
    }
    const Path& back_path = *closed.paths[0];
    for (std::size_t j = 1; j + 1 < back_path.size(); ++j) blocked[back_path[j]] = 1;
    std::vector<Vertex> cycle;
    std::vector<const Path*> connectors;
    for (std::size_t c = 0; c < chain.size(); ++c) {
      append_piece(cycle, group.edges[chain[c]]);
      if (c + 1 < chain.size()) {
        append_interior(cycle, *routed.paths[chain[c]]);
        connectors.push_back(&*routed.paths[chain[c]]);
      }
    }
    append_interior(cycle, back_path);
    connectors.push_back(&back_path);
    emit(std::move(cycle), connectors, chain.size());
  }
}

}  // namespace detail

/// Closes the matching into cycles e_1 P_1 e_2 P_2 ... e_k P_k using
/// connector paths in `gc`. Centred edges are first grouped so that no cycle
/// uses two edges with the same centre. Unroutable stretches fall back to
/// closing each surviving chain on its own; what still fails is returned in
/// `failed`.
inline ClosureResult close_matching_into_cycles(const Graph& gc, const TaggedMatching& m,
                                                const ConnectorConfig& cfg = {}) {
  detail::validate_matching(gc.vertex_count(), m);
  ClosureResult out;
  if (m.empty()) return out;
  Graph work = gc;
  std::vector<Edge> used;
  const bool centred = std::any_of(m.edges.begin(), m.edges.end(),
                                   [](const TaggedEdge& t) { return t.center.has_value(); });
  if (centred) {
    const auto groups = split_avoiding_duplicates(m);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      auto group_cfg = cfg;
      group_cfg.seed = derive_seed(cfg.seed, g);
      detail::close_group(work, groups[g], group_cfg, out, used);
    }
  } else {
    detail::close_group(work, m, cfg, out, used);
  }
  out.connector_edges_used = EdgeSet(std::move(used));
  return out;
}

struct AuxiliaryPairing {
  std::vector<TaggedMatching> per_center;  // E_v for each v in V0 with >= 2 V1-neighbours
  std::vector<Edge> leftover;              // one unpaired v-w edge per odd neighbourhood
};

/// For each v in V0, pairs its neighbours outside V0 (in increasing id order);
/// each pair w, w' becomes an edge tagged with centre v.
inline AuxiliaryPairing build_auxiliary_pairing(const Graph& h0, const VertexSet& v0) {
  std::vector<char> in_v0(h0.vertex_count(), 0);
  for (Vertex v : v0) {
    if (v >= h0.vertex_count()) throw InputError("V0 vertex out of range");
    in_v0[v] = 1;
  }
  AuxiliaryPairing out;
  VertexSet centers = v0;
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (Vertex v : centers) {
    std::vector<Vertex> outer;
    for (Vertex w : h0.neighbors(v)) {
      if (!in_v0[w]) outer.push_back(w);
    }
    std::sort(outer.begin(), outer.end());
    TaggedMatching ev;
    for (std::size_t i = 0; i + 1 < outer.size(); i += 2) {
      ev.edges.push_back({make_edge(outer[i], outer[i + 1]), v});
    }
    if (outer.size() % 2 == 1) out.leftover.push_back(make_edge(v, outer.back()));
    if (!ev.empty()) out.per_center.push_back(std::move(ev));
  }
  return out;
}

}  // namespace cycleshred
