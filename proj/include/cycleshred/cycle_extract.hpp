#pragma once

// Long-cycle stripping by Posa rotation-extension, k-cores, cycle peeling of
// Euler graphs, and the small-set expansion witness that certifies a stalled
// long-cycle search.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "cycleshred/decomposition.hpp"
#include "cycleshred/detail/posa_path.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred {

/// Natural log clamped from below so that polylog formulas stay positive and
/// finite for tiny n.
inline double safe_log(double x) { return std::log(std::max(x, 3.0)); }

/// Membership mask of the k-core: repeatedly drop vertices of degree < k.
inline std::vector<char> core_mask(const Graph& g, std::size_t k) {
  const auto n = g.vertex_count();
  std::vector<char> alive(n, 1);
  if (k == 0) return alive;
  std::vector<std::size_t> deg(n);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.neighbors(v).size();
    if (deg[v] < k) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex x = queue.back();
    queue.pop_back();
    for (Vertex y : g.neighbors(x)) {
      if (alive[y] && --deg[y] < k) {
        alive[y] = 0;
        queue.push_back(y);
      }
    }
  }
  return alive;
}

/// The k-core as a graph on the same vertex set (possibly edgeless).
inline Graph k_core(const Graph& g, std::size_t k) {
  if (k == 0) return g;
  return induced_subgraph(g, core_mask(g, k));
}

struct CycleSearchConfig {
  /// Rotation budget per search, as a multiple of the searched vertex count.
  double rotations_per_vertex = 50.0;
  /// Early-accept floor as a multiple of the average degree.
  double min_accept = 1.0;
  /// Rotations without improvement tolerated once the accept floor is met.
  std::size_t patience = 32;
  Seed seed = 0;
};

namespace detail {

struct SearchOutcome {
  std::optional<Cycle> best;
  std::size_t rotations = 0;
  std::vector<Vertex> longest_path;
};

/// Rotation-extension from `start` inside `mask`. Stops once a cycle of
/// length >= target is found, when the rotation budget is spent, or after
/// `patience` fruitless rotations with a cycle of length >= accept in hand.
inline SearchOutcome rotation_extension(const Graph& g, const std::vector<char>* mask,
                                        Vertex start, std::size_t target, std::size_t accept,
                                        std::size_t budget, std::size_t patience,
                                        CounterRng& rng, bool keep_longest_path = false) {
  SearchOutcome out;
  PosaPath path(g, mask);
  path.reset(start);
  path.extend_fully(rng);

  std::size_t best_len = 0;
  std::size_t stall = 0;
  bool reversed_for_leaf = false;
  while (true) {
    if (keep_longest_path && path.size() > out.longest_path.size()) {
      out.longest_path = path.vertices();
    }
    const std::size_t last = path.size() - 1;
    std::size_t min_pos = last;
    std::size_t pivot = last;
    std::size_t seen = 0;
    for (Vertex w : g.neighbors(path.back())) {
      if (!path.on_path(w)) continue;
      const auto p = static_cast<std::size_t>(path.position(w));
      if (p + 1 >= last) continue;
      min_pos = std::min(min_pos, p);
      if (rng.below(++seen) == 0) pivot = p;
    }
    if (seen > 0) {
      const std::size_t len = last - min_pos + 1;
      if (len > best_len) {
        best_len = len;
        const auto& v = path.vertices();
        out.best = Cycle{std::vector<Vertex>(v.begin() + static_cast<std::ptrdiff_t>(min_pos),
                                             v.end())};
        stall = 0;
      } else {
        ++stall;
      }
    } else {
      ++stall;
    }
    if (best_len >= target) break;
    if (out.rotations >= budget) break;
    if (best_len >= accept && stall >= patience) break;

    if (seen == 0) {
      // The back is a leaf of the admissible subgraph; try the other end once.
      if (reversed_for_leaf) break;
      reversed_for_leaf = true;
      path.reverse_all();
    } else {
      path.rotate(pivot);
    }
    ++out.rotations;
    path.extend_fully(rng);
  }
  return out;
}

inline std::size_t mask_count(const std::vector<char>& mask) {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

inline Vertex random_member(const std::vector<char>& mask, std::size_t count, CounterRng& rng) {
  auto skip = rng.below(count);
  for (Vertex v = 0; v < mask.size(); ++v) {
    if (mask[v] && skip-- == 0) return v;
  }
  return 0;
}

}  // namespace detail

/// Searches for a simple cycle of length >= target inside the 2-core of `g`.
/// Returns the longest cycle met (length >= 3), or nothing when `g` is a
/// forest. The search stops early at min_accept times the average degree.
inline std::optional<Cycle> find_long_cycle(const Graph& g, std::size_t target,
                                            const CycleSearchConfig& cfg = {}) {
  if (target < 3) throw InputError("cycle target length must be at least 3");
  const auto mask = core_mask(g, 2);
  const auto members = detail::mask_count(mask);
  if (members == 0) return std::nullopt;
  CounterRng rng(cfg.seed, 0x6c6f6e67);
  const auto accept = std::min<std::size_t>(
      target, std::max<std::size_t>(3, static_cast<std::size_t>(
                                           std::ceil(cfg.min_accept * g.average_degree()))));
  const auto budget = static_cast<std::size_t>(cfg.rotations_per_vertex * static_cast<double>(members));
  const Vertex start = detail::random_member(mask, members, rng);
  return detail::rotation_extension(g, &mask, start, target, accept, budget, cfg.patience, rng).best;
}

struct StripConfig {
  CycleSearchConfig search;
  /// Hard cap on extracted cycles; 0 means no cap.
  std::size_t max_rounds = 0;
};

struct StripResult {
  std::vector<Cycle> cycles;
  Graph remainder;
  std::vector<std::size_t> lengths;
  std::size_t rounds = 0;
  bool budget_exhausted = false;
};

/// Removes long cycles while the average degree (over all vertices) exceeds
/// `stop_avg_deg`. Each round searches the ceil(d/2)-core with target length
/// d log^2 n, accepting min_accept * d early.
inline StripResult strip_long_cycles(const Graph& h, double stop_avg_deg = 84.0,
                                     const StripConfig& cfg = {}) {
  StripResult out;
  out.remainder = h;
  Graph& w = out.remainder;
  const auto n = w.vertex_count();
  if (n == 0) return out;
  const double log_sq = std::pow(safe_log(static_cast<double>(n)), 2.0);
  CounterRng rng(cfg.search.seed, 0x7374726970);

  std::vector<char> mask(n);
  while (w.edge_count() > 0) {
    const double d = w.average_degree();
    if (d <= stop_avg_deg) break;
    if (cfg.max_rounds != 0 && out.rounds >= cfg.max_rounds) {
      out.budget_exhausted = true;
      break;
    }
    const auto k = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(d / 2.0)));

    // Skip the peeling pass when every non-isolated vertex already qualifies.
    bool all_qualify = true;
    std::size_t members = 0;
    for (Vertex v = 0; v < n; ++v) {
      const auto deg = w.neighbors(v).size();
      mask[v] = deg >= k;
      members += mask[v];
      if (deg > 0 && deg < k) all_qualify = false;
    }
    if (!all_qualify) {
      mask = core_mask(w, k);
      members = detail::mask_count(mask);
    }
    if (members == 0) {
      out.budget_exhausted = true;
      break;
    }

    const auto target = static_cast<std::size_t>(std::ceil(d * log_sq));
    const auto accept = std::max<std::size_t>(
        3, static_cast<std::size_t>(std::ceil(cfg.search.min_accept * d)));
    const auto budget =
        static_cast<std::size_t>(cfg.search.rotations_per_vertex * static_cast<double>(members));
    const Vertex start = detail::random_member(mask, members, rng);
    auto found =
        detail::rotation_extension(w, &mask, start, target, accept, budget, cfg.search.patience, rng);
    if (!found.best) {
      out.budget_exhausted = true;
      break;
    }
    remove_cycle(w, *found.best);
    out.lengths.push_back(found.best->length());
    out.cycles.push_back(std::move(*found.best));
    ++out.rounds;
  }
  return out;
}

/// Partitions the edges of an Euler graph into simple cycles by walking until
/// the walk revisits a vertex on its stack and popping the closed loop.
inline std::vector<Cycle> peel_cycles(const Graph& h) {
  const auto n = h.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    if (h.neighbors(v).size() % 2 == 1) {
      throw InputError("peel_cycles needs an Euler graph; vertex " + std::to_string(v) +
                       " has odd degree");
    }
  }
  const auto edges = h.edge_list();
  std::vector<std::size_t> offset(n + 1, 0);
  for (const auto& e : edges) {
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::pair<Vertex, std::uint32_t>> incidence(offset[n]);
  {
    auto fill = offset;
    for (std::uint32_t id = 0; id < edges.size(); ++id) {
      incidence[fill[edges[id].u]++] = {edges[id].v, id};
      incidence[fill[edges[id].v]++] = {edges[id].u, id};
    }
  }
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
  std::vector<std::int64_t> stack_pos(n, -1);
  std::vector<Vertex> stack;
  std::vector<Cycle> out;

  auto next_edge = [&](Vertex x) -> std::optional<std::pair<Vertex, std::uint32_t>> {
    while (cursor[x] < offset[x + 1]) {
      const auto entry = incidence[cursor[x]++];
      if (!used[entry.second]) return entry;
    }
    return std::nullopt;
  };

  for (Vertex s = 0; s < n; ++s) {
    stack.assign(1, s);
    stack_pos[s] = 0;
    while (true) {
      const Vertex x = stack.back();
      const auto step = next_edge(x);
      if (!step) {
        if (stack.size() != 1) {
          throw std::logic_error("cycle peeling stalled away from its start vertex");
        }
        break;
      }
      used[step->second] = 1;
      const Vertex y = step->first;
      if (stack_pos[y] >= 0) {
        const auto j = static_cast<std::size_t>(stack_pos[y]);
        out.push_back(Cycle{std::vector<Vertex>(stack.begin() + static_cast<std::ptrdiff_t>(j),
                                                stack.end())});
        for (std::size_t i = j + 1; i < stack.size(); ++i) stack_pos[stack[i]] = -1;
        stack.resize(j + 1);
      } else {
        stack_pos[y] = static_cast<std::int64_t>(stack.size());
        stack.push_back(y);
      }
    }
    stack_pos[s] = -1;
  }
  return out;
}

inline std::size_t count_short_cycles(const std::vector<Cycle>& cycles, std::size_t threshold) {
  return static_cast<std::size_t>(std::count_if(
      cycles.begin(), cycles.end(), [&](const Cycle& c) { return c.length() <= threshold; }));
}

/// Vertices outside T adjacent to some vertex of T.
inline VertexSet external_neighborhood(const Graph& g, const VertexSet& t) {
  std::vector<char> in_t(g.vertex_count(), 0);
  for (Vertex v : t) in_t[v] = 1;
  VertexSet out;
  for (Vertex v : t) {
    for (Vertex w : g.neighbors(v)) {
      if (!in_t[w]) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct WitnessConfig {
  CycleSearchConfig search;
  /// Cap on explicitly enumerated candidate sets.
  std::size_t subset_budget = 200000;
  /// Cap on rotated paths visited while collecting Posa endpoints.
  std::size_t endpoint_state_budget = 4096;
};

namespace detail {

inline bool is_expansion_witness(const Graph& g, const VertexSet& t, std::size_t max_size) {
  return !t.empty() && t.size() <= max_size &&
         external_neighborhood(g, t).size() <= 2 * t.size();
}

/// Endpoints reachable by rotations with the first vertex fixed, starting
/// from a path that rotations cannot extend. Returns the final path's
/// endpoint set; `path` is lengthened whenever a rotation exposes an
/// extension.
inline VertexSet posa_endpoints(const Graph& g, std::vector<Vertex> path, std::size_t state_budget) {
  while (true) {
    std::vector<std::vector<Vertex>> queue{path};
    std::vector<char> is_end(g.vertex_count(), 0);
    is_end[path.back()] = 1;
    VertexSet ends{path.back()};
    bool extended = false;
    std::vector<std::int64_t> pos(g.vertex_count(), -1);
    for (std::size_t head = 0; head < queue.size() && head < state_budget && !extended; ++head) {
      const auto q = queue[head];
      std::fill(pos.begin(), pos.end(), -1);
      for (std::size_t i = 0; i < q.size(); ++i) pos[q[i]] = static_cast<std::int64_t>(i);
      const Vertex x = q.back();
      for (Vertex y : g.neighbors(x)) {
        if (pos[y] < 0) {
          path = q;
          path.push_back(y);
          extended = true;
          break;
        }
        const auto j = static_cast<std::size_t>(pos[y]);
        if (j + 2 >= q.size()) continue;
        auto r = q;
        std::reverse(r.begin() + static_cast<std::ptrdiff_t>(j + 1), r.end());
        if (!is_end[r.back()]) {
          is_end[r.back()] = 1;
          ends.push_back(r.back());
          queue.push_back(std::move(r));
        }
      }
    }
    if (!extended) {
      std::sort(ends.begin(), ends.end());
      return ends;
    }
    // Grow greedily, then collect endpoints for the longer path.
    std::vector<char> on(g.vertex_count(), 0);
    for (Vertex v : path) on[v] = 1;
    for (bool grew = true; grew;) {
      grew = false;
      for (Vertex y : g.neighbors(path.back())) {
        if (!on[y]) {
          on[y] = 1;
          path.push_back(y);
          grew = true;
          break;
        }
      }
    }
  }
}

inline double binomial_prefix(std::size_t n, std::size_t t) {
  double total = 0.0;
  double term = 1.0;
  for (std::size_t k = 1; k <= t && k <= n; ++k) {
    term = term * static_cast<double>(n - k + 1) / static_cast<double>(k);
    total += term;
  }
  return total;
}

/// First set T among the subsets of `pool` of size 1..t (in size order)
/// with |N(T)| <= 2|T|.
inline std::optional<VertexSet> search_subsets(const Graph& g, const VertexSet& pool,
                                               std::size_t t) {
  std::vector<std::size_t> idx;
  for (std::size_t size = 1; size <= t && size <= pool.size(); ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      VertexSet candidate;
      for (auto i : idx) candidate.push_back(pool[i]);
      std::sort(candidate.begin(), candidate.end());
      if (is_expansion_witness(g, candidate, t)) return candidate;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// When a rotation-extension search for a cycle of length >= 3t stalls,
/// returns a set T with |T| <= t and |N(T)| <= 2|T| (N external). Candidates
/// are the Posa endpoint set of the stalled path, then its small subsets,
/// then all vertex sets of size <= t when enumeration fits the budget.
/// Returns nothing if a long cycle was found, or if no candidate qualified.
inline std::optional<VertexSet> expansion_witness(const Graph& g, std::size_t t,
                                                  const WitnessConfig& cfg = {}) {
  if (t == 0) throw InputError("expansion witness needs t >= 1");
  const auto n = g.vertex_count();
  if (n == 0) return std::nullopt;
  const std::size_t target = 3 * t;

  CounterRng rng(cfg.search.seed, 0x77746e73);
  std::vector<Vertex> longest;
  const auto mask = core_mask(g, 2);
  const auto members = detail::mask_count(mask);
  if (members > 0) {
    const auto budget =
        static_cast<std::size_t>(cfg.search.rotations_per_vertex * static_cast<double>(members));
    // Small graphs: start from every core vertex; large ones: a few random starts.
    const std::size_t starts = members <= 64 ? members : 4;
    Vertex next = 0;
    for (std::size_t i = 0; i < starts; ++i) {
      Vertex start;
      if (members <= 64) {
        while (!mask[next]) ++next;
        start = next++;
      } else {
        start = detail::random_member(mask, members, rng);
      }
      auto found = detail::rotation_extension(g, &mask, start, target, target, budget,
                                              budget, rng, /*keep_longest_path=*/true);
      if (found.best && found.best->length() >= target) return std::nullopt;
      if (found.longest_path.size() > longest.size()) longest = std::move(found.longest_path);
    }
  }
  if (longest.empty()) {
    // Forest (or no core): start from a vertex of maximum degree.
    Vertex start = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (g.neighbors(v).size() > g.neighbors(start).size()) start = v;
    }
    longest = {start};
  }

  const auto ends = detail::posa_endpoints(g, longest, cfg.endpoint_state_budget);
  if (detail::is_expansion_witness(g, ends, t)) return ends;
  if (detail::binomial_prefix(ends.size(), t) <= static_cast<double>(cfg.subset_budget)) {
    if (auto found = detail::search_subsets(g, ends, t)) return found;
  }
  if (detail::binomial_prefix(n, t) <= static_cast<double>(cfg.subset_budget)) {
    VertexSet all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    // Low-degree vertices first: they are the likeliest witnesses.
    std::stable_sort(all.begin(), all.end(), [&](Vertex a, Vertex b) {
      return g.neighbors(a).size() < g.neighbors(b).size();
    });
    return detail::search_subsets(g, all, t);
  }
  return std::nullopt;
}

}  // namespace cycleshred
