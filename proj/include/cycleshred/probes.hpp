#pragma once

// Monte-Carlo measurements of G(n, p) structure: odd-degree fraction, giant
// component, short cycles, small-set density, and flagged heuristic
// estimates for quantities that are expensive to compute exactly.

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <ostream>
#include <string>

#include "cycleshred/cycle_extract.hpp"
#include "cycleshred/detail/parallel.hpp"
#include "cycleshred/euler_reduce.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/random.hpp"

namespace cycleshred {

struct ProbeConfig {
  std::size_t jobs = 1;
  /// Skip triangle / 4-cycle counting above this many sum-of-degree-squares.
  double short_cycle_budget = 2e8;
  /// Connected-set expansions allowed for the exhaustive small-set scan.
  std::size_t small_set_budget = 2'000'000;
  std::size_t small_set_max = 6;
  /// Greedy densest-set restarts for sets above the exhaustive size.
  std::size_t density_samples = 64;
  std::size_t cross_samples = 32;
};

struct ProbeSample {
  std::size_t trial = 0;
  Seed seed = 0;
  std::size_t m = 0;
  double odd_fraction = 0.0;
  double giant_coverage = 0.0;
  bool small_components_trees = true;
  long long triangles = -1;  // -1 when skipped for size
  long long four_cycles = -1;
  /// Largest e(T)/|T| seen over sets of size <= 2 n^(1/10).
  double small_set_density = 0.0;
  bool small_set_exhaustive = false;  // false: sets above small_set_max were sampled
  double cross_edge_ratio = 0.0;      // max e(T, T') / (t n p / 6) over sampled pairs
  std::size_t low_odd_neighbor = 0;   // vertices with < np/5 odd-degree neighbours
  std::size_t independence_estimate = 0;  // greedy, a lower bound
  std::size_t diameter_estimate = 0;      // double sweep, a lower bound
};

struct Summary {
  double mean = 0, stddev = 0, min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

inline Summary summarize(std::vector<double> xs) {
  Summary s;
  if (xs.empty()) return s;
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = xs.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  auto q = [&](double f) {
    const double pos = f * (n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
  };
  s.min = xs.front();
  s.q25 = q(0.25);
  s.median = q(0.5);
  s.q75 = q(0.75);
  s.max = xs.back();
  return s;
}

struct ProbeStats {
  std::size_t n = 0;
  double p = 0.0;
  std::vector<ProbeSample> samples;

  template <class Get>
  Summary summary(Get get) const {
    std::vector<double> xs;
    for (const auto& s : samples) xs.push_back(static_cast<double>(get(s)));
    return summarize(std::move(xs));
  }
};

namespace detail {

/// Triangles and 4-cycles via sorted adjacency and wedge counts.
inline std::pair<long long, long long> count_three_four_cycles(const Graph& g) {
  const auto n = g.vertex_count();
  const SortedAdjacency adj(g);
  long long triangles = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : adj[u]) {
      if (v <= u) continue;
      const auto a = adj[u];
      const auto b = adj[v];
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
          ++i;
        } else if (b[j] < a[i]) {
          ++j;
        } else {
          if (a[i] > v) ++triangles;
          ++i;
          ++j;
        }
      }
    }
  }
  // Each 4-cycle has two diagonals; count pairs of wedges per diagonal.
  long long four = 0;
  std::vector<std::uint32_t> wedges(n, 0);
  std::vector<Vertex> touched;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    for (Vertex x : adj[u]) {
      for (Vertex w : adj[x]) {
        if (w <= u) continue;
        if (wedges[w]++ == 0) touched.push_back(w);
      }
    }
    for (Vertex w : touched) {
      const long long c = wedges[w];
      four += c * (c - 1) / 2;
      wedges[w] = 0;
    }
  }
  return {triangles, four / 2};
}

/// Max e(T)/|T| over connected sets of size <= max_size, by extension of
/// sets whose least vertex is the root. Returns false if the budget ran out.
inline bool densest_connected_small(const Graph& g, std::size_t max_size, std::size_t budget,
                                    double& best) {
  std::size_t used = 0;
  std::vector<Vertex> set;
  // Every connected set with least vertex `root` is reached (possibly more
  // than once, which does not matter for a maximum).
  auto rec = [&](auto&& self, Vertex root, std::size_t edges) -> bool {
    if (++used > budget) return false;
    if (set.size() >= 2) {
      best = std::max(best, static_cast<double>(edges) / static_cast<double>(set.size()));
    }
    if (set.size() == max_size) return true;
    const auto members = set.size();
    for (std::size_t i = 0; i < members; ++i) {
      for (Vertex w : g.neighbors(set[i])) {
        if (w <= root || std::find(set.begin(), set.end(), w) != set.end()) continue;
        std::size_t add = 0;
        for (Vertex x : set) add += g.has_edge(x, w);
        set.push_back(w);
        const bool ok = self(self, root, edges + add);
        set.pop_back();
        if (!ok) return false;
      }
    }
    return true;
  };
  for (Vertex r = 0; r < g.vertex_count(); ++r) {
    set.assign(1, r);
    if (!rec(rec, r, 0)) return false;
  }
  return true;
}

/// Greedy densest growth from a random vertex: repeatedly add the frontier
/// vertex with most neighbours inside the set.
inline double greedy_dense_growth(const Graph& g, std::size_t max_size, CounterRng& rng) {
  const auto n = g.vertex_count();
  std::vector<Vertex> set{static_cast<Vertex>(rng.below(n))};
  std::vector<std::uint32_t> inside(n, 0);
  std::vector<char> member(n, 0);
  member[set[0]] = 1;
  for (Vertex w : g.neighbors(set[0])) ++inside[w];
  std::size_t edges = 0;
  double best = 0.0;
  std::vector<Vertex> frontier(g.neighbors(set[0]).begin(), g.neighbors(set[0]).end());
  while (set.size() < max_size && !frontier.empty()) {
    Vertex pick = frontier[0];
    for (Vertex w : frontier) {
      if (inside[w] > inside[pick]) pick = w;
    }
    edges += inside[pick];
    member[pick] = 1;
    set.push_back(pick);
    for (Vertex w : g.neighbors(pick)) {
      if (!member[w] && inside[w]++ == 0) frontier.push_back(w);
    }
    frontier.erase(std::remove_if(frontier.begin(), frontier.end(), [&](Vertex w) { return member[w]; }),
                   frontier.end());
    best = std::max(best, static_cast<double>(edges) / static_cast<double>(set.size()));
  }
  return best;
}

inline std::size_t greedy_independent_set(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  std::vector<char> blocked(n, 0);
  std::size_t size = 0;
  for (Vertex v : order) {
    if (blocked[v]) continue;
    ++size;
    blocked[v] = 1;
    for (Vertex w : g.neighbors(v)) blocked[w] = 1;
  }
  return size;
}

inline std::pair<Vertex, std::size_t> bfs_farthest(const Graph& g, Vertex s) {
  std::vector<std::int64_t> dist(g.vertex_count(), -1);
  std::deque<Vertex> q{s};
  dist[s] = 0;
  Vertex far = s;
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop_front();
    if (dist[x] > dist[far]) far = x;
    for (Vertex y : g.neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    }
  }
  return {far, static_cast<std::size_t>(dist[far])};
}

inline ProbeSample probe_one(const Graph& g, double p, const ProbeConfig& cfg, Seed seed) {
  ProbeSample s;
  const auto n = g.vertex_count();
  const double nd = static_cast<double>(n);
  s.m = g.edge_count();
  const auto odd = odd_vertices(g);
  s.odd_fraction = static_cast<double>(odd.size()) / nd;

  const auto comps = connected_components(g);
  s.giant_coverage = comps.empty() ? 0.0 : static_cast<double>(comps[0].size()) / nd;
  for (std::size_t c = 1; c < comps.size(); ++c) {
    std::size_t deg = 0;
    for (Vertex v : comps[c]) deg += g.degree(v);
    if (deg / 2 + 1 != comps[c].size()) s.small_components_trees = false;
  }

  double wedge_work = 0.0;
  for (Vertex v = 0; v < n; ++v) wedge_work += std::pow(static_cast<double>(g.degree(v)), 2.0);
  if (wedge_work <= cfg.short_cycle_budget) {
    const auto [t, f] = count_three_four_cycles(g);
    s.triangles = t;
    s.four_cycles = f;
  }

  CounterRng rng(seed, 0x70726f6265);
  const auto big = std::max<std::size_t>(2, static_cast<std::size_t>(2.0 * std::pow(nd, 0.1)));
  const auto small_max = std::min(cfg.small_set_max, big);
  s.small_set_exhaustive = densest_connected_small(g, small_max, cfg.small_set_budget, s.small_set_density);
  if (n > 0) {
    for (std::size_t i = 0; i < cfg.density_samples; ++i) {
      s.small_set_density = std::max(s.small_set_density, greedy_dense_growth(g, big, rng));
    }
  }
  if (big > small_max) s.small_set_exhaustive = false;

  // Cross edges between random disjoint equal-size sets, t from n^(1/10) to n/100.
  const auto t_lo = static_cast<std::size_t>(std::ceil(std::pow(nd, 0.1)));
  const auto t_hi = static_cast<std::size_t>(nd / 100.0);
  if (t_lo <= t_hi && p > 0.0) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> side(n, 0);
    for (std::size_t i = 0; i < cfg.cross_samples; ++i) {
      const auto t = t_lo + static_cast<std::size_t>(rng.below(t_hi - t_lo + 1));
      shuffle(perm, rng);
      std::fill(side.begin(), side.end(), 0);
      for (std::size_t j = 0; j < t; ++j) side[perm[j]] = 1;
      for (std::size_t j = t; j < 2 * t; ++j) side[perm[j]] = 2;
      std::size_t cross = 0;
      for (std::size_t j = 0; j < t; ++j) {
        for (Vertex w : g.neighbors(perm[j])) cross += side[w] == 2;
      }
      const double bound = static_cast<double>(t) * nd * p / 6.0;
      s.cross_edge_ratio = std::max(s.cross_edge_ratio, static_cast<double>(cross) / bound);
    }
  }

  std::vector<char> is_odd(n, 0);
  for (Vertex v : odd) is_odd[v] = 1;
  for (Vertex v = 0; v < n; ++v) {
    std::size_t c = 0;
    for (Vertex w : g.neighbors(v)) c += is_odd[w];
    if (static_cast<double>(c) < nd * p / 5.0) ++s.low_odd_neighbor;
  }

  s.independence_estimate = greedy_independent_set(g);
  if (!comps.empty() && comps[0].size() > 1) {
    const auto [a, da] = bfs_farthest(g, comps[0][0]);
    (void)da;
    s.diameter_estimate = bfs_farthest(g, a).second;
  }
  return s;
}

}  // namespace detail

/// Independent G(n, p) trials, trial i using seed derive_seed(seed, i).
inline ProbeStats probe_properties(std::size_t n, double p, std::size_t trials, Seed seed,
                                   const ProbeConfig& cfg = {}) {
  if (trials == 0) throw InputError("probe needs at least one trial");
  ProbeStats out;
  out.n = n;
  out.p = p;
  out.samples.resize(trials);
  detail::parallel_for(trials, cfg.jobs, [&](std::size_t i) {
    const Seed s = derive_seed(seed, i);
    const auto g = gnp(n, p, s);
    auto sample = detail::probe_one(g, p, cfg, s);
    sample.trial = i;
    sample.seed = s;
    out.samples[i] = sample;
  });
  return out;
}

inline constexpr const char* kProbeCsvHeader =
    "n,p,trial,seed,m,odd_fraction,giant_coverage,small_components_trees,triangles,four_cycles,"
    "small_set_density,small_set_exhaustive,cross_edge_ratio,low_odd_neighbor,"
    "independence_estimate,diameter_estimate";

inline void write_probe_csv(std::ostream& os, const ProbeStats& st) {
  os << kProbeCsvHeader << '\n';
  os.precision(10);
  for (const auto& s : st.samples) {
    os << st.n << ',' << st.p << ',' << s.trial << ',' << s.seed << ',' << s.m << ','
       << s.odd_fraction << ',' << s.giant_coverage << ',' << (s.small_components_trees ? 1 : 0)
       << ',' << s.triangles << ',' << s.four_cycles << ',' << s.small_set_density << ','
       << (s.small_set_exhaustive ? 1 : 0) << ',' << s.cross_edge_ratio << ',' << s.low_odd_neighbor
       << ',' << s.independence_estimate << ',' << s.diameter_estimate << '\n';
  }
}

}  // namespace cycleshred
