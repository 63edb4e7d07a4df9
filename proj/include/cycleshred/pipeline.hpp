#pragma once

// End-to-end decomposition of a graph into cycles and single edges, with
// regime dispatch on edge density. Every branch finishes with a safety net
// that peels, repairs or emits whatever is left, so the result is always a
// valid decomposition; the regimes only differ in how few pieces they use.

#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cycleshred/cycle_extract.hpp"
#include "cycleshred/decomposition.hpp"
#include "cycleshred/euler_reduce.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/hamilton.hpp"
#include "cycleshred/matching_connect.hpp"
#include "cycleshred/random.hpp"
#include "cycleshred/verify.hpp"

namespace cycleshred {

enum class Regime { sparse, intermediate, dense };

constexpr std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::sparse: return "sparse";
    case Regime::intermediate: return "intermediate";
    case Regime::dense: return "dense";
  }
  return "unknown";
}

inline std::optional<Regime> regime_from_name(std::string_view s) {
  for (Regime r : {Regime::sparse, Regime::intermediate, Regime::dense}) {
    if (regime_name(r) == s) return r;
  }
  return std::nullopt;
}

struct PipelineConfig {
  Seed seed = 0;
  /// Long-cycle stripping of the closure input stops at this average degree.
  double stop_avg_deg = 84.0;
  /// The final Euler remainder is stripped further, down to this average
  /// degree, before peeling. Peeling alone yields many short cycles.
  double tail_avg_deg = 0.0;
  CycleSearchConfig search{};
  HamiltonConfig hamilton{};
  /// Connector length cap; 0 selects default_path_cap.
  std::size_t connector_max_path_len = 0;
  std::size_t connector_retries = 3;
  /// Pairs per closure batch, as a fraction of n log(np) / log n.
  double capacity_fraction = 0.125;
  /// Neighbourhood-ratio bound used for reporting; 0 selects 4 / sqrt(log n).
  double ratio_bound = 0.0;
  /// V0 = vertices of degree >= factor * log^2 n in the stripped remainder.
  double v0_degree_factor = 0.5;
  /// Connector graph parts per colour class; 0 selects ceil(log n).
  std::size_t sparsify_parts = 0;
  std::optional<Regime> regime;
  std::optional<double> p1;
  std::optional<double> p2;
  std::optional<double> p3;
  std::size_t repair_rounds = 2;
  bool augment = false;
};

struct SplitProbabilities {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;

  friend bool operator==(const SplitProbabilities&, const SplitProbabilities&) = default;
};

/// Split probabilities for observed n and density p, each clamped in turn so
/// that the running total stays within 1.
inline SplitProbabilities split_probabilities(std::size_t n, double p, const PipelineConfig& cfg) {
  const double nd = static_cast<double>(n);
  const double l = safe_log(nd);
  const double np = std::max(nd * p, 1e-300);
  SplitProbabilities s;
  s.p1 = cfg.p1.value_or(2.0 * std::pow(l, 5.0) / np);
  s.p2 = cfg.p2.value_or(std::pow(nd, 0.8) * std::pow(l, 3.0) / np);
  s.p3 = cfg.p3.value_or(l * l / np);
  s.p1 = std::clamp(s.p1, 0.0, 1.0);
  s.p2 = std::clamp(s.p2, 0.0, 1.0 - s.p1);
  s.p3 = std::clamp(s.p3, 0.0, std::max(0.0, 1.0 - s.p1 - s.p2));
  return s;
}

inline double edge_density(const Graph& g) {
  const double n = static_cast<double>(g.vertex_count());
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

/// sparse: p <= log^10 n / n; dense: p > n^(-1/6); intermediate between.
/// The dense test runs first so that tiny n, where log^10 n / n exceeds 1,
/// still reaches the dense branch for near-complete graphs.
inline Regime choose_regime(std::size_t n, double p) {
  const double nd = std::max<double>(static_cast<double>(n), 1.0);
  if (p > std::pow(nd, -1.0 / 6.0)) return Regime::dense;
  if (p <= std::pow(safe_log(nd), 10.0) / nd) return Regime::sparse;
  return Regime::intermediate;
}

/// Edges consumed by one stage of a run.
struct StageRecord {
  std::string name;
  std::size_t edges_before = 0;
  std::size_t edges_after = 0;
  std::size_t pieces = 0;

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct RunReport {
  Regime regime = Regime::sparse;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t odd = 0;
  double density = 0.0;
  std::size_t lower_bound = 0;
  std::size_t pieces = 0;
  std::size_t cycles = 0;
  std::size_t single_edges = 0;
  std::array<std::size_t, kAllStages.size()> stage_counts{};
  std::size_t e0_size = 0;
  std::size_t e0_residue = 0;
  SplitProbabilities probabilities{};
  std::size_t hamilton_target = 0;
  std::size_t hamilton_achieved = 0;
  std::string hamilton_stop;
  std::size_t matching_edges_offered = 0;
  std::size_t connector_failures = 0;
  std::size_t closure_groups = 0;
  std::size_t connector_path_cap = 0;
  double capacity_fraction = 0.0;
  double ratio_bound = 0.0;
  double max_part_ratio = 0.0;
  std::size_t safety_repairs = 0;
  std::vector<StageRecord> stages;

  /// Wall time; never part of report equality.
  struct Timing {
    double wall_ms = 0.0;
    friend bool operator==(const Timing&, const Timing&) { return true; }
  } timing;

  std::size_t count(Stage s) const {
    for (std::size_t i = 0; i < kAllStages.size(); ++i) {
      if (kAllStages[i] == s) return stage_counts[i];
    }
    return 0;
  }

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct DecomposeResult {
  Decomposition decomposition;
  RunReport report;
};

namespace detail {

/// Owns the undecomposed edge pool and the growing decomposition.
class Builder {
 public:
  Builder(const Graph& g, const PipelineConfig& cfg, Regime regime, double p)
      : g_(g), cfg_(cfg), pool_(g), p_(p) {
    d_.n = g.vertex_count();
    r_.regime = regime;
    r_.n = g.vertex_count();
    r_.m = g.edge_count();
    r_.density = p;
    r_.capacity_fraction = cfg.capacity_fraction;
    r_.ratio_bound = cfg.ratio_bound > 0.0
                         ? cfg.ratio_bound
                         : 4.0 / std::sqrt(safe_log(static_cast<double>(g.vertex_count())));
  }

  const Graph& pool() const { return pool_; }
  Seed seed(std::uint64_t stream) const { return derive_seed(cfg_.seed, stream); }
  const PipelineConfig& config() const { return cfg_; }
  RunReport& report() { return r_; }

  void emit_cycles(std::vector<Cycle>& cycles, Stage stage, std::string_view label) {
    const auto before = pool_.edge_count();
    for (auto& c : cycles) {
      remove_cycle(pool_, c);
      d_.add_cycle(std::move(c), stage);
    }
    record(label, before, cycles.size());
    cycles.clear();
  }

  void emit_edges(std::span<const Edge> edges, Stage stage, std::string_view label) {
    const auto before = pool_.edge_count();
    for (const auto& e : edges) {
      pool_.remove_edge(e);
      d_.add_edge(e, stage);
    }
    record(label, before, edges.size());
  }

  /// E0 with odd(E0) = odd(G) taken from `source`, plus a second repair on
  /// the whole pool for whatever `source` could not pair.
  void repair(const Graph& source) {
    const auto s = odd_vertices(g_);
    auto rep = euler_reduction(source, s, {seed(0x65300), cfg_.augment});
    emit_edges(rep.e0.items(), Stage::euler_repair, "euler-repair");
    r_.e0_size = rep.e0.size();
    r_.e0_residue = rep.residue.size();
    if (!rep.residue.empty()) {
      auto again = euler_reduction(pool_, std::nullopt, {seed(0x65301), cfg_.augment});
      emit_edges(again.e0.items(), Stage::euler_repair, "euler-repair-residue");
      r_.e0_size += again.e0.size();
    }
  }

  /// Strip `h` to bounded average degree, then close the colour classes of
  /// its remainder into cycles with connector paths from `c`. Both must be
  /// edge-disjoint subgraphs of the pool.
  void closure_round(Graph h, Graph c, std::uint64_t stream) {
    const auto n = g_.vertex_count();
    if (h.edge_count() == 0) return;
    StripConfig sc;
    sc.search = cfg_.search;
    sc.search.seed = seed(stream + 1);
    auto stripped = strip_long_cycles(h, cfg_.stop_avg_deg, sc);
    emit_cycles(stripped.cycles, Stage::long_cycle, "long-cycle");
    h = std::move(stripped.remainder);
    if (h.edge_count() == 0 || c.edge_count() == 0) return;

    const double l = safe_log(static_cast<double>(n));
    const double threshold = cfg_.v0_degree_factor * l * l;
    VertexSet v0;
    std::vector<char> in_v0(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (static_cast<double>(h.degree(v)) >= threshold && h.degree(v) >= 2) {
        v0.push_back(v);
        in_v0[v] = 1;
      }
    }
    auto aux = build_auxiliary_pairing(h, v0);
    std::vector<TaggedEdge> all;
    for (const auto& e : h.edge_list()) {
      if (!in_v0[e.u] && !in_v0[e.v]) all.push_back({e, std::nullopt});
    }
    for (const auto& ev : aux.per_center) all.insert(all.end(), ev.edges.begin(), ev.edges.end());
    const auto classes = edge_color_list(n, all);
    r_.matching_edges_offered += all.size();

    const double pc = edge_density(c);
    const auto cap = cfg_.connector_max_path_len != 0 ? cfg_.connector_max_path_len
                                                      : default_path_cap(n, pc);
    r_.connector_path_cap = cap;
    const double npc = std::max(static_cast<double>(n) * pc, std::exp(1.0));
    const auto capacity = std::max<std::size_t>(
        1, static_cast<std::size_t>(cfg_.capacity_fraction * static_cast<double>(n) *
                                    std::log(npc) / l));
    const auto parts = cfg_.sparsify_parts != 0 ? cfg_.sparsify_parts
                                                : static_cast<std::size_t>(std::ceil(l));

    std::vector<Cycle> closed;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      auto split_parts = sparsify_split(c, classes[i], parts, derive_seed(seed(stream + 2), i));
      for (std::size_t j = 0; j < split_parts.size(); ++j) {
        auto& part = split_parts[j];
        r_.max_part_ratio = std::max(r_.max_part_ratio, part.ratio);
        const auto groups = split_avoiding_duplicates(part.matching, capacity);
        for (std::size_t k = 0; k < groups.size(); ++k) {
          ConnectorConfig cc{cap, cfg_.connector_retries,
                             derive_seed(seed(stream + 3), (i << 32) ^ (j << 16) ^ k)};
          auto res = close_matching_into_cycles(part.graph, groups[k], cc);
          r_.closure_groups += res.closure_groups;
          r_.connector_failures += res.failed.size();
          for (const auto& e : res.connector_edges_used) {
            part.graph.remove_edge(e);
            c.remove_edge(e);
          }
          for (auto& cy : res.cycles) closed.push_back(std::move(cy));
        }
      }
    }
    emit_cycles(closed, Stage::matching_closure, "matching-closure");
  }

  /// Hamilton cycles out of `g4`, a subgraph of the pool.
  void hamilton_round(const Graph& g4, double nominal_degree) {
    const auto n = static_cast<double>(g_.vertex_count());
    const double degree = std::min(nominal_degree, static_cast<double>(g4.min_degree()));
    const double raw = std::floor((degree - std::pow(n, 0.6)) / 2.0);
    r_.hamilton_target = raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
    auto hc = cfg_.hamilton;
    hc.seed = seed(0x68616d);
    auto pack = pack_hamilton_cycles(g4, r_.hamilton_target, hc);
    r_.hamilton_achieved = pack.cycles.size();
    r_.hamilton_stop = std::string(pack_stop_name(pack.stop_reason));
    emit_cycles(pack.cycles, Stage::hamilton, "hamilton");
  }

  /// Safety net: strip and peel an Euler pool; otherwise repair it again
  /// (bounded rounds), and finally emit the rest as single edges.
  void finish() {
    for (std::size_t round = 0; pool_.edge_count() > 0; ++round) {
      if (is_euler(pool_)) {
        StripConfig sc;
        sc.search = cfg_.search;
        sc.search.seed = seed(0x7461696c + round);
        auto stripped = strip_long_cycles(pool_, std::min(cfg_.stop_avg_deg, cfg_.tail_avg_deg), sc);
        emit_cycles(stripped.cycles, Stage::long_cycle, "tail-long-cycle");
        auto peeled = peel_cycles(pool_);
        emit_cycles(peeled, Stage::peel, "peel");
        break;
      }
      if (round >= cfg_.repair_rounds) {
        const auto rest = pool_.edge_list();
        emit_edges(rest, Stage::leftover_edge, "leftover-edge");
        break;
      }
      auto rep = euler_reduction(pool_, std::nullopt, {seed(0x736166 + round), cfg_.augment});
      ++r_.safety_repairs;
      emit_edges(rep.e0.items(), Stage::euler_repair, "safety-repair");
    }
  }

  DecomposeResult take() {
    if (pool_.edge_count() != 0) throw std::logic_error("pipeline left undecomposed edges");
    r_.cycles = d_.cycles.size();
    r_.single_edges = d_.single_edges.size();
    r_.pieces = d_.piece_count();
    for (std::size_t i = 0; i < kAllStages.size(); ++i) r_.stage_counts[i] = d_.count(kAllStages[i]);
    return {std::move(d_), std::move(r_)};
  }

  double density() const { return p_; }

 private:
  void record(std::string_view label, std::size_t before, std::size_t pieces) {
    if (pieces == 0) return;
    const auto after = pool_.edge_count();
    if (after >= before) throw std::logic_error("stage " + std::string(label) + " made no progress");
    r_.stages.push_back({std::string(label), before, after, pieces});
  }

  const Graph& g_;
  const PipelineConfig& cfg_;
  Graph pool_;
  Decomposition d_;
  RunReport r_;
  double p_;
};

/// Edges of `g` that are still in the pool.
inline Graph in_pool(const Graph& g, const Graph& pool) {
  Graph out(g.vertex_count());
  for (const auto& e : g.edge_list()) {
    if (pool.has_edge(e.u, e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

/// Pool edges that are not in `g`.
inline Graph pool_minus(const Graph& pool, const Graph& g) {
  Graph out(pool.vertex_count());
  for (const auto& e : pool.edge_list()) {
    if (!g.has_edge(e.u, e.v)) out.add_edge(e.u, e.v);
  }
  return out;
}

inline void run_sparse(Builder& b) { b.repair(b.pool()); }

inline void run_intermediate(Builder& b) {
  auto& r = b.report();
  r.probabilities = split_probabilities(r.n, b.density(), b.config());
  const auto parts =
      split(b.pool(), SplitSpec({r.probabilities.p1, r.probabilities.p2}), b.seed(0x6d6964));
  b.repair(parts[1]);
  auto c = in_pool(parts[0], b.pool());
  auto h = pool_minus(b.pool(), parts[0]);
  b.closure_round(std::move(h), std::move(c), 0x100);
}

inline void run_dense(Builder& b) {
  auto& r = b.report();
  const auto& pr = r.probabilities = split_probabilities(r.n, b.density(), b.config());
  const auto parts = split(b.pool(), SplitSpec({pr.p1, pr.p2, pr.p3}), b.seed(0x64656e));
  b.repair(parts[2]);
  const double p4 = std::max(0.0, 1.0 - pr.p1 - pr.p2 - pr.p3);
  b.hamilton_round(in_pool(parts[3], b.pool()),
                   static_cast<double>(r.n) * b.density() * p4);
  // First closure: everything outside G1 and G2, connectors from G2.
  {
    auto c = in_pool(parts[1], b.pool());
    Graph h(r.n);
    for (const auto& e : b.pool().edge_list()) {
      if (!parts[0].has_edge(e.u, e.v) && !parts[1].has_edge(e.u, e.v)) h.add_edge(e.u, e.v);
    }
    b.closure_round(std::move(h), std::move(c), 0x200);
  }
  // Second closure: what is left outside G1, connectors from G1.
  auto c = in_pool(parts[0], b.pool());
  auto h = pool_minus(b.pool(), parts[0]);
  b.closure_round(std::move(h), std::move(c), 0x300);
}

inline DecomposeResult run(const Graph& g, Regime regime, double p, const PipelineConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Builder b(g, cfg, regime, p);
  switch (regime) {
    case Regime::sparse: run_sparse(b); break;
    case Regime::intermediate: run_intermediate(b); break;
    case Regime::dense: run_dense(b); break;
  }
  b.finish();
  auto out = b.take();
  out.report.odd = odd_vertices(g).size();
  out.report.lower_bound = lower_bound(g);
  const auto check = verify_decomposition(g, out.decomposition);
  if (!check.valid) throw std::logic_error("pipeline produced an invalid decomposition");
  out.report.timing.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace detail

/// Repair to Euler, strip long cycles, peel.
inline DecomposeResult decompose_sparse(const Graph& g, const PipelineConfig& cfg = {}) {
  return detail::run(g, Regime::sparse, edge_density(g), cfg);
}

/// Three-way split: connectors, repair source, bulk; closures of the
/// stripped bulk through the connector graph.
inline DecomposeResult decompose_intermediate(const Graph& g, const PipelineConfig& cfg = {}) {
  return detail::run(g, Regime::intermediate, edge_density(g), cfg);
}

/// Four-way split: Hamilton packing on the largest part, then two closure
/// rounds.
inline DecomposeResult decompose_dense(const Graph& g, const PipelineConfig& cfg = {}) {
  return detail::run(g, Regime::dense, edge_density(g), cfg);
}

/// Dispatches on `p_hint` (or the observed density) unless the config forces
/// a regime. Always returns a verified decomposition of `g`.
inline DecomposeResult decompose(const Graph& g, std::optional<double> p_hint = std::nullopt,
                                 const PipelineConfig& cfg = {}) {
  const double p = p_hint.value_or(edge_density(g));
  const Regime regime = cfg.regime.value_or(choose_regime(g.vertex_count(), p));
  return detail::run(g, regime, edge_density(g), cfg);
}

}  // namespace cycleshred
