#pragma once

// Edge-list files and the JSON forms of decompositions, run reports, verify
// reports and pipeline config overrides.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cycleshred/decomposition.hpp"
#include "cycleshred/graph.hpp"
#include "cycleshred/pipeline.hpp"
#include "cycleshred/verify.hpp"

namespace cycleshred {

using json = nlohmann::json;

/// "n m" then m lines "u v", sorted. Readers accept any order and either
/// orientation but reject loops, duplicates and a wrong edge count.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edge_list()) os << e.u << ' ' << e.v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw InputError("edge list is empty");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0) {
      throw InputError("bad edge list header: '" + line + "'");
    }
  }
  if (n > static_cast<long long>(std::numeric_limits<Vertex>::max())) {
    throw InputError("vertex count too large");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::size_t line_no = 1;
  while (next_line(line)) {
    ++line_no;
    std::istringstream ls(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw InputError("bad edge on line " + std::to_string(line_no) + ": '" + line + "'");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("vertex out of range on line " + std::to_string(line_no));
    }
    if (u == v) throw InputError("self-loop on line " + std::to_string(line_no));
    edges.push_back(make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw InputError("header promises " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return Graph(static_cast<std::size_t>(n), edges);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_edge_list(in);
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  write_edge_list(out, g);
}

/// {"n", "cycles", "edges", "provenance"}; provenance lists the cycles' stages
/// first, then the edges'.
inline json to_json(const Decomposition& d) {
  json cycles = json::array();
  for (const auto& c : d.cycles) cycles.push_back(c.vertices);
  json edges = json::array();
  for (const auto& e : d.single_edges) edges.push_back({e.u, e.v});
  json prov = json::array();
  for (Stage s : d.cycle_stages) prov.push_back(std::string(stage_name(s)));
  for (Stage s : d.edge_stages) prov.push_back(std::string(stage_name(s)));
  return json{{"n", d.n}, {"cycles", cycles}, {"edges", edges}, {"provenance", prov}};
}

inline Decomposition decomposition_from_json(const json& j) {
  try {
    Decomposition d;
    d.n = j.at("n").get<std::size_t>();
    for (const auto& c : j.at("cycles")) d.cycles.push_back(Cycle{c.get<std::vector<Vertex>>()});
    for (const auto& e : j.at("edges")) {
      const auto pair = e.get<std::vector<Vertex>>();
      if (pair.size() != 2) throw InputError("edge entries must have two vertices");
      d.single_edges.push_back(Edge{std::min(pair[0], pair[1]), std::max(pair[0], pair[1])});
    }
    const auto pieces = d.cycles.size() + d.single_edges.size();
    if (j.contains("provenance")) {
      const auto& prov = j.at("provenance");
      if (prov.size() != pieces) throw InputError("provenance length does not match piece count");
      for (std::size_t i = 0; i < pieces; ++i) {
        const auto s = stage_from_name(prov[i].get<std::string>());
        if (!s) throw InputError("unknown provenance '" + prov[i].get<std::string>() + "'");
        (i < d.cycles.size() ? d.cycle_stages : d.edge_stages).push_back(*s);
      }
    } else {
      d.cycle_stages.assign(d.cycles.size(), Stage::peel);
      d.edge_stages.assign(d.single_edges.size(), Stage::leftover_edge);
    }
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed decomposition JSON: ") + e.what());
  }
}

inline std::string dump_decomposition(const Decomposition& d) { return to_json(d).dump() + "\n"; }

inline json to_json(const RunReport& r) {
  json counts = json::object();
  for (std::size_t i = 0; i < kAllStages.size(); ++i) {
    counts[std::string(stage_name(kAllStages[i]))] = r.stage_counts[i];
  }
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name},
                      {"edges_before", s.edges_before},
                      {"edges_after", s.edges_after},
                      {"pieces", s.pieces}});
  }
  const double ratio = r.lower_bound == 0 ? (r.pieces == 0 ? 1.0 : 0.0)
                                          : static_cast<double>(r.pieces) / static_cast<double>(r.lower_bound);
  return json{{"regime", std::string(regime_name(r.regime))},
              {"n", r.n},
              {"m", r.m},
              {"odd", r.odd},
              {"density", r.density},
              {"lower_bound", r.lower_bound},
              {"pieces", r.pieces},
              {"ratio", ratio},
              {"cycles", r.cycles},
              {"single_edges", r.single_edges},
              {"stage_counts", counts},
              {"e0_size", r.e0_size},
              {"e0_residue", r.e0_residue},
              {"p1", r.probabilities.p1},
              {"p2", r.probabilities.p2},
              {"p3", r.probabilities.p3},
              {"hamilton_target", r.hamilton_target},
              {"hamilton_achieved", r.hamilton_achieved},
              {"hamilton_stop", r.hamilton_stop},
              {"matching_edges_offered", r.matching_edges_offered},
              {"connector_failures", r.connector_failures},
              {"closure_groups", r.closure_groups},
              {"connector_path_cap", r.connector_path_cap},
              {"capacity_fraction", r.capacity_fraction},
              {"ratio_bound", r.ratio_bound},
              {"max_part_ratio", r.max_part_ratio},
              {"safety_repairs", r.safety_repairs},
              {"stages", stages},
              {"wall_ms", r.timing.wall_ms}};
}

inline json to_json(const VerifyReport& r) {
  auto edges = [](const std::vector<Edge>& es) {
    json out = json::array();
    for (const auto& e : es) out.push_back({e.u, e.v});
    return out;
  };
  json bad = json::array();
  for (const auto& b : r.bad_cycles) bad.push_back({{"index", b.index}, {"reason", b.reason}});
  return json{{"valid", r.valid},
              {"piece_count", r.piece_count},
              {"covered_edges", r.covered_edges},
              {"duplicate_edges", edges(r.duplicate_edges)},
              {"missing_edges", edges(r.missing_edges)},
              {"foreign_edges", edges(r.foreign_edges)},
              {"bad_cycles", bad}};
}

/// Applies JSON overrides to a config. Unknown keys are rejected so typos
/// surface instead of silently running the defaults.
inline void apply_overrides(PipelineConfig& cfg, const json& j) {
  if (!j.is_object()) throw InputError("config overrides must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") cfg.seed = value.get<Seed>();
      else if (key == "stop_avg_deg") cfg.stop_avg_deg = value.get<double>();
      else if (key == "tail_avg_deg") cfg.tail_avg_deg = value.get<double>();
      else if (key == "rotations_per_vertex") cfg.search.rotations_per_vertex = value.get<double>();
      else if (key == "min_accept") cfg.search.min_accept = value.get<double>();
      else if (key == "patience") cfg.search.patience = value.get<std::size_t>();
      else if (key == "hamilton_rotations_per_vertex") cfg.hamilton.rotations_per_vertex = value.get<double>();
      else if (key == "hamilton_restarts") cfg.hamilton.restarts = value.get<std::size_t>();
      else if (key == "hamilton_max_attempts") cfg.hamilton.max_attempts = value.get<std::size_t>();
      else if (key == "connector_max_path_len") cfg.connector_max_path_len = value.get<std::size_t>();
      else if (key == "connector_retries") cfg.connector_retries = value.get<std::size_t>();
      else if (key == "capacity_fraction") cfg.capacity_fraction = value.get<double>();
      else if (key == "ratio_bound") cfg.ratio_bound = value.get<double>();
      else if (key == "v0_degree_factor") cfg.v0_degree_factor = value.get<double>();
      else if (key == "sparsify_parts") cfg.sparsify_parts = value.get<std::size_t>();
      else if (key == "repair_rounds") cfg.repair_rounds = value.get<std::size_t>();
      else if (key == "augment") cfg.augment = value.get<bool>();
      else if (key == "p1") cfg.p1 = value.get<double>();
      else if (key == "p2") cfg.p2 = value.get<double>();
      else if (key == "p3") cfg.p3 = value.get<double>();
      else if (key == "regime") {
        const auto r = regime_from_name(value.get<std::string>());
        if (!r) throw InputError("unknown regime '" + value.get<std::string>() + "'");
        cfg.regime = r;
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  for (auto p : {cfg.p1, cfg.p2, cfg.p3}) {
    if (p && !(*p >= 0.0 && *p <= 1.0)) throw InputError("split probability override outside [0, 1]");
  }
  if (cfg.stop_avg_deg < 0.0 || cfg.tail_avg_deg < 0.0) throw InputError("degree thresholds must be >= 0");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace cycleshred
