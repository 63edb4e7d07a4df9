// cycleshred command-line tool: generate, decompose, verify, experiment, probe.
//
// Exit codes: 0 ok, 1 semantic failure (invalid decomposition, failed
// trial), 2 usage or IO error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "cycleshred/detail/parallel.hpp"
#include "cycleshred/io.hpp"
#include "cycleshred/pipeline.hpp"
#include "cycleshred/probes.hpp"
#include "cycleshred/random.hpp"
#include "cycleshred/verify.hpp"

namespace cs = cycleshred;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::vector<std::size_t> n;
  std::vector<double> p;
  cs::Seed seed = cs::default_seed();
  std::string in;
  std::string out;
  std::string config;
  std::string decomposition;
  std::string report;
  std::string summary;
  std::size_t jobs = 1;
  std::size_t trials = 1;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw cs::InputError("cannot write " + path);
  f << text;
  if (!f) throw cs::InputError("write failed for " + path);
}

cs::PipelineConfig load_config(const Options& o) {
  cs::PipelineConfig cfg;
  cfg.seed = o.seed;
  if (!o.config.empty()) {
    cs::apply_overrides(cfg, cs::read_json_file(o.config));
    // An explicit --seed always wins over the file.
    cfg.seed = o.seed;
  }
  return cfg;
}

std::size_t single_n(const Options& o) {
  if (o.n.size() != 1) throw cs::InputError("exactly one --n is required");
  return o.n[0];
}

double single_p(const Options& o) {
  if (o.p.size() != 1) throw cs::InputError("exactly one --p is required");
  return o.p[0];
}

int cmd_generate(const Options& o) {
  const auto g = cs::gnp(single_n(o), single_p(o), o.seed);
  if (o.out.empty()) throw cs::InputError("--out is required");
  cs::write_edge_list_file(o.out, g);
  std::cout << "m=" << g.edge_count() << " odd=" << cs::odd_vertices(g).size() << '\n';
  return kOk;
}

int cmd_decompose(const Options& o) {
  if (o.in.empty()) throw cs::InputError("--in is required");
  const auto g = cs::read_edge_list_file(o.in);
  const auto cfg = load_config(o);
  std::optional<double> hint;
  if (!o.p.empty()) hint = single_p(o);
  cs::DecomposeResult r;
  try {
    r = cs::decompose(g, hint, cfg);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const std::invalid_argument*>(&e)) throw;
    std::cerr << "decompose: " << e.what() << '\n';
    return kFailure;
  }
  write_text(o.out, cs::dump_decomposition(r.decomposition));
  const auto report = cs::to_json(r.report).dump(2) + "\n";
  if (!o.report.empty()) {
    write_text(o.report, report);
  } else if (!o.out.empty() && o.out != "-") {
    std::cout << report;
  }
  const auto check = cs::verify_decomposition(g, r.decomposition);
  return check.valid ? kOk : kFailure;
}

int cmd_verify(const Options& o) {
  if (o.in.empty() || o.decomposition.empty()) throw cs::InputError("--in and --decomposition are required");
  const auto g = cs::read_edge_list_file(o.in);
  const auto d = cs::decomposition_from_json(cs::read_json_file(o.decomposition));
  const auto rep = cs::verify_decomposition(g, d);
  std::cout << cs::to_json(rep).dump(2) << '\n';
  return rep.valid ? kOk : kFailure;
}

struct TrialRow {
  std::size_t n = 0;
  double p = 0;
  std::size_t trial = 0;
  cs::Seed seed = 0;
  bool ok = false;
  std::string error;
  cs::RunReport report;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string experiment_header() {
  std::string h = "n,p,trial,seed,status,odd,m,lower_bound,pieces,ratio,cycles,single_edges";
  for (cs::Stage s : cs::kAllStages) {
    std::string name(cs::stage_name(s));
    for (auto& c : name) {
      if (c == '-') c = '_';
    }
    h += "," + name;
  }
  return h + ",wall_ms,error";
}

double ratio_of(const cs::RunReport& r) {
  if (r.lower_bound == 0) return r.pieces == 0 ? 1.0 : 0.0;
  return static_cast<double>(r.pieces) / static_cast<double>(r.lower_bound);
}

void write_row(std::ostream& os, const TrialRow& row) {
  os << row.n << ',' << row.p << ',' << row.trial << ',' << row.seed << ','
     << (row.ok ? "ok" : "failed");
  if (row.ok) {
    const auto& r = row.report;
    os << ',' << r.odd << ',' << r.m << ',' << r.lower_bound << ',' << r.pieces << ',' << ratio_of(r)
       << ',' << r.cycles << ',' << r.single_edges;
    for (auto c : r.stage_counts) os << ',' << c;
    os << ',' << r.timing.wall_ms << ',';
  } else {
    os << ",,,,,,,";
    for (std::size_t i = 0; i < cs::kAllStages.size(); ++i) os << ',';
    os << ',' << csv_escape(row.error);
  }
  os << '\n';
}

int cmd_experiment(const Options& o) {
  if (o.n.empty() || o.p.empty()) throw cs::InputError("--n and --p are required");
  if (o.out.empty()) throw cs::InputError("--out is required");
  for (auto n : o.n) {
    if (n == 0) throw cs::InputError("n must be positive");
  }
  for (auto p : o.p) {
    if (!(p >= 0.0 && p <= 1.0)) throw cs::InputError("p must lie in [0, 1]");
  }
  const auto cfg = load_config(o);
  std::vector<TrialRow> rows;
  for (auto n : o.n) {
    for (auto p : o.p) {
      for (std::size_t t = 0; t < o.trials; ++t) {
        TrialRow row;
        row.n = n;
        row.p = p;
        row.trial = t;
        row.seed = cs::derive_seed(o.seed, rows.size());
        rows.push_back(row);
      }
    }
  }

  std::ofstream csv(o.out, std::ios::binary);
  if (!csv) throw cs::InputError("cannot write " + o.out);
  csv.precision(10);
  csv << experiment_header() << '\n';

  // Rows are computed in parallel and flushed in order through one sink.
  std::mutex sink;
  std::vector<char> done(rows.size(), 0);
  std::size_t flushed = 0;
  cs::detail::parallel_for(rows.size(), o.jobs, [&](std::size_t i) {
    auto& row = rows[i];
    try {
      const auto g = cs::gnp(row.n, row.p, row.seed);
      auto run_cfg = cfg;
      run_cfg.seed = row.seed;
      row.report = cs::decompose(g, row.p, run_cfg).report;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    std::lock_guard lock(sink);
    done[i] = 1;
    while (flushed < rows.size() && done[flushed]) write_row(csv, rows[flushed++]);
  });
  csv.flush();

  cs::json summary = cs::json::array();
  bool all_ok = true;
  for (auto n : o.n) {
    for (auto p : o.p) {
      double sum = 0;
      std::size_t ok = 0, failed = 0;
      for (const auto& row : rows) {
        if (row.n != n || row.p != p) continue;
        if (row.ok) {
          sum += ratio_of(row.report);
          ++ok;
        } else {
          ++failed;
        }
      }
      all_ok = all_ok && failed == 0;
      cs::json entry{{"n", n}, {"p", p}, {"trials", ok + failed}, {"failed", failed}};
      entry["mean_ratio"] = ok ? cs::json(sum / static_cast<double>(ok)) : cs::json(nullptr);
      summary.push_back(entry);
    }
  }
  const auto summary_path = o.summary.empty() ? o.out + ".summary.json" : o.summary;
  write_text(summary_path, summary.dump(2) + "\n");
  return all_ok ? kOk : kFailure;
}

int cmd_probe(const Options& o) {
  if (o.trials == 0) throw cs::InputError("--trials must be positive");
  cs::ProbeConfig pc;
  pc.jobs = o.jobs;
  const auto st = cs::probe_properties(single_n(o), single_p(o), o.trials, o.seed, pc);
  std::ostringstream csv;
  cs::write_probe_csv(csv, st);
  write_text(o.out, csv.str());
  auto field = [&](auto get) {
    const auto s = st.summary(get);
    return cs::json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"median", s.median}, {"max", s.max}};
  };
  const cs::json summary{
      {"n", st.n},
      {"p", st.p},
      {"trials", st.samples.size()},
      {"odd_fraction", field([](const cs::ProbeSample& s) { return s.odd_fraction; })},
      {"giant_coverage", field([](const cs::ProbeSample& s) { return s.giant_coverage; })},
      {"small_set_density", field([](const cs::ProbeSample& s) { return s.small_set_density; })},
      {"cross_edge_ratio", field([](const cs::ProbeSample& s) { return s.cross_edge_ratio; })},
      {"diameter_estimate", field([](const cs::ProbeSample& s) { return s.diameter_estimate; })}};
  (o.out.empty() || o.out == "-" ? std::cerr : std::cout) << summary.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose graphs into cycles and single edges"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed (default: $CYCLESHRED_SEED or 0)");
  };
  auto* gen = app.add_subcommand("generate", "Sample G(n, p) to an edge-list file");
  gen->add_option("--n", o.n, "Vertex count")->required()->expected(1);
  gen->add_option("--p", o.p, "Edge probability")->required()->expected(1);
  gen->add_option("--out", o.out, "Output edge list")->required();
  add_seed(gen);

  auto* dec = app.add_subcommand("decompose", "Decompose an edge list");
  dec->add_option("--in", o.in, "Input edge list")->required();
  dec->add_option("--out", o.out, "Decomposition JSON (default: stdout)");
  dec->add_option("--report", o.report, "Run report JSON (default: stdout when --out is a file)");
  dec->add_option("--p", o.p, "Density hint for regime choice")->expected(1);
  dec->add_option("--config", o.config, "JSON overrides of the pipeline config");
  add_seed(dec);

  auto* ver = app.add_subcommand("verify", "Check a decomposition against its graph");
  ver->add_option("--in", o.in, "Graph edge list")->required();
  ver->add_option("--decomposition", o.decomposition, "Decomposition JSON")->required();

  auto* exp = app.add_subcommand("experiment", "Decompose sampled graphs over an (n, p) grid");
  exp->add_option("--n", o.n, "Vertex counts")->required();
  exp->add_option("--p", o.p, "Edge probabilities")->required();
  exp->add_option("--trials", o.trials, "Trials per (n, p)");
  exp->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  exp->add_option("--out", o.out, "Per-trial CSV")->required();
  exp->add_option("--summary", o.summary, "Summary JSON (default: <out>.summary.json)");
  exp->add_option("--config", o.config, "JSON overrides of the pipeline config");
  add_seed(exp);

  auto* probe = app.add_subcommand("probe", "Measure structural properties of G(n, p)");
  probe->add_option("--n", o.n, "Vertex count")->required()->expected(1);
  probe->add_option("--p", o.p, "Edge probability")->required()->expected(1);
  probe->add_option("--trials", o.trials, "Trials");
  probe->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
  probe->add_option("--out", o.out, "CSV output (default: stdout)");
  add_seed(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*dec) return cmd_decompose(o);
    if (*ver) return cmd_verify(o);
    if (*exp) return cmd_experiment(o);
    if (*probe) return cmd_probe(o);
  } catch (const cs::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cs::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
