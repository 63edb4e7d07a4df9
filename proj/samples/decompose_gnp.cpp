// Minimal library use: sample G(n, p), decompose it, check the result.
//
//   sample_decompose [n] [p] [seed]

#include <cstdlib>
#include <iostream>

#include "cycleshred/pipeline.hpp"
#include "cycleshred/random.hpp"
#include "cycleshred/verify.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const double p = argc > 2 ? std::strtod(argv[2], nullptr) : 0.02;
  const cycleshred::Seed seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : cycleshred::default_seed();

  const auto g = cycleshred::gnp(n, p, seed);
  cycleshred::PipelineConfig cfg;
  cfg.seed = seed;
  const auto result = cycleshred::decompose(g, p, cfg);
  const auto& r = result.report;

  std::cout << "G(" << n << ", " << p << "): m=" << r.m << " odd=" << r.odd << '\n'
            << "regime " << cycleshred::regime_name(r.regime) << ", " << r.cycles << " cycles + "
            << r.single_edges << " edges = " << r.pieces << " pieces\n"
            << "lower bound " << r.lower_bound << ", ratio "
            << static_cast<double>(r.pieces) / static_cast<double>(std::max<std::size_t>(r.lower_bound, 1))
            << '\n';
  for (const auto& st : r.stages) {
    std::cout << "  " << st.name << ": " << st.edges_before << " -> " << st.edges_after << " edges, "
              << st.pieces << " pieces\n";
  }
  return cycleshred::verify_decomposition(g, result.decomposition).valid ? 0 : 1;
}
