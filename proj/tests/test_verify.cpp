#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "cycleshred/random.hpp"
#include "cycleshred/verify.hpp"
#include "support.hpp"

using namespace cycleshred;
namespace tg = testing_graphs;

TEST(Verify, TriangleAsOneCycle) {
  Decomposition d;
  d.add_cycle(Cycle{{0, 1, 2}}, Stage::peel);
  const auto r = verify_decomposition(tg::cycle(3), d);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.piece_count, 1u);
  EXPECT_EQ(r.covered_edges, 3u);
}

TEST(Verify, TriangleAsThreeEdges) {
  Decomposition d;
  d.add_edge({0, 1}, Stage::leftover_edge);
  d.add_edge({1, 2}, Stage::leftover_edge);
  d.add_edge({0, 2}, Stage::leftover_edge);
  const auto r = verify_decomposition(tg::cycle(3), d);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.piece_count, 3u);
}

TEST(Verify, DuplicateEdgeReported) {
  Decomposition d;
  d.add_cycle(Cycle{{0, 1, 2}}, Stage::peel);
  d.add_edge({0, 1}, Stage::leftover_edge);
  const auto r = verify_decomposition(tg::cycle(3), d);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.duplicate_edges, (std::vector<Edge>{{0, 1}}));
}

TEST(Verify, MissingForeignAndBadCycles) {
  Decomposition missing;
  missing.add_edge({0, 1}, Stage::leftover_edge);
  const auto r1 = verify_decomposition(tg::cycle(3), missing);
  EXPECT_FALSE(r1.valid);
  EXPECT_EQ(r1.missing_edges, (std::vector<Edge>{{0, 2}, {1, 2}}));

  Decomposition foreign;
  foreign.add_edge({0, 1}, Stage::leftover_edge);
  foreign.add_edge({1, 2}, Stage::leftover_edge);
  foreign.add_edge({0, 2}, Stage::leftover_edge);
  foreign.add_edge({2, 3}, Stage::leftover_edge);
  const auto r2 = verify_decomposition(Graph(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}}), foreign);
  EXPECT_FALSE(r2.valid);
  EXPECT_EQ(r2.foreign_edges, (std::vector<Edge>{{2, 3}}));

  Decomposition repeated;
  repeated.add_cycle(Cycle{{0, 1, 2, 1}}, Stage::peel);
  const auto r3 = verify_decomposition(tg::complete(4), repeated);
  EXPECT_FALSE(r3.valid);
  ASSERT_FALSE(r3.bad_cycles.empty());
  EXPECT_EQ(r3.bad_cycles[0].index, 0u);

  Decomposition short_cycle;
  short_cycle.add_cycle(Cycle{{0, 1}}, Stage::peel);
  EXPECT_FALSE(verify_decomposition(tg::path(2), short_cycle).valid);

  Decomposition out_of_range;
  out_of_range.add_edge({0, 7}, Stage::leftover_edge);
  EXPECT_FALSE(verify_decomposition(tg::path(2), out_of_range).valid);
}

TEST(Verify, EmptyGraphEmptyDecomposition) {
  EXPECT_TRUE(verify_decomposition(Graph(5), Decomposition{}).valid);
}

TEST(LowerBound, Examples) {
  for (std::size_t n = 3; n < 12; ++n) EXPECT_EQ(lower_bound(tg::cycle(n)), 1u);
  EXPECT_EQ(lower_bound(tg::complete(4)), 3u);
  EXPECT_EQ(lower_bound(Graph(6)), 0u);
  EXPECT_EQ(lower_bound(tg::path(2)), 1u);
}

TEST(LowerBound, NeverExceedsBruteForceOptimum) {
  EXPECT_EQ(brute_force::optimum(tg::complete(4)), 3u);
  EXPECT_EQ(brute_force::optimum(tg::complete(5)), 2u);
  EXPECT_EQ(brute_force::optimum(tg::path(4)), 3u);
  for (Seed s = 0; s < 200; ++s) {
    const auto g = gnp(7, 0.35, s);
    if (g.edge_count() > 14) continue;
    EXPECT_LE(lower_bound(g), brute_force::optimum(g));
  }
}
