#pragma once

// Small named graphs shared by the test binaries.

#include <initializer_list>
#include <utility>
#include <vector>

#include "cycleshred/graph.hpp"

namespace testing_graphs {

using cycleshred::Edge;
using cycleshred::Graph;
using cycleshred::Vertex;

inline Graph from_pairs(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
  Graph g(n);
  for (auto [a, b] : pairs) g.add_edge(a, b);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) g.add_edge(i, static_cast<Vertex>((i + 1) % n));
  return g;
}

inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

/// Centre 0, leaves 1..leaves.
inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph hypercube(std::size_t dim) {
  const std::size_t n = std::size_t{1} << dim;
  Graph g(n);
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t b = 0; b < dim; ++b) {
      const Vertex w = v ^ static_cast<Vertex>(std::size_t{1} << b);
      if (v < w) g.add_edge(v, w);
    }
  }
  return g;
}

/// Disjoint union with the vertices of `b` shifted past those of `a`.
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<Vertex>(a.vertex_count());
  Graph g(a.vertex_count() + b.vertex_count());
  for (const auto& e : a.edge_list()) g.add_edge(e.u, e.v);
  for (const auto& e : b.edge_list()) g.add_edge(e.u + shift, e.v + shift);
  return g;
}

/// Random labelled tree on n vertices (each vertex attaches to an earlier one).
template <class Rng>
Graph random_tree(std::size_t n, Rng& rng) {
  Graph g(n);
  for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(rng.below(v)), v);
  return g;
}

}  // namespace testing_graphs
