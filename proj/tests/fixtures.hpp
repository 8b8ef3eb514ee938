#pragma once

#include <string>
#include <utility>
#include <vector>

#include "euler_entropy/euler_entropy.hpp"

namespace fixtures {

using euler_entropy::MultiGraph;

inline MultiGraph octahedron() { return euler_entropy::generate("circulant:6:1,2"); }

// The exhaustive fixtures: C5, C6, K5, octahedron, C3 x C3.
inline std::vector<std::pair<std::string, MultiGraph>> exhaustive() {
  return {
      {"C5", euler_entropy::make_cycle(5)},
      {"C6", euler_entropy::make_cycle(6)},
      {"K5", euler_entropy::make_complete(5)},
      {"octahedron", octahedron()},
      {"C3xC3", euler_entropy::generate("torus:3x3")},
  };
}

// Random graph on n vertices with each of the C(n,2) edges present with
// probability 1/2, derived from the seed.
inline MultiGraph random_simple_graph(int n, std::uint64_t seed) {
  euler_entropy::StreamRng rng(seed, static_cast<std::uint64_t>(n));
  std::vector<euler_entropy::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng() & 1) edges.push_back({u, v});
  return MultiGraph::from_edges(n, edges);
}

// The labelled simple graph on n vertices encoded by `mask` over the pairs
// (u, v), u < v, in lexicographic order.
inline MultiGraph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<euler_entropy::Edge> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1) edges.push_back({u, v});
  return MultiGraph::from_edges(n, edges);
}

}  // namespace fixtures
