#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace euler_entropy {

using VertexId = std::int32_t;
using DartId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  VertexId u;
  VertexId v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected loopless multigraph stored as darts (half-edges).
//
// Edge e owns darts 2e (at its first endpoint) and 2e+1 (at its second), so
// the edge-partner of dart x is x ^ 1. Vertex ids are dense in [0, n), dart
// ids dense in [0, 2m). Immutable once built.
class MultiGraph {
 public:
  MultiGraph() = default;

  // Builds from an edge list; dart ids follow input order.
  static MultiGraph from_edges(int n, std::span<const Edge> edges) {
    if (n < 0) throw InputError("negative vertex count");
    MultiGraph g;
    g.n_ = n;
    g.owner_.reserve(2 * edges.size());
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto [u, v] = edges[i];
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw InputError("edge " + std::to_string(i) + " (" + std::to_string(u) + "," +
                         std::to_string(v) + "): vertex index out of range");
      }
      if (u == v) {
        throw InputError("edge " + std::to_string(i) + ": loop at vertex " + std::to_string(u));
      }
      g.owner_.push_back(u);
      g.owner_.push_back(v);
      ++degree[u];
      ++degree[v];
    }
    g.offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) g.offset_[v + 1] = g.offset_[v] + degree[v];
    g.incident_.resize(g.owner_.size());
    std::vector<int> fill(g.offset_.begin(), g.offset_.end() - 1);
    for (DartId x = 0; x < static_cast<DartId>(g.owner_.size()); ++x) {
      g.incident_[fill[g.owner_[x]]++] = x;
    }
    return g;
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(owner_.size() / 2); }
  int dart_count() const { return static_cast<int>(owner_.size()); }

  VertexId owner(DartId x) const { return owner_[x]; }
  static constexpr DartId partner(DartId x) { return x ^ 1; }
  static constexpr EdgeId edge_of(DartId x) { return x >> 1; }
  // The neighbour reached by traversing dart x.
  VertexId head(DartId x) const { return owner_[x ^ 1]; }

  Edge edge(EdgeId e) const { return {owner_[2 * e], owner_[2 * e + 1]}; }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (EdgeId e = 0; e < edge_count(); ++e) out.push_back(edge(e));
    return out;
  }

  // Darts owned by v, in increasing dart id.
  std::span<const DartId> darts_at(VertexId v) const {
    return {incident_.data() + offset_[v], incident_.data() + offset_[v + 1]};
  }

  int degree(VertexId v) const { return offset_[v + 1] - offset_[v]; }

  int max_degree() const {
    int d = 0;
    for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  // Common degree, or nullopt if irregular (or empty).
  std::optional<int> regular_degree() const {
    if (n_ == 0) return std::nullopt;
    const int d = degree(0);
    for (VertexId v = 1; v < n_; ++v) {
      if (degree(v) != d) return std::nullopt;
    }
    return d;
  }

  bool is_simple() const {
    auto list = sorted_edge_list();
    return std::adjacent_find(list.begin(), list.end()) == list.end();
  }

  // Edges as (min, max) pairs, sorted; a labelling-independent fingerprint
  // up to vertex ids.
  std::vector<std::pair<VertexId, VertexId>> sorted_edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> list;
    list.reserve(edge_count());
    for (EdgeId e = 0; e < edge_count(); ++e) {
      auto [u, v] = edge(e);
      list.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(list.begin(), list.end());
    return list;
  }

 private:
  int n_ = 0;
  std::vector<VertexId> owner_;
  std::vector<int> offset_{0};
  std::vector<DartId> incident_;
};

// Edge-list text: header "n m", then m lines "u v". '#' starts a comment.
inline MultiGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<std::pair<long, long>> header;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long a = 0, b = 0;
    std::string extra;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("line " + std::to_string(line_no) + ": malformed line");
    }
    if (!(fields >> b) || (fields >> extra)) {
      throw InputError("line " + std::to_string(line_no) + ": expected two integers");
    }
    if (!header) {
      if (a < 0 || b < 0) throw InputError("line " + std::to_string(line_no) + ": negative header");
      header = {a, b};
      continue;
    }
    if (a < 0 || b < 0 || a >= header->first || b >= header->first) {
      throw InputError("line " + std::to_string(line_no) + ": vertex index out of range");
    }
    if (a == b) throw InputError("line " + std::to_string(line_no) + ": loop edge");
    edges.push_back({static_cast<VertexId>(a), static_cast<VertexId>(b)});
  }
  if (!header) throw InputError("missing header line \"n m\"");
  if (static_cast<long>(edges.size()) != header->second) {
    throw InputError("header declares " + std::to_string(header->second) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return MultiGraph::from_edges(static_cast<int>(header->first), edges);
}

inline std::string format_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

// Shortest cycle length; parallel edges give 2, forests give nullopt.
// BFS from every vertex, tracking the tree edge used to reach each vertex.
inline std::optional<int> girth(const MultiGraph& g) {
  const int n = g.vertex_count();
  int best = -1;
  std::vector<int> dist(n);
  std::vector<EdgeId> via(n);
  std::deque<VertexId> queue;
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    via[s] = -1;
    queue.assign(1, s);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      if (best > 0 && 2 * dist[x] >= best) break;
      for (DartId dart : g.darts_at(x)) {
        const EdgeId e = MultiGraph::edge_of(dart);
        if (e == via[x]) continue;
        const VertexId y = g.head(dart);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          via[y] = e;
          queue.push_back(y);
        } else {
          const int len = dist[x] + dist[y] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

// Throws unless every degree is even (and, if asked, all degrees are equal).
inline void validate_eulerian_input(const MultiGraph& g, bool require_regular) {
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) % 2 != 0) {
      throw InputError("vertex " + std::to_string(v) + " has odd degree " +
                       std::to_string(g.degree(v)));
    }
  }
  if (require_regular && g.vertex_count() > 0 && !g.regular_degree()) {
    throw InputError("graph is not regular");
  }
}

// Dense row-major matrix; just enough for adjacency powers and Jacobi.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

inline DenseMatrix<std::int64_t> adjacency_matrix(const MultiGraph& g) {
  const int n = g.vertex_count();
  DenseMatrix<std::int64_t> a(n, n, 0);
  for (const auto& [u, v] : g.edges()) {
    ++a(u, v);
    ++a(v, u);
  }
  return a;
}

// Vertex (u, v) of G x H gets id u * n_H + v. Edges of G come first (one
// copy per vertex of H), then edges of H.
inline MultiGraph cartesian_product(const MultiGraph& g, const MultiGraph& h) {
  const int ng = g.vertex_count();
  const int nh = h.vertex_count();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(ng) * h.edge_count() +
                static_cast<std::size_t>(nh) * g.edge_count());
  for (const auto& [u, w] : g.edges()) {
    for (VertexId v = 0; v < nh; ++v) edges.push_back({u * nh + v, w * nh + v});
  }
  for (const auto& [v, w] : h.edges()) {
    for (VertexId u = 0; u < ng; ++u) edges.push_back({u * nh + v, u * nh + w});
  }
  return MultiGraph::from_edges(ng * nh, edges);
}

inline MultiGraph disjoint_union(const MultiGraph& g, const MultiGraph& h) {
  auto edges = g.edges();
  for (auto [u, v] : h.edges()) {
    edges.push_back({u + g.vertex_count(), v + g.vertex_count()});
  }
  return MultiGraph::from_edges(g.vertex_count() + h.vertex_count(), edges);
}

// Vertex v becomes perm[v]; edge order is preserved.
inline MultiGraph relabel(const MultiGraph& g, std::span<const VertexId> perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count()) {
    throw InputError("relabel: permutation size mismatch");
  }
  auto edges = g.edges();
  for (auto& e : edges) e = {perm[e.u], perm[e.v]};
  return MultiGraph::from_edges(g.vertex_count(), edges);
}

}  // namespace euler_entropy
