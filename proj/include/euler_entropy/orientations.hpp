#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

namespace euler_entropy {

struct EOCount {
  BigInt eo;
  double rho = 0;  // log(eo) / n
  int n = 0;
  int m = 0;
};

struct OrientationOptions {
  int edge_cap = 34;
  unsigned threads = 1;
};

namespace detail {

// Backtracking over edge directions. Each vertex keeps its signed imbalance
// (out minus in) and the number of incident edges still undecided; a branch
// dies as soon as some |imbalance| exceeds what the undecided edges can fix.
class OrientationCounter {
 public:
  OrientationCounter(const MultiGraph& g, std::vector<Edge> order)
      : order_(std::move(order)), remaining_(g.vertex_count()), imbalance_(g.vertex_count(), 0) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) remaining_[v] = g.degree(v);
  }

  // Fixes the first `count` decisions from the bits of `mask`; false if
  // that prefix is already infeasible.
  bool apply_prefix(std::uint64_t mask, int count) {
    for (int i = 0; i < count; ++i) {
      if (!decide(order_[i], ((mask >> i) & 1) != 0)) return false;
    }
    depth_ = static_cast<std::size_t>(count);
    return true;
  }

  std::uint64_t count() {
    leaves_ = 0;
    descend(depth_);
    return leaves_;
  }

 private:
  bool decide(const Edge& e, bool forward) {
    const int delta = forward ? 1 : -1;
    imbalance_[e.u] += delta;
    imbalance_[e.v] -= delta;
    --remaining_[e.u];
    --remaining_[e.v];
    return std::abs(imbalance_[e.u]) <= remaining_[e.u] &&
           std::abs(imbalance_[e.v]) <= remaining_[e.v];
  }

  void undo(const Edge& e, bool forward) {
    const int delta = forward ? 1 : -1;
    imbalance_[e.u] -= delta;
    imbalance_[e.v] += delta;
    ++remaining_[e.u];
    ++remaining_[e.v];
  }

  void descend(std::size_t i) {
    if (i == order_.size()) {
      ++leaves_;
      return;
    }
    for (bool forward : {true, false}) {
      if (decide(order_[i], forward)) descend(i + 1);
      undo(order_[i], forward);
    }
  }

  std::vector<Edge> order_;
  std::vector<int> remaining_;
  std::vector<int> imbalance_;
  std::size_t depth_ = 0;
  std::uint64_t leaves_ = 0;
};

// Edges by descending endpoint degree sum, ties in input order.
inline std::vector<Edge> orientation_order(const MultiGraph& g) {
  auto edges = g.edges();
  std::stable_sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return g.degree(a.u) + g.degree(a.v) > g.degree(b.u) + g.degree(b.v);
  });
  return edges;
}

}  // namespace detail

// Exact number of Eulerian orientations. With threads > 1 the first few
// edge decisions are split into independent subtrees whose counts are added,
// so the result does not depend on the thread count.
inline EOCount count_eulerian_orientations(const MultiGraph& g, const OrientationOptions& opts = {}) {
  validate_eulerian_input(g, false);
  if (g.edge_count() > opts.edge_cap) {
    throw BudgetExceeded("orientation count: " + std::to_string(g.edge_count()) +
                         " edges exceeds the cap of " + std::to_string(opts.edge_cap));
  }
  const auto order = detail::orientation_order(g);
  const unsigned threads = std::max(1u, opts.threads);
  const int split = threads == 1 ? 0
                                 : std::min<int>(g.edge_count(),
                                                 std::bit_width(threads * 8u));
  const std::size_t tasks = std::size_t{1} << split;
  std::vector<std::uint64_t> partial(tasks, 0);
  parallel_for(tasks, threads, [&](std::size_t task) {
    detail::OrientationCounter counter(g, order);
    if (counter.apply_prefix(task, split)) {
      partial[task] = counter.count();
    }
  });
  EOCount r;
  r.n = g.vertex_count();
  r.m = g.edge_count();
  r.eo = 0;
  for (auto c : partial) r.eo += static_cast<unsigned long>(c);
  r.rho = r.n > 0 && sgn(r.eo) > 0 ? log_of(r.eo) / r.n : 0.0;
  return r;
}

// Pauling's estimate log C(d, d/2) - (d/2) log 2.
inline double pauling_estimate(int d) {
  if (d < 2 || d % 2 != 0) throw InputError("pauling_estimate: d must be even and >= 2");
  return log_of(binomial(d, d / 2)) - (d / 2) * std::log(2.0);
}

struct LiebWuReport {
  int n = 0;
  int m = 0;
  int d = 0;
  BigInt eo;
  double rho = 0;
  double rho_hat = 0;
  double gap = 0;
  bool pass = false;  // gap >= -1e-12
};

// Exact residual entropy against Pauling's estimate; regular graphs only.
inline LiebWuReport lieb_wu_check(const MultiGraph& g, const OrientationOptions& opts = {}) {
  validate_eulerian_input(g, true);
  const auto count = count_eulerian_orientations(g, opts);
  LiebWuReport r;
  r.n = count.n;
  r.m = count.m;
  r.d = *g.regular_degree();
  r.eo = count.eo;
  r.rho = count.rho;
  r.rho_hat = pauling_estimate(r.d);
  r.gap = r.rho - r.rho_hat;
  r.pass = r.gap >= -1e-12;
  return r;
}

}  // namespace euler_entropy
