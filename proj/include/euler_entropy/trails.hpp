#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

namespace euler_entropy {

// k = floor(min(lmax/2, ln(d)^2)) and L = k(k-1)/2.
struct KLParams {
  int k = 1;
  int L = 0;
  int lmax = 0;
  int d = 0;
  // ln(d)^2 < 1 would give k = 0; k is clamped to 1.
  bool clamped = false;
  // k < 3: no closed trail fits on k vertices, so the short-trail
  // machinery is vacuous.
  bool degenerate() const { return k < 3; }
};

inline KLParams compute_k_L(int d, int lmax) {
  if (d < 2 || d % 2 != 0) throw InputError("compute_k_L: d must be even and >= 2");
  if (lmax < 3) throw InputError("compute_k_L: lmax must be >= 3");
  const double log_d = std::log(static_cast<double>(d));
  const double raw = std::floor(std::min(lmax / 2.0, log_d * log_d));
  KLParams p;
  p.lmax = lmax;
  p.d = d;
  p.k = static_cast<int>(raw);
  if (p.k < 1) {
    p.k = 1;
    p.clamped = true;
  }
  p.L = p.k * (p.k - 1) / 2;
  return p;
}

// c_ell for ell = 3..lmax (index ell), and c_{k,ell} when a vertex cap was
// requested. Entries below 3 are unused and zero; a table from the capped
// search leaves `counts` empty.
struct TrailCountTable {
  int lmax = 0;
  std::vector<BigInt> counts;
  std::optional<int> k;
  std::vector<BigInt> short_counts;
};

struct TrailSearchOptions {
  std::uint64_t budget = 100'000'000;  // DFS states across all roots
  unsigned threads = 1;
};

namespace detail {

// Depth-first enumeration of closed trails up to `max_len` edges, one root
// edge at a time. A trail is generated from its minimum edge e in the
// direction whose second edge is smaller than its last edge, so each
// rotation/reversal class is produced exactly once. Length-2 trails (a
// pair of parallel edges) are their own reversal and are taken from the
// even root dart only.
class TrailEnumerator {
 public:
  // Trails on at most `vertex_cap` distinct vertices are tallied separately;
  // with `prune` set, branches exceeding the cap are cut.
  TrailEnumerator(const MultiGraph& g, int max_len, std::optional<int> vertex_cap, bool prune,
                  std::atomic<std::uint64_t>& visited, std::uint64_t budget)
      : g_(g),
        max_len_(max_len),
        cap_(vertex_cap.value_or(g.vertex_count())),
        prune_(prune && vertex_cap.has_value()),
        visited_(visited),
        budget_(budget),
        used_(g.edge_count(), 0),
        visits_(g.vertex_count(), 0),
        all_(max_len + 1, 0),
        capped_(max_len + 1, 0) {}

  void run_root(EdgeId root) {
    for (DartId start : {2 * root, 2 * root + 1}) {
      start_ = start;
      origin_ = g_.owner(start);
      used_[root] = 1;
      enter(origin_);
      enter(g_.head(start));
      second_edge_ = -1;
      extend(g_.head(start), 1);
      leave(g_.head(start));
      leave(origin_);
      used_[root] = 0;
    }
    flush();
  }

  const std::vector<std::uint64_t>& all() const { return all_; }
  const std::vector<std::uint64_t>& capped() const { return capped_; }

 private:
  void enter(VertexId v) {
    if (visits_[v]++ == 0) ++distinct_;
  }
  void leave(VertexId v) {
    if (--visits_[v] == 0) --distinct_;
  }

  void tick() {
    if (++local_ticks_ == 4096) flush();
  }
  void flush() {
    if (local_ticks_ == 0) return;
    const auto total = visited_.fetch_add(local_ticks_) + local_ticks_;
    local_ticks_ = 0;
    if (total > budget_) {
      throw BudgetExceeded("closed-trail search exceeded its budget of " +
                           std::to_string(budget_) + " states");
    }
  }

  // `at` is the current vertex; `len` edges have been used; the origin and
  // every vertex since are counted in visits_ (the origin once extra when
  // revisited at the end, which does not change `distinct_`).
  void extend(VertexId at, int len) {
    tick();
    const EdgeId root = MultiGraph::edge_of(start_);
    for (DartId dart : g_.darts_at(at)) {
      const EdgeId e = MultiGraph::edge_of(dart);
      if (e <= root || used_[e]) continue;
      const VertexId next = g_.head(dart);
      const int step_len = len + 1;
      if (next == origin_) {
        // with two edges the closing edge is also the second edge
        const bool canonical = step_len == 2 ? start_ % 2 == 0 : second_edge_ < e;
        if (canonical) {
          ++all_[step_len];
          if (distinct_ <= cap_) ++capped_[step_len];
        }
      }
      if (step_len >= max_len_) continue;
      enter(next);
      if (prune_ && distinct_ > cap_) {
        leave(next);
        continue;
      }
      used_[e] = 1;
      const EdgeId saved = second_edge_;
      if (len == 1) second_edge_ = e;
      extend(next, step_len);
      second_edge_ = saved;
      used_[e] = 0;
      leave(next);
    }
  }

  const MultiGraph& g_;
  int max_len_;
  int cap_;
  bool prune_;
  std::atomic<std::uint64_t>& visited_;
  std::uint64_t budget_;
  std::vector<char> used_;
  std::vector<int> visits_;
  int distinct_ = 0;
  DartId start_ = 0;
  VertexId origin_ = 0;
  EdgeId second_edge_ = -1;
  std::uint64_t local_ticks_ = 0;
  std::vector<std::uint64_t> all_;
  std::vector<std::uint64_t> capped_;
};

inline void count_trails_by_root(const MultiGraph& g, int max_len, std::optional<int> cap,
                                 bool prune, const TrailSearchOptions& opts, std::vector<BigInt>& all,
                                 std::vector<BigInt>& capped) {
  std::atomic<std::uint64_t> visited{0};
  const std::size_t roots = static_cast<std::size_t>(g.edge_count());
  std::vector<std::vector<std::uint64_t>> per_all(roots), per_capped(roots);
  parallel_for(roots, opts.threads, [&](std::size_t r) {
    TrailEnumerator walker(g, max_len, cap, prune, visited, opts.budget);
    walker.run_root(static_cast<EdgeId>(r));
    per_all[r] = walker.all();
    per_capped[r] = walker.capped();
  });
  all.assign(max_len + 1, BigInt(0));
  capped.assign(max_len + 1, BigInt(0));
  for (std::size_t r = 0; r < roots; ++r) {
    for (int ell = 0; ell <= max_len; ++ell) {
      all[ell] += static_cast<unsigned long>(per_all[r][ell]);
      capped[ell] += static_cast<unsigned long>(per_capped[r][ell]);
    }
  }
}

}  // namespace detail

// Exact number of closed trails of each length 3..lmax, up to rotation and
// reversal of the dart sequence.
inline TrailCountTable count_closed_trails(const MultiGraph& g, int lmax,
                                           const TrailSearchOptions& opts = {}) {
  if (lmax < 3) throw InputError("count_closed_trails: lmax must be >= 3");
  TrailCountTable t;
  t.lmax = lmax;
  std::vector<BigInt> unused;
  detail::count_trails_by_root(g, lmax, std::nullopt, false, opts, t.counts, unused);
  for (int ell = 0; ell < 3; ++ell) t.counts[ell] = 0;
  return t;
}

// c_{k,ell}: closed trails of length 3..L on at most k distinct vertices.
inline TrailCountTable count_short_closed_trails(const MultiGraph& g, int L, int k,
                                                 const TrailSearchOptions& opts = {}) {
  if (k < 0) throw InputError("count_short_closed_trails: k must be non-negative");
  TrailCountTable t;
  t.lmax = std::max(L, 2);
  t.k = k;
  if (L < 3 || k < 2) {
    t.short_counts.assign(t.lmax + 1, BigInt(0));
    return t;
  }
  std::vector<BigInt> all, capped;
  detail::count_trails_by_root(g, L, k, true, opts, all, capped);
  t.short_counts = std::move(capped);
  for (int ell = 0; ell < 3; ++ell) t.short_counts[ell] = 0;
  return t;  // counts stays empty: the cap prunes the full search
}

// Right-hand side of the short-trail hypothesis: C e^{-(ell+1)} d^{ell-1} n.
inline double trail_hypothesis_bound(double C, int ell, int d, int n) {
  return C * std::exp(-(ell + 1.0) + (ell - 1.0) * std::log(static_cast<double>(d))) * n;
}

struct HypothesisRow {
  int ell = 0;
  std::optional<BigInt> c_ell;    // present for ell <= lmax
  std::optional<BigInt> c_k_ell;  // present for ell <= L when k >= 3
  double bound = 0;
  bool pass = true;
};

struct HypothesisReport {
  int n = 0;
  int d = 0;
  double C = 0;
  KLParams kl;
  std::vector<HypothesisRow> rows;
  bool all_pass = true;
};

// Checks c_ell <= C e^{-(ell+1)} d^{ell-1} n for 3 <= ell <= lmax and the
// extension c_{k,ell} <= same bound for ell <= L. Simple even-regular graphs only.
inline HypothesisReport check_theorem_hypothesis(const MultiGraph& g, double C, int lmax,
                                                 const TrailSearchOptions& opts = {}) {
  if (!(C > 0)) throw InputError("C must be positive");
  validate_eulerian_input(g, true);
  if (!g.is_simple()) throw InputError("hypothesis check requires a simple graph");
  HypothesisReport r;
  r.n = g.vertex_count();
  r.d = *g.regular_degree();
  r.C = C;
  r.kl = compute_k_L(r.d, lmax);
  const int top = r.kl.degenerate() ? lmax : std::max(lmax, r.kl.L);
  const auto table = count_closed_trails(g, lmax, opts);
  TrailCountTable short_table;
  if (!r.kl.degenerate()) short_table = count_short_closed_trails(g, r.kl.L, r.kl.k, opts);
  for (int ell = 3; ell <= top; ++ell) {
    HypothesisRow row;
    row.ell = ell;
    row.bound = trail_hypothesis_bound(C, ell, r.d, r.n);
    if (ell <= lmax) {
      row.c_ell = table.counts[ell];
      row.pass = row.c_ell->get_d() <= row.bound;
    }
    if (!r.kl.degenerate() && ell <= r.kl.L) {
      row.c_k_ell = short_table.short_counts[ell];
      row.pass = row.pass && row.c_k_ell->get_d() <= row.bound;
    }
    r.all_pass = r.all_pass && row.pass;
    r.rows.push_back(std::move(row));
  }
  return r;
}

// Smallest C for which every row of the report passes.
inline double minimal_hypothesis_constant(const HypothesisReport& r) {
  double c = 0.0;
  for (const auto& row : r.rows) {
    const double unit = trail_hypothesis_bound(1.0, row.ell, r.d, r.n);
    if (row.c_ell) c = std::max(c, row.c_ell->get_d() / unit);
    if (row.c_k_ell) c = std::max(c, row.c_k_ell->get_d() / unit);
  }
  return c;
}

}  // namespace euler_entropy
