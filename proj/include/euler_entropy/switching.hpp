#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <tuple>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "partitions.hpp"

namespace euler_entropy {

using DartPair = std::pair<DartId, DartId>;

// The rewiring at one vertex visited t times: trail pairs (e_i, e'_i) and
// extra partition pairs (e_{t+i}, e'_{t+i}), i = 1..t.
struct VertexSwitch {
  VertexId vertex = 0;
  std::vector<DartPair> trail_pairs;
  std::vector<DartPair> extra_pairs;
};

struct TSwitchingChoice {
  Trail trail;
  std::vector<VertexSwitch> vertices;  // one per visited vertex
};

namespace detail {

// Checks that `darts` is a closed trail of g: consecutive darts meet and no
// edge repeats.
inline void require_closed_trail(const MultiGraph& g, const Trail& t) {
  const auto len = t.darts.size();
  if (len == 0) throw InputError("trail is empty");
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t i = 0; i < len; ++i) {
    const DartId x = t.darts[i];
    if (x < 0 || x >= g.dart_count()) throw InputError("trail dart out of range");
    if (used[MultiGraph::edge_of(x)]++) throw InputError("trail repeats an edge");
    if (g.head(x) != g.owner(t.darts[(i + 1) % len])) throw InputError("trail is not closed");
  }
}

// The trail's pairs grouped by vertex in order of first visit. Visit i pairs
// the arriving dart darts[i-1]^1 with the leaving dart darts[i].
inline std::vector<VertexSwitch> trail_pairs_by_vertex(const MultiGraph& g, const Trail& t) {
  std::vector<VertexSwitch> out;
  std::map<VertexId, std::size_t> slot;
  const auto len = t.darts.size();
  for (std::size_t i = 0; i < len; ++i) {
    const DartId leave = t.darts[i];
    const DartId arrive = MultiGraph::partner(t.darts[(i + len - 1) % len]);
    const VertexId v = g.owner(leave);
    auto [it, fresh] = slot.emplace(v, out.size());
    if (fresh) out.push_back({v, {}, {}});
    out[it->second].trail_pairs.push_back({arrive, leave});
  }
  return out;
}

inline bool same_pair(const DartPair& a, DartId x, DartId y) {
  return (a.first == x && a.second == y) || (a.first == y && a.second == x);
}

inline void require_induced(const EulerianPartition& p, const Trail& t) {
  const auto len = t.darts.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (p.mate(MultiGraph::partner(t.darts[i])) != t.darts[(i + 1) % len]) {
      throw InputError("trail is not induced by the partition");
    }
  }
}

// Partition pairs at v outside the trail, as (x, mate x) with x < mate x.
inline std::vector<DartPair> other_pairs(const MultiGraph& g, const EulerianPartition& p,
                                         const VertexSwitch& vs) {
  std::vector<DartPair> out;
  for (DartId x : g.darts_at(vs.vertex)) {
    const DartId y = p.mate(x);
    if (x > y) continue;
    const bool on_trail = std::any_of(vs.trail_pairs.begin(), vs.trail_pairs.end(),
                                      [&](const DartPair& q) { return same_pair(q, x, y); });
    if (!on_trail) out.push_back({x, y});
  }
  return out;
}

}  // namespace detail

inline EulerianPartition apply_t_switching(const MultiGraph& g, const EulerianPartition& p,
                                           const TSwitchingChoice& choice) {
  if (!is_valid_partition(g, p)) throw InputError("not an Eulerian partition of the graph");
  detail::require_closed_trail(g, choice.trail);
  detail::require_induced(p, choice.trail);
  const auto expected = detail::trail_pairs_by_vertex(g, choice.trail);
  if (choice.vertices.size() != expected.size()) {
    throw InputError("switching must act at every vertex of the trail, and only there");
  }
  std::vector<DartId> mate(p.mates().begin(), p.mates().end());
  for (const auto& vs : choice.vertices) {
    const auto it = std::find_if(expected.begin(), expected.end(),
                                 [&](const VertexSwitch& e) { return e.vertex == vs.vertex; });
    if (it == expected.end()) throw InputError("switching acts at a vertex off the trail");
    const std::size_t t = it->trail_pairs.size();
    if (vs.trail_pairs.size() != t || vs.extra_pairs.size() != t) {
      throw InputError("vertex " + std::to_string(vs.vertex) + ": expected " + std::to_string(t) +
                       " trail pairs and " + std::to_string(t) + " extra pairs");
    }
    std::vector<DartPair> seen;
    for (const auto& q : vs.trail_pairs) {
      const bool ok = std::any_of(it->trail_pairs.begin(), it->trail_pairs.end(),
                                  [&](const DartPair& e) { return detail::same_pair(e, q.first, q.second); });
      if (!ok) throw InputError("vertex " + std::to_string(vs.vertex) + ": not a trail pair");
      seen.push_back(q);
    }
    for (const auto& q : vs.extra_pairs) {
      if (q.first < 0 || q.first >= g.dart_count() || g.owner(q.first) != vs.vertex ||
          p.mate(q.first) != q.second) {
        throw InputError("vertex " + std::to_string(vs.vertex) + ": extra pair is not a pair of the partition");
      }
      seen.push_back(q);
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      for (std::size_t j = i + 1; j < seen.size(); ++j)
        if (detail::same_pair(seen[i], seen[j].first, seen[j].second)) {
          throw InputError("vertex " + std::to_string(vs.vertex) + ": chosen pairs are not distinct");
        }
    for (std::size_t i = 0; i < t; ++i) {
      const auto [e, e_prime] = vs.trail_pairs[i];
      const auto [f, f_prime] = vs.extra_pairs[i];
      mate[e] = f;
      mate[f] = e;
      mate[e_prime] = f_prime;
      mate[f_prime] = e_prime;
    }
  }
  return EulerianPartition(std::move(mate));
}

// Recovers P from P' = switched(P) and T, or nothing if T's darts are paired
// with each other anywhere in P'.
inline std::optional<EulerianPartition> inverse_t_switching(const MultiGraph& g,
                                                            const EulerianPartition& p_prime,
                                                            const Trail& trail) {
  if (!is_valid_partition(g, p_prime)) throw InputError("not an Eulerian partition of the graph");
  detail::require_closed_trail(g, trail);
  std::vector<char> on_trail(g.dart_count(), 0);
  for (DartId x : trail.darts) on_trail[x] = on_trail[MultiGraph::partner(x)] = 1;
  for (DartId x = 0; x < g.dart_count(); ++x) {
    if (on_trail[x] && on_trail[p_prime.mate(x)]) return std::nullopt;
  }
  std::vector<DartId> mate(p_prime.mates().begin(), p_prime.mates().end());
  for (const auto& vs : detail::trail_pairs_by_vertex(g, trail)) {
    for (const auto& [e, e_prime] : vs.trail_pairs) {
      const DartId f = p_prime.mate(e);
      const DartId f_prime = p_prime.mate(e_prime);
      mate[e] = e_prime;
      mate[e_prime] = e;
      mate[f] = f_prime;
      mate[f_prime] = f;
    }
  }
  return EulerianPartition(std::move(mate));
}

// Number of distinct T-switchings on P: at a vertex of degree d visited t
// times, the j-th extra ordered pair has d - 2t - 2(j-1) choices.
inline BigInt count_t_switchings(const MultiGraph& g, const EulerianPartition& p, const Trail& trail) {
  detail::require_closed_trail(g, trail);
  detail::require_induced(p, trail);
  BigInt total = 1;
  for (const auto& vs : detail::trail_pairs_by_vertex(g, trail)) {
    const long t = static_cast<long>(vs.trail_pairs.size());
    const long d = g.degree(vs.vertex);
    for (long j = 1; j <= t; ++j) {
      const long ways = d - 2 * t - 2 * (j - 1);
      if (ways <= 0) return 0;
      total *= ways;
    }
  }
  return total;
}

// Calls fn(choice) for every T-switching on P. Trail pairs are taken in
// visit order with orientation (arriving, leaving); extra pairs range over
// all ordered sequences of distinct oriented non-trail pairs.
template <class Fn>
void for_each_t_switching(const MultiGraph& g, const EulerianPartition& p, const Trail& trail, Fn&& fn) {
  detail::require_closed_trail(g, trail);
  detail::require_induced(p, trail);
  TSwitchingChoice choice;
  choice.trail = trail;
  choice.vertices = detail::trail_pairs_by_vertex(g, trail);
  std::vector<std::vector<DartPair>> others;
  for (const auto& vs : choice.vertices) others.push_back(detail::other_pairs(g, p, vs));

  std::vector<std::vector<char>> taken(others.size());
  for (std::size_t v = 0; v < others.size(); ++v) taken[v].assign(others[v].size(), 0);

  auto step = [&](auto&& self, std::size_t v) -> void {
    if (v == choice.vertices.size()) {
      fn(static_cast<const TSwitchingChoice&>(choice));
      return;
    }
    auto& vs = choice.vertices[v];
    if (vs.extra_pairs.size() == vs.trail_pairs.size()) {
      self(self, v + 1);
      return;
    }
    for (std::size_t i = 0; i < others[v].size(); ++i) {
      if (taken[v][i]) continue;
      taken[v][i] = 1;
      const auto [x, y] = others[v][i];
      for (const DartPair& oriented : {DartPair{x, y}, DartPair{y, x}}) {
        vs.extra_pairs.push_back(oriented);
        self(self, v);
        vs.extra_pairs.pop_back();
      }
      taken[v][i] = 0;
    }
  };
  step(step, 0);
}

// Per-trail floor (d - 2L)^ell, defined when d > 2L.
inline std::optional<BigInt> t_switching_floor(int d, int L, int ell) {
  if (d <= 2 * L) return std::nullopt;
  return power(BigInt(d - 2 * L), static_cast<unsigned long>(ell));
}

// Per-vertex chain floor prod_v (d - 4 t_v)^{t_v}, valid whenever every
// factor is positive.
inline std::optional<BigInt> t_switching_chain_floor(const MultiGraph& g, const Trail& trail) {
  BigInt total = 1;
  for (const auto& vs : detail::trail_pairs_by_vertex(g, trail)) {
    const long t = static_cast<long>(vs.trail_pairs.size());
    const long base = g.degree(vs.vertex) - 4 * t;
    if (base <= 0) return std::nullopt;
    total *= power(BigInt(base), static_cast<unsigned long>(t));
  }
  return total;
}

// Non-negative rational or +infinity.
struct ExtRational {
  bool infinite = false;
  Rational value = 0;

  static ExtRational inf() { return {true, Rational(0)}; }
  double to_double() const { return infinite ? kInfinity : value.get_d(); }

  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
    if (a.infinite || b.infinite) return inf();
    return {false, a.value * b.value};
  }
};

// S_k: induced trails on at most k distinct vertices. The profile is
// m = (m_3, ..., m_L), m_ell counting those of length ell.
inline int short_trail_count(const TrailSet& ts, int k) {
  int s = 0;
  for (const auto& t : ts.trails) s += t.distinct_vertices <= k ? 1 : 0;
  return s;
}

inline std::vector<int> short_trail_profile(const TrailSet& ts, int k, int L) {
  std::vector<int> m(std::max(L - 2, 0), 0);
  for (const auto& t : ts.trails) {
    if (t.distinct_vertices <= k && t.length() >= 3 && t.length() <= L) ++m[t.length() - 3];
  }
  return m;
}

struct SwitchingClass {
  std::vector<int> m;  // m[ell - 3]
  int norm = 0;        // ||m||_1
  BigInt N;            // partitions in the class
  // a[ell], b[ell]: min outgoing / max incoming ell-switchings per
  // partition. Absent for colours that do not leave / enter the class.
  std::vector<std::optional<std::uint64_t>> a;
  std::vector<std::optional<std::uint64_t>> b;

  int at(int ell) const { return m[ell - 3]; }
  bool eligible(int ell, int L) const { return at(ell) >= 1 && static_cast<long>(L) * at(ell) >= norm; }
};

struct SwitchingEdge {
  int from = 0;
  int to = 0;
  int colour = 0;
  std::uint64_t s_prime = 0;  // switchings from class `from` into class `to`
  ExtRational alpha;          // b_colour(to) / a_colour(from)
  ExtRational alpha_hat;      // alpha / lambda with lambda = 1/L
};

struct SwitchingInstance {
  int n = 0;
  int d = 0;
  int k = 0;
  int L = 0;
  double C = 0;
  double M0 = 0;  // 2 C n L^2 / d
  BigInt total;   // |P(G)|
  std::vector<SwitchingClass> classes;
  std::vector<SwitchingEdge> edges;
  std::vector<std::vector<int>> out_edges;  // edge ids by source class
  std::uint64_t switchings = 0;             // ell-switchings enumerated

  int max_norm() const {
    int best = 0;
    for (const auto& c : classes) best = std::max(best, c.norm);
    return best;
  }
};

struct SwitchingOptions {
  std::uint64_t partition_cap = 1'000'000;
  std::uint64_t switching_budget = 100'000'000;
  unsigned threads = 1;
};

// L = C(k,2) capped at the number of edges.
inline int default_switching_L(const MultiGraph& g, int k) {
  return std::min(k * (k - 1) / 2, g.edge_count());
}

// Exhaustive Γ: every partition, every eligible colour ell, every short
// induced trail of length ell, every T-switching.
inline SwitchingInstance build_switching_graph(const MultiGraph& g, int k, int L, double C,
                                               const SwitchingOptions& opts = {}) {
  validate_eulerian_input(g, true);
  if (k < 1) throw InputError("switching graph: k must be >= 1");
  if (L < 3) throw InputError("switching graph: L must be >= 3");
  if (!(C > 0)) throw InputError("C must be positive");
  SwitchingInstance inst;
  inst.n = g.vertex_count();
  inst.d = *g.regular_degree();
  inst.k = k;
  inst.L = L;
  inst.C = C;
  inst.M0 = 2.0 * C * inst.n * static_cast<double>(L) * L / inst.d;

  const PartitionCodec codec(g, opts.partition_cap);
  const std::uint64_t total = codec.total();
  inst.total = BigInt(static_cast<unsigned long>(total));

  std::vector<std::vector<int>> profile(total);
  parallel_for(total, opts.threads, [&](std::size_t i) {
    profile[i] = short_trail_profile(extract_trails(g, codec.at(i)), k, L);
  });
  std::map<std::vector<int>, int> class_of_profile;
  for (const auto& m : profile) class_of_profile.emplace(m, 0);
  for (auto& [m, id] : class_of_profile) {
    id = static_cast<int>(inst.classes.size());
    SwitchingClass c;
    c.m = m;
    for (int x : m) c.norm += x;
    c.N = 0;
    c.a.assign(L + 1, std::nullopt);
    c.b.assign(L + 1, std::nullopt);
    inst.classes.push_back(std::move(c));
  }
  std::vector<int> cls(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    cls[i] = class_of_profile.at(profile[i]);
    inst.classes[cls[i]].N += 1;
  }

  // Per partition: outgoing counts by colour and the list of (colour, target).
  std::atomic<std::uint64_t> spent{0};
  std::vector<std::vector<std::uint64_t>> out_count(total);
  std::vector<std::vector<std::pair<int, std::uint64_t>>> results(total);
  parallel_for(total, opts.threads, [&](std::size_t i) {
    const auto p = codec.at(i);
    const auto& c = inst.classes[cls[i]];
    out_count[i].assign(L + 1, 0);
    for (const auto& t : extract_trails(g, p).trails) {
      const int ell = t.length();
      if (t.distinct_vertices > k || ell < 3 || ell > L || !c.eligible(ell, L)) continue;
      for_each_t_switching(g, p, t, [&](const TSwitchingChoice& choice) {
        const auto q = apply_t_switching(g, p, choice);
        results[i].push_back({ell, codec.index_of(q)});
        ++out_count[i][ell];
      });
      const auto used = spent.fetch_add(out_count[i][ell]) + out_count[i][ell];
      if (used > opts.switching_budget) {
        throw BudgetExceeded("switching graph: more than " + std::to_string(opts.switching_budget) +
                             " switchings");
      }
    }
  });

  std::vector<std::vector<std::uint64_t>> in_count(total, std::vector<std::uint64_t>(L + 1, 0));
  std::map<std::tuple<int, int, int>, std::uint64_t> s_prime;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (const auto& [ell, target] : results[i]) {
      ++in_count[target][ell];
      ++s_prime[{cls[i], cls[target], ell}];
      ++inst.switchings;
    }
  }
  for (std::uint64_t i = 0; i < total; ++i) {
    auto& c = inst.classes[cls[i]];
    for (int ell = 3; ell <= L; ++ell) {
      if (c.eligible(ell, L)) c.a[ell] = c.a[ell] ? std::min(*c.a[ell], out_count[i][ell]) : out_count[i][ell];
    }
  }
  for (const auto& [key, count] : s_prime) {
    const int ell = std::get<2>(key);
    auto& target = inst.classes[std::get<1>(key)];
    if (!target.b[ell]) {
      std::uint64_t b = 0;
      for (std::uint64_t i = 0; i < total; ++i) {
        if (cls[i] == std::get<1>(key)) b = std::max(b, in_count[i][ell]);
      }
      target.b[ell] = b;
    }
  }
  inst.out_edges.assign(inst.classes.size(), {});
  for (const auto& [key, count] : s_prime) {
    const auto [from, to, ell] = key;
    SwitchingEdge e;
    e.from = from;
    e.to = to;
    e.colour = ell;
    e.s_prime = count;
    const std::uint64_t a = *inst.classes[from].a[ell];
    const std::uint64_t b = *inst.classes[to].b[ell];
    if (a == 0) {
      e.alpha = ExtRational::inf();
      e.alpha_hat = ExtRational::inf();
    } else {
      Rational alpha(static_cast<unsigned long>(b), static_cast<unsigned long>(a));
      alpha.canonicalize();
      e.alpha = {false, alpha};
      e.alpha_hat = {false, alpha * L};
    }
    inst.out_edges[from].push_back(static_cast<int>(inst.edges.size()));
    inst.edges.push_back(std::move(e));
  }
  return inst;
}

// Y = classes with ||m|| > M, Z = classes with ||m|| <= M0.
struct ClassSplit {
  std::vector<char> Y;
  std::vector<char> Z;
};

inline ClassSplit split_by_norm(const SwitchingInstance& inst, double M0, double M) {
  if (M < M0) throw InputError("split: need M >= M0");
  ClassSplit s;
  for (const auto& c : inst.classes) {
    s.Y.push_back(c.norm > M ? 1 : 0);
    s.Z.push_back(c.norm <= M0 ? 1 : 0);
  }
  return s;
}

// Condition 1 and 2 of the switching theorem; returns the first violation.
inline std::optional<std::string> switching_condition_violation(const SwitchingInstance& inst,
                                                                const ClassSplit& split) {
  const std::size_t V = inst.classes.size();
  if (split.Y.size() != V || split.Z.size() != V) return "split does not match the instance";
  bool z_nonempty = false;
  for (std::size_t v = 0; v < V; ++v) {
    if (split.Y[v] && split.Z[v]) return "class " + std::to_string(v) + " is in both Y and Z";
    z_nonempty = z_nonempty || split.Z[v];
  }
  if (!z_nonempty) return "Z is empty";
  for (std::size_t v = 0; v < V; ++v) {
    if (split.Z[v]) continue;
    if (inst.out_edges[v].empty()) return "class " + std::to_string(v) + " is a sink outside Z";
    for (int e : inst.out_edges[v]) {
      if (!(inst.edges[e].alpha_hat < ExtRational{false, Rational(1)})) {
        return "class " + std::to_string(v) + " has an out-edge with alpha_hat >= 1 and is not in Z";
      }
    }
  }
  return std::nullopt;
}

struct PathBound {
  std::optional<ExtRational> max_YZ;  // absent: no path
  std::optional<ExtRational> max_YY;
  ExtRational factor;                 // max_YZ / (1 - max_YY)
  std::uint64_t paths = 0;
};

struct PathBoundOptions {
  int max_edges = std::numeric_limits<int>::max();  // path length override
  std::uint64_t budget = 10'000'000;
};

// Maxima of the alpha_hat products over directed paths with at least one
// edge that start in Y, end in Z (resp. Y), and have pairwise distinct
// internal vertices outside Y and Z.
inline PathBound path_bound(const SwitchingInstance& inst, const ClassSplit& split,
                            const PathBoundOptions& opts = {}) {
  const std::size_t V = inst.classes.size();
  PathBound r;
  std::vector<char> on_path(V, 0);
  auto improve = [](std::optional<ExtRational>& best, const ExtRational& x) {
    if (!best || *best < x) best = x;
  };
  auto dfs = [&](auto&& self, int u, const ExtRational& product, int depth) -> void {
    for (int id : inst.out_edges[u]) {
      if (++r.paths > opts.budget) {
        throw BudgetExceeded("path bound: more than " + std::to_string(opts.budget) + " path steps");
      }
      const auto& e = inst.edges[id];
      const ExtRational p = product * e.alpha_hat;
      if (split.Z[e.to]) {
        improve(r.max_YZ, p);
      } else if (split.Y[e.to]) {
        improve(r.max_YY, p);
      } else if (!on_path[e.to] && depth + 1 < opts.max_edges) {
        on_path[e.to] = 1;
        self(self, e.to, p, depth + 1);
        on_path[e.to] = 0;
      }
    }
  };
  for (std::size_t y = 0; y < V; ++y) {
    if (split.Y[y]) dfs(dfs, static_cast<int>(y), ExtRational{false, Rational(1)}, 0);
  }
  const ExtRational yy = r.max_YY.value_or(ExtRational{});
  const ExtRational yz = r.max_YZ.value_or(ExtRational{});
  if (yy.infinite || yy.value >= 1 || yz.infinite) {
    r.factor = ExtRational::inf();
  } else {
    Rational f = yz.value / (1 - yy.value);
    f.canonicalize();
    r.factor = {false, f};
  }
  return r;
}

struct SwitchingBoundReport {
  double M0 = 0;
  double M = 0;
  BigInt sum_Y;
  BigInt sum_Z;
  std::optional<std::string> violation;  // set when the split is not admissible
  PathBound paths;
  ExtRational bound;  // factor * sum_Z
  bool holds = false;
  // Y empty, bound infinite, or bound at least the mass outside Z.
  bool vacuous = true;
  // Every edge leaving a class with ||m|| > M0 has alpha_hat <= e^{-(ell+1)}.
  bool closed_form_applies = false;
  double closed_form = 0;  // 2 e^{-M + M0}
  bool closed_form_holds = false;
};

inline SwitchingBoundReport check_switching_bound(const SwitchingInstance& inst, double M0, double M,
                                                  const PathBoundOptions& opts = {}) {
  const ClassSplit split = split_by_norm(inst, M0, M);
  SwitchingBoundReport r;
  r.M0 = M0;
  r.M = M;
  r.sum_Y = 0;
  r.sum_Z = 0;
  for (std::size_t v = 0; v < inst.classes.size(); ++v) {
    if (split.Y[v]) r.sum_Y += inst.classes[v].N;
    if (split.Z[v]) r.sum_Z += inst.classes[v].N;
  }
  r.violation = switching_condition_violation(inst, split);
  if (r.violation) return r;
  r.paths = path_bound(inst, split, opts);
  r.bound = r.paths.factor.infinite ? ExtRational::inf()
                                    : ExtRational{false, r.paths.factor.value * r.sum_Z};
  r.holds = !(r.bound < ExtRational{false, Rational(r.sum_Y)});
  r.vacuous = sgn(r.sum_Y) == 0 || r.bound.infinite ||
              !(r.bound < ExtRational{false, Rational(inst.total - r.sum_Z)});

  r.closed_form_applies = true;
  for (const auto& e : inst.edges) {
    if (inst.classes[e.from].norm > M0 &&
        e.alpha_hat.to_double() > std::exp(-(e.colour + 1.0))) {
      r.closed_form_applies = false;
    }
  }
  r.closed_form = 2.0 * std::exp(-M + M0);
  r.closed_form_holds = r.sum_Y.get_d() <= r.closed_form * r.sum_Z.get_d();
  return r;
}

struct TailRow {
  int M = 0;
  Rational exact_tail;  // Pr(S_k > M)
  double bound = 0;     // 2 e^{-M + M0}
  bool vacuous = true;  // bound >= 1
  bool holds = true;
};

struct TailReport {
  int n = 0;
  int d = 0;
  int k = 0;
  int L = 0;
  double C = 0;
  double M0 = 0;
  double lambda = 0;  // (7/5) log 2
  BigInt partitions;
  std::vector<BigInt> s_histogram;  // partitions with S_k = index
  std::vector<TailRow> rows;
  double mgf_exact = 0;   // E 2^{(7/5) S_k} = E e^{lambda S_k}
  double mgf_bound = 0;   // e^{lambda M0} + 2 e^{lambda M0} / (1 - lambda)
  bool mgf_holds = false;
  bool mgf_vacuous = true;  // M0 >= max S_k
  bool all_hold = true;
};

// Exact law of S_k by enumeration against 2 e^{-M + M0}, M0 = 2 C n L^2 / d.
inline TailReport tail_report(const MultiGraph& g, int k, int L, double C, int M_max = -1,
                              std::uint64_t partition_cap = kDefaultPartitionCap) {
  validate_eulerian_input(g, true);
  if (k < 1) throw InputError("tail report: k must be >= 1");
  if (L < 0) throw InputError("tail report: L must be non-negative");
  if (!(C > 0)) throw InputError("C must be positive");
  TailReport r;
  r.n = g.vertex_count();
  r.d = *g.regular_degree();
  r.k = k;
  r.L = L;
  r.C = C;
  r.M0 = 2.0 * C * r.n * static_cast<double>(L) * L / r.d;
  r.lambda = 1.4 * std::log(2.0);
  r.partitions = partition_count(g);
  std::vector<std::uint64_t> hist(g.edge_count() + 1, 0);
  for_each_partition(
      g, [&](const EulerianPartition& p) { ++hist[short_trail_count(extract_trails(g, p), k)]; },
      partition_cap);
  int max_s = 0;
  for (std::size_t s = 0; s < hist.size(); ++s)
    if (hist[s] != 0) max_s = static_cast<int>(s);
  hist.resize(max_s + 1);
  for (auto h : hist) r.s_histogram.push_back(BigInt(static_cast<unsigned long>(h)));

  const int top = std::max(M_max, max_s + 1);
  for (int M = 0; M <= top; ++M) {
    TailRow row;
    row.M = M;
    BigInt above = 0;
    for (int s = M + 1; s <= max_s; ++s) above += r.s_histogram[s];
    row.exact_tail = Rational(above, r.partitions);
    row.exact_tail.canonicalize();
    row.bound = 2.0 * std::exp(-M + r.M0);
    row.vacuous = row.bound >= 1.0;
    row.holds = row.exact_tail.get_d() <= std::min(1.0, row.bound);
    r.all_hold = r.all_hold && row.holds;
    r.rows.push_back(std::move(row));
  }
  LogSumExp acc;
  for (int s = 0; s <= max_s; ++s) {
    if (sgn(r.s_histogram[s]) != 0) acc.add(log_of(r.s_histogram[s]) + r.lambda * s);
  }
  r.mgf_exact = std::exp(acc.value() - log_of(r.partitions));
  const double grow = std::exp(r.lambda * r.M0);
  r.mgf_bound = grow + 2.0 * grow / (1.0 - r.lambda);
  r.mgf_holds = r.mgf_exact <= r.mgf_bound;
  r.mgf_vacuous = r.M0 >= max_s;
  r.all_hold = r.all_hold && r.mgf_holds;
  return r;
}

}  // namespace euler_entropy
