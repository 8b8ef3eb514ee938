#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "numeric.hpp"
#include "orientations.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace euler_entropy {

// A pairing of the darts at every vertex: mate(x) is the dart x is paired
// with at owner(x). Following x -> x^1 (cross the edge) -> mate(x^1) (turn at
// the vertex) walks the closed trails the pairing induces.
class EulerianPartition {
 public:
  EulerianPartition() = default;
  explicit EulerianPartition(std::vector<DartId> mate) : mate_(std::move(mate)) {}

  DartId mate(DartId x) const { return mate_[x]; }
  std::span<const DartId> mates() const { return mate_; }
  int dart_count() const { return static_cast<int>(mate_.size()); }

  // Replaces whatever x and y were paired with; callers keep the involution
  // consistent.
  void pair(DartId x, DartId y) {
    mate_[x] = y;
    mate_[y] = x;
  }

  friend bool operator==(const EulerianPartition&, const EulerianPartition&) = default;

 private:
  std::vector<DartId> mate_;
};

inline bool is_valid_partition(const MultiGraph& g, const EulerianPartition& p) {
  if (p.dart_count() != g.dart_count()) return false;
  for (DartId x = 0; x < p.dart_count(); ++x) {
    const DartId y = p.mate(x);
    if (y < 0 || y >= p.dart_count() || y == x || p.mate(y) != x) return false;
    if (g.owner(x) != g.owner(y)) return false;
  }
  return true;
}

// Pairing induced by closed walks given as sequences of traversed darts:
// consecutive darts d_i, d_{i+1} are paired at their common vertex. The
// walks must cover every edge exactly once.
inline EulerianPartition partition_from_circuits(const MultiGraph& g,
                                                 const std::vector<std::vector<DartId>>& circuits) {
  std::vector<DartId> mate(g.dart_count(), -1);
  for (const auto& c : circuits) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const DartId arrive = MultiGraph::partner(c[i]);
      const DartId leave = c[(i + 1) % c.size()];
      if (g.owner(arrive) != g.owner(leave)) throw InputError("circuit is not a closed walk");
      if (mate[arrive] >= 0 || mate[leave] >= 0) throw InputError("circuits reuse a dart");
      mate[arrive] = leave;
      mate[leave] = arrive;
    }
  }
  if (std::find(mate.begin(), mate.end(), -1) != mate.end()) {
    throw InputError("circuits do not cover every edge");
  }
  return EulerianPartition(std::move(mate));
}

// (d-1)!!: pairings at one vertex of degree d.
inline BigInt pairings_per_vertex(int d) {
  if (d < 0 || d % 2 != 0) throw InputError("pairings_per_vertex: degree must be even");
  return matchings_count(static_cast<unsigned long>(d));
}

inline BigInt partition_count(const MultiGraph& g) {
  BigInt total = 1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) total *= pairings_per_vertex(g.degree(v));
  return total;
}

// Every perfect matching of the darts at each vertex, in the order produced
// by pairing the first unmatched dart with each later dart in turn.
class VertexMatchings {
 public:
  explicit VertexMatchings(const MultiGraph& g) : graph_(&g), lists_(g.vertex_count()) {
    validate_eulerian_input(g, false);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto darts = g.darts_at(v);
      std::vector<DartId> current(darts.size(), -1);
      build(v, darts, current);
      for (std::size_t i = 0; i < lists_[v].size(); ++i) {
        keys_.emplace(key(v, lists_[v][i]), static_cast<int>(i));
      }
    }
  }

  int count(VertexId v) const { return static_cast<int>(lists_[v].size()); }

  // Local mate array: entry i is the mate of darts_at(v)[i].
  const std::vector<DartId>& matching(VertexId v, int index) const { return lists_[v][index]; }

  void apply(VertexId v, int index, std::vector<DartId>& mate) const {
    const auto darts = graph_->darts_at(v);
    const auto& local = lists_[v][index];
    for (std::size_t i = 0; i < darts.size(); ++i) mate[darts[i]] = local[i];
  }

  int index_of(VertexId v, const EulerianPartition& p) const {
    const auto darts = graph_->darts_at(v);
    std::vector<DartId> local(darts.size());
    for (std::size_t i = 0; i < darts.size(); ++i) local[i] = p.mate(darts[i]);
    return keys_.at(key(v, local));
  }

 private:
  void build(VertexId v, std::span<const DartId> darts, std::vector<DartId>& current) {
    std::size_t first = 0;
    while (first < darts.size() && current[first] >= 0) ++first;
    if (first == darts.size()) {
      lists_[v].push_back(current);
      return;
    }
    for (std::size_t j = first + 1; j < darts.size(); ++j) {
      if (current[j] >= 0) continue;
      current[first] = darts[j];
      current[j] = darts[first];
      build(v, darts, current);
      current[first] = current[j] = -1;
    }
  }

  static std::string key(VertexId v, const std::vector<DartId>& local) {
    std::string k = std::to_string(v);
    for (DartId x : local) {
      k += ',';
      k += std::to_string(x);
    }
    return k;
  }

  const MultiGraph* graph_;
  std::vector<std::vector<std::vector<DartId>>> lists_;
  std::unordered_map<std::string, int> keys_;
};

inline constexpr std::uint64_t kDefaultPartitionCap = 10'000'000;

// Odometer over per-vertex matching indices, last vertex fastest; visits
// every Eulerian partition exactly once in lexicographic index order.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(const MultiGraph& g, std::uint64_t cap = kDefaultPartitionCap)
      : graph_(&g), matchings_(g), digits_(g.vertex_count(), 0) {
    const BigInt total = partition_count(g);
    if (total > BigInt(static_cast<unsigned long>(cap))) {
      throw BudgetExceeded("partition enumeration: " + to_decimal(total) +
                           " partitions exceed the cap of " + std::to_string(cap));
    }
    total_ = total.get_ui();
    std::vector<DartId> mate(g.dart_count(), -1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) matchings_.apply(v, 0, mate);
    current_ = EulerianPartition(std::move(mate));
  }

  const EulerianPartition& current() const { return current_; }
  std::uint64_t index() const { return index_; }
  std::uint64_t total() const { return total_; }
  const std::vector<int>& digits() const { return digits_; }
  const VertexMatchings& matchings() const { return matchings_; }

  // Advances to the next partition; false once all have been visited.
  bool next() {
    std::vector<DartId> mate(current_.mates().begin(), current_.mates().end());
    for (VertexId v = graph_->vertex_count() - 1; v >= 0; --v) {
      if (++digits_[v] < matchings_.count(v)) {
        matchings_.apply(v, digits_[v], mate);
        current_ = EulerianPartition(std::move(mate));
        ++index_;
        return true;
      }
      digits_[v] = 0;
      matchings_.apply(v, 0, mate);
    }
    return false;
  }

 private:
  const MultiGraph* graph_;
  VertexMatchings matchings_;
  std::vector<int> digits_;
  EulerianPartition current_;
  std::uint64_t index_ = 0;
  std::uint64_t total_ = 0;
};

// Random access to partitions by their enumeration index (mixed radix over
// per-vertex matching indices, last vertex least significant).
class PartitionCodec {
 public:
  explicit PartitionCodec(const MultiGraph& g, std::uint64_t cap = kDefaultPartitionCap)
      : graph_(&g), matchings_(g) {
    const BigInt total = partition_count(g);
    if (total > BigInt(static_cast<unsigned long>(cap))) {
      throw BudgetExceeded("partition enumeration: " + to_decimal(total) +
                           " partitions exceed the cap of " + std::to_string(cap));
    }
    total_ = total.get_ui();
  }

  std::uint64_t total() const { return total_; }

  EulerianPartition at(std::uint64_t index) const {
    if (index >= total_) throw InputError("partition index out of range");
    std::vector<DartId> mate(graph_->dart_count(), -1);
    for (VertexId v = graph_->vertex_count() - 1; v >= 0; --v) {
      const auto radix = static_cast<std::uint64_t>(matchings_.count(v));
      matchings_.apply(v, static_cast<int>(index % radix), mate);
      index /= radix;
    }
    return EulerianPartition(std::move(mate));
  }

  std::uint64_t index_of(const EulerianPartition& p) const {
    std::uint64_t index = 0;
    for (VertexId v = 0; v < graph_->vertex_count(); ++v) {
      index = index * static_cast<std::uint64_t>(matchings_.count(v)) +
              static_cast<std::uint64_t>(matchings_.index_of(v, p));
    }
    return index;
  }

 private:
  const MultiGraph* graph_;
  VertexMatchings matchings_;
  std::uint64_t total_ = 0;
};

template <class Fn>
void for_each_partition(const MultiGraph& g, Fn&& fn, std::uint64_t cap = kDefaultPartitionCap) {
  PartitionEnumerator it(g, cap);
  do {
    fn(it.current());
  } while (it.next());
}

// Uniform random partition: at each vertex, repeatedly pair the first
// unmatched dart with a uniformly chosen other unmatched dart.
template <class Rng>
void sample_partition_into(const MultiGraph& g, Rng& rng, std::vector<DartId>& mate,
                           std::vector<DartId>& scratch) {
  mate.resize(g.dart_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto darts = g.darts_at(v);
    scratch.assign(darts.begin(), darts.end());
    for (std::size_t i = 0; i + 1 < scratch.size(); i += 2) {
      const std::size_t j = i + 1 + uniform_below(rng, scratch.size() - i - 1);
      std::swap(scratch[i + 1], scratch[j]);
      mate[scratch[i]] = scratch[i + 1];
      mate[scratch[i + 1]] = scratch[i];
    }
  }
}

template <class Rng>
EulerianPartition sample_partition(const MultiGraph& g, Rng& rng) {
  validate_eulerian_input(g, false);
  std::vector<DartId> mate, scratch;
  sample_partition_into(g, rng, mate, scratch);
  return EulerianPartition(std::move(mate));
}

inline EulerianPartition sample_partition(const MultiGraph& g, std::uint64_t seed) {
  StreamRng rng(seed, 0);
  return sample_partition(g, rng);
}

// A closed trail as the sequence of darts it leaves vertices by.
struct Trail {
  std::vector<DartId> darts;
  int distinct_vertices = 0;

  int length() const { return static_cast<int>(darts.size()); }
};

struct TrailSet {
  std::vector<Trail> trails;
  // incidence[v] = number of trails through v
  std::vector<int> incidence;
};

inline TrailSet extract_trails(const MultiGraph& g, const EulerianPartition& p) {
  TrailSet out;
  out.incidence.assign(g.vertex_count(), 0);
  std::vector<char> seen(g.dart_count(), 0);
  std::vector<int> stamp(g.vertex_count(), -1);
  for (DartId start = 0; start < g.dart_count(); ++start) {
    if (seen[start]) continue;
    Trail t;
    const int id = static_cast<int>(out.trails.size());
    DartId x = start;
    do {
      seen[x] = seen[x ^ 1] = 1;
      t.darts.push_back(x);
      const VertexId v = g.owner(x);
      if (stamp[v] != id) {
        stamp[v] = id;
        ++t.distinct_vertices;
        ++out.incidence[v];
      }
      x = p.mate(x ^ 1);
    } while (x != start);
    out.trails.push_back(std::move(t));
  }
  return out;
}

// Number of induced trails, without materialising them.
inline int count_induced_trails(std::span<const DartId> mate, std::vector<std::uint32_t>& seen,
                                std::uint32_t& epoch) {
  if (++epoch == 0) {
    std::fill(seen.begin(), seen.end(), 0);
    epoch = 1;
  }
  int trails = 0;
  const auto darts = static_cast<DartId>(mate.size());
  for (DartId start = 0; start < darts; ++start) {
    if (seen[start] == epoch) continue;
    ++trails;
    DartId x = start;
    do {
      seen[x] = seen[x ^ 1] = epoch;
      x = mate[x ^ 1];
    } while (x != start);
  }
  return trails;
}

struct PartitionStats {
  int T = 0;    // induced trails
  int S_k = 0;  // trails on at most k distinct vertices
  int L_k = 0;  // the rest
  std::vector<int> X;  // X[v] = trails through v
  int k = 0;

  long total_incidence() const {
    long s = 0;
    for (int x : X) s += x;
    return s;
  }
};

inline PartitionStats partition_stats(const TrailSet& trails, int k) {
  if (k < 0) throw InputError("partition_stats: k must be non-negative");
  PartitionStats s;
  s.k = k;
  s.T = static_cast<int>(trails.trails.size());
  for (const auto& t : trails.trails) {
    if (t.distinct_vertices <= k) ++s.S_k;
  }
  s.L_k = s.T - s.S_k;
  s.X = trails.incidence;
  return s;
}

inline PartitionStats partition_stats(const MultiGraph& g, const EulerianPartition& p, int k) {
  return partition_stats(extract_trails(g, p), k);
}

struct IdentityCheck {
  int n = 0;
  int d = 0;
  BigInt sum_2T;           // sum over partitions of 2^{|T(P)|}
  BigInt partitions;       // |P(G)| = ((d-1)!!)^n
  Rational mean_2T;        // E 2^{|T(P)|}
  BigInt eo;               // exact, by orientation backtracking
  BigInt lhs;              // sum_2T * C(d, d/2)^n
  BigInt rhs;              // EO * ((d-1)!!)^n * 2^{nd/2}
  bool equal = false;
};

struct ExhaustiveOptions {
  std::uint64_t partition_cap = kDefaultPartitionCap;
  OrientationOptions orientation;
};

// Sum of 2^{|T(P)|} over all partitions, checked against the exact EO count
// through sum_2T * C(d,d/2)^n = EO * ((d-1)!!)^n * 2^{nd/2}.
inline IdentityCheck exact_E2T(const MultiGraph& g, const ExhaustiveOptions& opts = {}) {
  validate_eulerian_input(g, true);
  IdentityCheck r;
  r.n = g.vertex_count();
  r.d = *g.regular_degree();
  if (r.d < 2) throw InputError("exact_E2T: degree must be at least 2");
  std::vector<std::uint64_t> histogram(g.edge_count() + 1, 0);
  std::vector<std::uint32_t> seen(g.dart_count(), 0);
  std::uint32_t epoch = 0;
  for_each_partition(
      g, [&](const EulerianPartition& p) { ++histogram[count_induced_trails(p.mates(), seen, epoch)]; },
      opts.partition_cap);
  r.sum_2T = 0;
  for (std::size_t t = 0; t < histogram.size(); ++t) {
    if (histogram[t] != 0) r.sum_2T += pow2(t) * static_cast<unsigned long>(histogram[t]);
  }
  r.partitions = partition_count(g);
  r.mean_2T = Rational(r.sum_2T, r.partitions);
  r.mean_2T.canonicalize();
  r.eo = count_eulerian_orientations(g, opts.orientation).eo;
  const auto un = static_cast<unsigned long>(r.n);
  r.lhs = r.sum_2T * power(binomial(r.d, r.d / 2), un);
  r.rhs = r.eo * power(pairings_per_vertex(r.d), un) * pow2(un * r.d / 2);
  r.equal = r.lhs == r.rhs;
  return r;
}

// Streaming log-sum-exp.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == -kInfinity) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double value() const { return max_ == -kInfinity ? -kInfinity : max_ + std::log(sum_); }

 private:
  double max_ = -kInfinity;
  double sum_ = 0.0;
};

struct MCEstimate {
  int n = 0;
  int d = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double rho_hat = 0;
  double log_mean_2T = 0;   // log of the sample mean of 2^{|T|}
  double rho_estimate = 0;  // rho_hat + log_mean_2T / n
  double ci_low = 0;        // percentile bootstrap, 95%
  double ci_high = 0;
  double log_mean_2T_boot_sd = 0;  // bootstrap sd of log_mean_2T
  std::vector<std::uint64_t> trail_histogram;  // samples with |T| = index
};

struct MCOptions {
  unsigned threads = 1;
  int bootstrap_resamples = 2000;
};

namespace detail {

inline double log_mean_from_histogram(std::span<const std::uint64_t> hist, std::uint64_t total) {
  LogSumExp acc;
  const double ln2 = std::log(2.0);
  for (std::size_t t = 0; t < hist.size(); ++t) {
    if (hist[t] != 0) acc.add(std::log(static_cast<double>(hist[t])) + ln2 * static_cast<double>(t));
  }
  return acc.value() - std::log(static_cast<double>(total));
}

// Type-7 quantile of sorted data.
inline double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

// Monte Carlo estimate of rho = rho_hat + (1/n) log E 2^{|T(P)|} from
// independent uniform partitions. Sample i uses stream i of the seed and
// results are merged as integer histograms, so the output does not depend on
// the thread count. The bootstrap resamples the histogram multinomially.
inline MCEstimate mc_estimate(const MultiGraph& g, std::uint64_t samples, std::uint64_t seed,
                              const MCOptions& opts = {}) {
  validate_eulerian_input(g, true);
  if (samples < 100) throw InputError("mc_estimate: at least 100 samples required");
  if (opts.bootstrap_resamples < 2) throw InputError("mc_estimate: bootstrap needs >= 2 resamples");
  MCEstimate r;
  r.n = g.vertex_count();
  r.d = *g.regular_degree();
  r.samples = samples;
  r.seed = seed;
  r.rho_hat = pauling_estimate(r.d);

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> partial(chunks);
  parallel_for(chunks, opts.threads, [&](std::size_t c) {
    std::vector<std::uint64_t> hist(g.edge_count() + 1, 0);
    std::vector<DartId> mate, scratch;
    std::vector<std::uint32_t> seen(g.dart_count(), 0);
    std::uint32_t epoch = 0;
    const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      StreamRng rng(seed, i);
      sample_partition_into(g, rng, mate, scratch);
      ++hist[count_induced_trails(mate, seen, epoch)];
    }
    partial[c] = std::move(hist);
  });
  r.trail_histogram.assign(g.edge_count() + 1, 0);
  for (const auto& h : partial)
    for (std::size_t t = 0; t < h.size(); ++t) r.trail_histogram[t] += h[t];

  r.log_mean_2T = detail::log_mean_from_histogram(r.trail_histogram, samples);
  r.rho_estimate = r.rho_hat + r.log_mean_2T / r.n;

  // Bootstrap: resample i draws a multinomial(samples, empirical) histogram
  // from its own stream.
  std::vector<double> boot(opts.bootstrap_resamples);
  std::vector<std::uint64_t> resampled(r.trail_histogram.size());
  for (int b = 0; b < opts.bootstrap_resamples; ++b) {
    StreamRng rng(seed, (std::uint64_t{1} << 63) | static_cast<std::uint64_t>(b));
    std::uint64_t left = samples;
    std::uint64_t mass_left = samples;
    for (std::size_t t = 0; t < resampled.size(); ++t) {
      const std::uint64_t weight = r.trail_histogram[t];
      if (weight == 0 || left == 0) {
        resampled[t] = 0;
        continue;
      }
      if (weight == mass_left) {
        resampled[t] = left;
      } else {
        std::binomial_distribution<std::uint64_t> draw(
            left, static_cast<double>(weight) / static_cast<double>(mass_left));
        resampled[t] = draw(rng);
      }
      left -= resampled[t];
      mass_left -= weight;
    }
    boot[b] = detail::log_mean_from_histogram(resampled, samples);
  }
  double mean = 0.0;
  for (double x : boot) mean += x;
  mean /= static_cast<double>(boot.size());
  double var = 0.0;
  for (double x : boot) var += (x - mean) * (x - mean);
  r.log_mean_2T_boot_sd = std::sqrt(var / static_cast<double>(boot.size() - 1));
  std::sort(boot.begin(), boot.end());
  r.ci_low = std::min(r.rho_estimate, r.rho_hat + detail::quantile(boot, 0.025) / r.n);
  r.ci_high = std::max(r.rho_estimate, r.rho_hat + detail::quantile(boot, 0.975) / r.n);
  return r;
}

// Law of X_i at a degree-d vertex: 1 + sum_{j=2}^{d/2} Be(1/(2j-1)),
// returned as exact probabilities indexed by value 0..d/2.
inline std::vector<Rational> xi_pmf_theoretical(int d) {
  if (d < 2 || d % 2 != 0) throw InputError("xi_pmf_theoretical: d must be even and >= 2");
  const int half = d / 2;
  std::vector<Rational> pmf(half + 1, Rational(0));
  pmf[1] = 1;  // j = 1 is Be(1)
  for (int j = 2; j <= half; ++j) {
    const Rational p(1, 2 * j - 1);
    std::vector<Rational> next(half + 1, Rational(0));
    for (int x = 0; x < half; ++x) {
      next[x] += pmf[x] * (1 - p);
      next[x + 1] += pmf[x] * p;
    }
    next[half] += pmf[half] * (1 - p);
    pmf = std::move(next);
  }
  for (auto& q : pmf) q.canonicalize();
  return pmf;
}

// The same law by brute force: components of the union of two perfect
// matchings on d letters, over all ((d-1)!!)^2 ordered pairs.
inline std::vector<Rational> xi_pmf_bruteforce(int d) {
  if (d < 2 || d % 2 != 0) throw InputError("xi_pmf_bruteforce: d must be even and >= 2");
  if (d > 10) throw BudgetExceeded("xi_pmf_bruteforce: d > 10 is beyond oracle scale");
  std::vector<std::vector<int>> matchings;
  std::vector<int> current(d, -1);
  auto build = [&](auto&& self) -> void {
    int first = 0;
    while (first < d && current[first] >= 0) ++first;
    if (first == d) {
      matchings.push_back(current);
      return;
    }
    for (int j = first + 1; j < d; ++j) {
      if (current[j] >= 0) continue;
      current[first] = j;
      current[j] = first;
      self(self);
      current[first] = current[j] = -1;
    }
  };
  build(build);
  std::vector<std::uint64_t> counts(d / 2 + 1, 0);
  std::vector<char> seen(d);
  for (const auto& sigma : matchings) {
    for (const auto& tau : matchings) {
      std::fill(seen.begin(), seen.end(), 0);
      int components = 0;
      for (int s = 0; s < d; ++s) {
        if (seen[s]) continue;
        ++components;
        int x = s;
        do {
          seen[x] = 1;
          seen[sigma[x]] = 1;
          x = tau[sigma[x]];
        } while (x != s);
      }
      ++counts[components];
    }
  }
  const auto total = static_cast<unsigned long>(matchings.size() * matchings.size());
  std::vector<Rational> pmf;
  for (auto c : counts) {
    Rational q(static_cast<unsigned long>(c), total);
    q.canonicalize();
    pmf.push_back(q);
  }
  return pmf;
}

// E X = n * sum_{i=1}^{d/2} 1/(2i-1).
inline Rational expected_X(int d, int n) {
  if (d < 2 || d % 2 != 0) throw InputError("expected_X: d must be even and >= 2");
  Rational s = 0;
  for (int i = 1; i <= d / 2; ++i) s += Rational(1, 2 * i - 1);
  s *= n;
  s.canonicalize();
  return s;
}

}  // namespace euler_entropy
