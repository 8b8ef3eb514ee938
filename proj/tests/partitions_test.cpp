#include <gtest/gtest.h>

#include <cmath>
#include <array>
#include <map>
#include <set>

#include "euler_entropy/euler_entropy.hpp"
#include "fixtures.hpp"

using namespace euler_entropy;

namespace {

// Dart sequence of the closed walk through `vertices` (first vertex not
// repeated), using a fresh parallel edge each step.
std::vector<DartId> walk_darts(const MultiGraph& g, const std::vector<int>& vertices) {
  std::vector<char> used(g.edge_count(), 0);
  std::vector<DartId> out;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int u = vertices[i];
    const int v = vertices[(i + 1) % vertices.size()];
    for (DartId x : g.darts_at(u)) {
      if (g.head(x) == v && !used[x >> 1]) {
        used[x >> 1] = 1;
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

void expect_trails_partition_edges(const MultiGraph& g, const EulerianPartition& p) {
  const auto ts = extract_trails(g, p);
  int total = 0;
  std::vector<int> edge_hits(g.edge_count(), 0);
  for (const auto& t : ts.trails) {
    total += t.length();
    for (std::size_t i = 0; i < t.darts.size(); ++i) {
      ++edge_hits[t.darts[i] >> 1];
      EXPECT_EQ(t.darts[(i + 1) % t.darts.size()], p.mate(t.darts[i] ^ 1));
    }
    std::set<int> verts;
    for (DartId x : t.darts) verts.insert(g.owner(x));
    EXPECT_EQ(static_cast<int>(verts.size()), t.distinct_vertices);
  }
  EXPECT_EQ(total, g.edge_count());
  for (int h : edge_hits) EXPECT_EQ(h, 1);
}

}  // namespace

TEST(Pairings, PerVertexCounts) {
  EXPECT_EQ(pairings_per_vertex(2), 1);
  EXPECT_EQ(pairings_per_vertex(4), 3);
  EXPECT_EQ(pairings_per_vertex(6), 15);
  EXPECT_EQ(pairings_per_vertex(10), 945);
  EXPECT_THROW(pairings_per_vertex(3), InputError);
}

TEST(Enumeration, Counts) {
  EXPECT_EQ(partition_count(make_cycle(4)), 1);
  EXPECT_EQ(partition_count(make_complete(5)), 243);
  EXPECT_EQ(partition_count(fixtures::octahedron()), 729);
  for (const auto& [name, g] : fixtures::exhaustive()) {
    std::uint64_t visited = 0;
    for_each_partition(g, [&](const EulerianPartition&) { ++visited; });
    EXPECT_EQ(BigInt(static_cast<unsigned long>(visited)), partition_count(g)) << name;
  }
}

TEST(Enumeration, VisitsDistinctValidPartitionsInCodecOrder) {
  for (const auto& g : {make_complete(5), fixtures::octahedron()}) {
    PartitionEnumerator it(g);
    PartitionCodec codec(g);
    std::set<std::vector<DartId>> seen;
    do {
      const auto& p = it.current();
      EXPECT_TRUE(is_valid_partition(g, p));
      EXPECT_TRUE(seen.insert({p.mates().begin(), p.mates().end()}).second);
      EXPECT_EQ(codec.index_of(p), it.index());
      EXPECT_EQ(codec.at(it.index()), p);
    } while (it.next());
    EXPECT_EQ(seen.size(), codec.total());
  }
}

TEST(Enumeration, CapIsEnforced) {
  EXPECT_THROW(PartitionEnumerator(make_complete(5), 242), BudgetExceeded);
  EXPECT_NO_THROW(PartitionEnumerator(make_complete(5), 243));
  EXPECT_THROW(PartitionCodec(make_complete(7), 1000), BudgetExceeded);
  EXPECT_THROW(PartitionEnumerator(make_complete(4)), InputError);
}

TEST(Sampling, DegreeTwoHasOnePartition) {
  const auto g = make_cycle(5);
  const auto p = sample_partition(g, 1);
  for (std::uint64_t seed = 2; seed < 20; ++seed) EXPECT_EQ(sample_partition(g, seed), p);
  const auto ts = extract_trails(g, p);
  ASSERT_EQ(ts.trails.size(), 1u);
  EXPECT_EQ(ts.trails[0].length(), 5);
}

TEST(Sampling, SeededSnapshot) {
  const auto p = sample_partition(make_complete(5), 2024);
  const std::vector<DartId> expected{2, 10, 0, 14, 6, 15, 4, 17, 12, 16, 1, 18, 8, 19, 3, 5, 9, 7, 11, 13};
  EXPECT_EQ(std::vector<DartId>(p.mates().begin(), p.mates().end()), expected);
  EXPECT_TRUE(is_valid_partition(make_complete(5), p));
}

TEST(Sampling, UniformOverMatchingsAtADegreeFourVertex) {
  const auto g = parse_edge_list("2 4\n0 1\n0 1\n0 1\n0 1\n");
  const VertexMatchings matchings(g);
  ASSERT_EQ(matchings.count(0), 3);
  constexpr int kDraws = 100000;
  std::array<int, 3> freq{};
  for (int i = 0; i < kDraws; ++i) {
    StreamRng rng(99, static_cast<std::uint64_t>(i));
    ++freq[matchings.index_of(0, sample_partition(g, rng))];
  }
  const double sigma = std::sqrt(kDraws * (1.0 / 3) * (2.0 / 3));
  for (int f : freq) EXPECT_LE(std::abs(f - kDraws / 3.0), 3 * sigma);
}

TEST(Sampling, UniformOverAllPartitionsOfK5) {
  const auto g = make_complete(5);
  const PartitionCodec codec(g);
  constexpr int kDraws = 243 * 400;
  std::vector<int> freq(243, 0);
  StreamRng rng(5, 0);
  for (int i = 0; i < kDraws; ++i) ++freq[codec.index_of(sample_partition(g, rng))];
  // chi-square with 242 degrees of freedom; the 99.99% quantile is about 337
  double chi2 = 0;
  for (int f : freq) chi2 += (f - 400.0) * (f - 400.0) / 400.0;
  EXPECT_LT(chi2, 337.0);
}

TEST(Trails, EulerCircuitOfK5GivesOneTrail) {
  const auto g = make_complete(5);
  const auto circuit = walk_darts(g, {0, 1, 2, 3, 4, 0, 2, 4, 1, 3});
  ASSERT_EQ(circuit.size(), 10u);
  const auto p = partition_from_circuits(g, {circuit});
  EXPECT_TRUE(is_valid_partition(g, p));
  const auto ts = extract_trails(g, p);
  ASSERT_EQ(ts.trails.size(), 1u);
  EXPECT_EQ(ts.trails[0].length(), 10);
  EXPECT_EQ(ts.trails[0].distinct_vertices, 5);
  EXPECT_THROW(partition_from_circuits(g, {walk_darts(g, {0, 1, 2})}), InputError);
}

TEST(Trails, ConservationOnEnumeratedAndSampledPartitions) {
  for (const auto& [name, g] : fixtures::exhaustive()) {
    SCOPED_TRACE(name);
    int checked = 0;
    for_each_partition(g, [&](const EulerianPartition& p) {
      if (checked++ % 37 == 0) expect_trails_partition_edges(g, p);
    });
  }
  for (const char* dsl : {"rr:40:6:1", "torus:5x5", "complete:9"}) {
    const auto g = generate(dsl);
    for (std::uint64_t seed = 0; seed < 20; ++seed) expect_trails_partition_edges(g, sample_partition(g, seed));
  }
}

TEST(Trails, CountWithoutMaterialisingAgrees) {
  const auto g = generate("rr:30:6:2");
  std::vector<std::uint32_t> seen(g.dart_count(), 0);
  std::uint32_t epoch = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = sample_partition(g, seed);
    EXPECT_EQ(count_induced_trails(p.mates(), seen, epoch), static_cast<int>(extract_trails(g, p).trails.size()));
  }
}

TEST(Stats, CycleExamples) {
  const auto g = make_cycle(5);
  const auto p = sample_partition(g, 0);
  const auto s4 = partition_stats(g, p, 4);
  EXPECT_EQ(s4.T, 1);
  EXPECT_EQ(s4.S_k, 0);
  EXPECT_EQ(s4.L_k, 1);
  EXPECT_EQ(s4.X, std::vector<int>(5, 1));
  const auto s5 = partition_stats(g, p, 5);
  EXPECT_EQ(s5.S_k, 1);
  EXPECT_EQ(s5.L_k, 0);
  EXPECT_THROW(partition_stats(g, p, -1), InputError);
}

TEST(Stats, InvariantsOverAllPartitions) {
  for (const auto& g : {make_complete(5), fixtures::octahedron()}) {
    const int half = *g.regular_degree() / 2;
    for_each_partition(g, [&](const EulerianPartition& p) {
      const auto ts = extract_trails(g, p);
      long incidences = 0;
      for (const auto& t : ts.trails) incidences += t.distinct_vertices;
      for (int k = 0; k <= g.vertex_count(); ++k) {
        const auto s = partition_stats(ts, k);
        EXPECT_EQ(s.S_k + s.L_k, s.T);
        EXPECT_EQ(s.total_incidence(), incidences);
        if (k >= 1) {
          EXPECT_LE(static_cast<long>(s.L_k) * k, s.total_incidence());
        }
        for (int x : s.X) {
          EXPECT_GE(x, 1);
          EXPECT_LE(x, half);
        }
      }
    });
  }
}

TEST(Identity, HoldsOnAllExhaustiveFixtures) {
  for (const auto& [name, g] : fixtures::exhaustive()) {
    SCOPED_TRACE(name);
    const auto r = exact_E2T(g);
    EXPECT_TRUE(r.equal);
    EXPECT_EQ(r.lhs, r.rhs);
    EXPECT_GE(r.mean_2T, 1);
    EXPECT_EQ(r.partitions, partition_count(g));
  }
}

TEST(Identity, CycleAndK5Values) {
  const auto c = exact_E2T(make_cycle(7));
  EXPECT_EQ(c.sum_2T, 2);
  EXPECT_EQ(c.eo, 2);
  EXPECT_EQ(c.lhs, 2 * pow2(7));
  const auto k5 = exact_E2T(make_complete(5));
  EXPECT_EQ(k5.eo, 24);
  EXPECT_EQ(k5.partitions, 243);
  // 24 * 3^5 * 2^10 / 6^5
  EXPECT_EQ(k5.sum_2T, 768);
}

TEST(MonteCarlo, DegreeTwoIsExact) {
  const auto r = mc_estimate(make_cycle(9), 500, 11);
  EXPECT_EQ(r.rho_hat, 0.0);
  EXPECT_DOUBLE_EQ(r.rho_estimate, std::log(2.0) / 9);
  EXPECT_DOUBLE_EQ(r.ci_low, r.rho_estimate);
  EXPECT_DOUBLE_EQ(r.ci_high, r.rho_estimate);
  EXPECT_EQ(r.trail_histogram[1], 500u);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto g = generate("torus:3x3");
  MCOptions four;
  four.threads = 4;
  const auto a = mc_estimate(g, 20000, 3);
  const auto b = mc_estimate(g, 20000, 3, four);
  EXPECT_EQ(a.trail_histogram, b.trail_histogram);
  EXPECT_EQ(a.rho_estimate, b.rho_estimate);
  EXPECT_EQ(a.ci_low, b.ci_low);
  EXPECT_EQ(a.ci_high, b.ci_high);
  const auto c = mc_estimate(g, 20000, 4);
  EXPECT_NE(a.trail_histogram, c.trail_histogram);
}

TEST(MonteCarlo, SeededSnapshot) {
  const auto r = mc_estimate(make_complete(5), 1000, 7);
  EXPECT_DOUBLE_EQ(r.rho_estimate, 0.6426676038979533);
  EXPECT_DOUBLE_EQ(r.ci_low, 0.63595890039992853);
  EXPECT_DOUBLE_EQ(r.ci_high, 0.64904025000714993);
}

TEST(MonteCarlo, AgreesWithExactValues) {
  const auto k5 = make_complete(5);
  const auto r = mc_estimate(k5, 1000000, 1);
  const double rho = count_eulerian_orientations(k5).rho;
  EXPECT_LE(r.ci_low, rho);
  EXPECT_GE(r.ci_high, rho);
  EXPECT_LE(r.ci_low, r.rho_estimate);
  EXPECT_GE(r.ci_high, r.rho_estimate);

  const auto torus = generate("torus:3x3");
  const auto exact = exact_E2T(torus);
  const auto t = mc_estimate(torus, 1000000, 2);
  const double log_exact = std::log(exact.mean_2T.get_d());
  EXPECT_LE(std::abs(t.log_mean_2T - log_exact), 3 * t.log_mean_2T_boot_sd);
}

TEST(MonteCarlo, RejectsBadInput) {
  EXPECT_THROW(mc_estimate(make_complete(5), 99, 1), InputError);
  EXPECT_THROW(mc_estimate(parse_edge_list("4 5\n0 1\n1 2\n2 0\n0 3\n3 0\n"), 1000, 1), InputError);
}

TEST(XLaw, TheoreticalExamples) {
  EXPECT_EQ(xi_pmf_theoretical(2), (std::vector<Rational>{0, 1}));
  EXPECT_EQ(xi_pmf_theoretical(4), (std::vector<Rational>{0, Rational(2, 3), Rational(1, 3)}));
  const auto six = xi_pmf_theoretical(6);
  EXPECT_EQ(six[1], Rational(8, 15));
  EXPECT_EQ(six[3], Rational(1, 15));
  EXPECT_EQ(six[2], Rational(2, 5));
  EXPECT_THROW(xi_pmf_theoretical(5), InputError);
}

TEST(XLaw, BruteForceMatchesConvolution) {
  for (int d = 2; d <= 10; d += 2) EXPECT_EQ(xi_pmf_bruteforce(d), xi_pmf_theoretical(d)) << d;
  EXPECT_THROW(xi_pmf_bruteforce(12), BudgetExceeded);
}

TEST(XLaw, ExpectedValue) {
  EXPECT_EQ(expected_X(4, 1), Rational(4, 3));
  EXPECT_EQ(expected_X(6, 1), Rational(23, 15));
  EXPECT_EQ(expected_X(2, 7), 7);
  EXPECT_THROW(expected_X(3, 1), InputError);
}

TEST(XLaw, EnumeratedDistributionMatchesOnFixtures) {
  for (const auto& [name, g] : fixtures::exhaustive()) {
    if (*g.regular_degree() < 4) continue;
    SCOPED_TRACE(name);
    const int n = g.vertex_count();
    const int d = *g.regular_degree();
    const auto law = xi_pmf_theoretical(d);
    std::vector<std::vector<unsigned long>> counts(n, std::vector<unsigned long>(d / 2 + 1, 0));
    Rational sum_X = 0;
    const std::vector<double> lambdas{0.25, 0.5, 1.0};
    std::vector<double> mgf_sum(3, 0.0);
    for_each_partition(g, [&](const EulerianPartition& p) {
      const auto ts = extract_trails(g, p);
      long x_total = 0;
      for (int v = 0; v < n; ++v) {
        ++counts[v][ts.incidence[v]];
        x_total += ts.incidence[v];
      }
      sum_X += x_total;
      for (int i = 0; i < 3; ++i) mgf_sum[i] += std::exp(lambdas[i] * x_total);
    });
    const BigInt total = partition_count(g);
    for (int v = 0; v < n; ++v) {
      for (int x = 0; x <= d / 2; ++x) {
        Rational q(BigInt(counts[v][x]), total);
        q.canonicalize();
        EXPECT_EQ(q, law[x]) << "vertex " << v << " value " << x;
      }
    }
    Rational mean = sum_X / Rational(total);
    mean.canonicalize();
    EXPECT_EQ(mean, expected_X(d, n));
    for (int i = 0; i < 3; ++i) {
      EXPECT_LE(mgf_sum[i] / total.get_d(), std::exp(2 * lambdas[i] * mean.get_d())) << lambdas[i];
    }
  }
}

// Exact joint law of (X_1..X_5) on K5, from an independent enumeration:
// 132 partitions with all X_i = 1, 21 with all X_i = 2, and 6 for each of the
// 15 vectors with exactly one or two ones; no other vector occurs.
TEST(XLaw, JointLawOnK5) {
  const auto g = make_complete(5);
  std::map<std::vector<int>, unsigned long> joint;
  std::vector<std::vector<unsigned long>> marginal(5, std::vector<unsigned long>(3, 0));
  for_each_partition(g, [&](const EulerianPartition& p) {
    const auto ts = extract_trails(g, p);
    ++joint[ts.incidence];
    for (int v = 0; v < 5; ++v) ++marginal[v][ts.incidence[v]];
  });
  bool factorises = true;
  for (int mask = 0; mask < 32; ++mask) {
    std::vector<int> x(5);
    BigInt product = 1;
    int ones = 0;
    for (int v = 0; v < 5; ++v) {
      x[v] = 1 + ((mask >> v) & 1);
      ones += x[v] == 1;
      product *= marginal[v][x[v]];
    }
    const unsigned long expected = ones == 5 ? 132 : ones == 0 ? 21 : (ones <= 2 ? 6 : 0);
    EXPECT_EQ(joint[x], expected) << mask;
    factorises = factorises && BigInt(joint[x]) * power(BigInt(243), 4) == product;
  }
  for (int v = 0; v < 5; ++v) {
    EXPECT_EQ(marginal[v][1], 162u);
    EXPECT_EQ(marginal[v][2], 81u);
  }
  EXPECT_FALSE(factorises);
}
