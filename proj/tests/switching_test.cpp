#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "euler_entropy/euler_entropy.hpp"
#include "fixtures.hpp"

using namespace euler_entropy;

namespace {

using Mates = std::vector<DartId>;

Rational frac(long num, long den) {
  Rational q{BigInt(num), BigInt(den)};
  q.canonicalize();
  return q;
}

Mates mates_of(const EulerianPartition& p) { return {p.mates().begin(), p.mates().end()}; }

// Every partition reachable by a T-switching, straight from the definition:
// all orderings and orientations of the trail pairs at each vertex, all
// ordered sequences of distinct oriented non-trail pairs, deduplicated by
// outcome.
std::set<Mates> oracle_switch_results(const MultiGraph& g, const EulerianPartition& p, const Trail& trail) {
  struct Site {
    std::vector<DartPair> trail_pairs;
    std::vector<DartPair> others;
  };
  std::map<VertexId, Site> sites;
  const std::size_t len = trail.darts.size();
  for (std::size_t i = 0; i < len; ++i) {
    const DartId leave = trail.darts[i];
    const DartId arrive = trail.darts[(i + len - 1) % len] ^ 1;
    sites[g.owner(leave)].trail_pairs.push_back({arrive, leave});
  }
  for (auto& [v, site] : sites) {
    for (DartId x : g.darts_at(v)) {
      const DartId y = p.mate(x);
      if (x > y) continue;
      const bool on_trail = std::any_of(site.trail_pairs.begin(), site.trail_pairs.end(), [&](const DartPair& q) {
        return std::min(q.first, q.second) == x && std::max(q.first, q.second) == y;
      });
      if (!on_trail) site.others.push_back({x, y});
    }
  }
  std::vector<const Site*> order;
  for (const auto& [v, site] : sites) order.push_back(&site);

  std::set<Mates> out;
  Mates mate = mates_of(p);
  auto per_vertex = [&](auto&& self, std::size_t s) -> void {
    if (s == order.size()) {
      out.insert(mate);
      return;
    }
    const Site& site = *order[s];
    const std::size_t t = site.trail_pairs.size();
    if (site.others.size() < t) return;
    std::vector<int> perm(t);
    std::iota(perm.begin(), perm.end(), 0);
    const Mates saved = mate;
    do {
      for (unsigned tflip = 0; tflip < (1u << t); ++tflip) {
        std::vector<int> pick(site.others.size());
        std::iota(pick.begin(), pick.end(), 0);
        // ordered t-subsets of the other pairs, via permutations of all
        std::set<std::vector<int>> prefixes;
        do {
          std::vector<int> prefix(pick.begin(), pick.begin() + static_cast<long>(t));
          if (!prefixes.insert(prefix).second) continue;
          for (unsigned oflip = 0; oflip < (1u << t); ++oflip) {
            mate = saved;
            for (std::size_t i = 0; i < t; ++i) {
              auto [e, e2] = site.trail_pairs[perm[i]];
              if ((tflip >> i) & 1) std::swap(e, e2);
              auto [f, f2] = site.others[prefix[i]];
              if ((oflip >> i) & 1) std::swap(f, f2);
              mate[e] = f;
              mate[f] = e;
              mate[e2] = f2;
              mate[f2] = e2;
            }
            self(self, s + 1);
          }
        } while (std::next_permutation(pick.begin(), pick.end()));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    mate = saved;
  };
  per_vertex(per_vertex, 0);
  return out;
}

std::vector<TSwitchingChoice> all_choices(const MultiGraph& g, const EulerianPartition& p, const Trail& t) {
  std::vector<TSwitchingChoice> out;
  for_each_t_switching(g, p, t, [&](const TSwitchingChoice& c) { out.push_back(c); });
  return out;
}

SwitchingInstance hand_instance(const std::vector<int>& norms, const std::vector<std::tuple<int, int, Rational>>& edges) {
  SwitchingInstance inst;
  inst.L = 3;
  for (int norm : norms) {
    SwitchingClass c;
    c.m = {norm};
    c.norm = norm;
    c.N = 1;
    inst.classes.push_back(c);
  }
  inst.out_edges.assign(norms.size(), {});
  for (const auto& [from, to, a] : edges) {
    SwitchingEdge e;
    e.from = from;
    e.to = to;
    e.colour = 3;
    e.alpha_hat = {false, a};
    inst.out_edges[from].push_back(static_cast<int>(inst.edges.size()));
    inst.edges.push_back(e);
  }
  inst.total = static_cast<unsigned long>(norms.size());
  return inst;
}

ClassSplit make_split(const std::vector<char>& y, const std::vector<char>& z) { return {y, z}; }

}  // namespace

TEST(TSwitching, DegreeFourVertexPattern) {
  const auto g = make_complete(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = sample_partition(g, seed);
    for (const auto& t : extract_trails(g, p).trails) {
      if (t.length() != 3) continue;
      const auto choices = all_choices(g, p, t);
      EXPECT_EQ(choices.size(), 8u);
      EXPECT_EQ(count_t_switchings(g, p, t), 8);
      for (const auto& c : choices) {
        const auto q = apply_t_switching(g, p, c);
        for (const auto& vs : c.vertices) {
          ASSERT_EQ(vs.trail_pairs.size(), 1u);
          const auto [e1, e1p] = vs.trail_pairs[0];
          const auto [e2, e2p] = vs.extra_pairs[0];
          EXPECT_EQ(q.mate(e1), e2);
          EXPECT_EQ(q.mate(e1p), e2p);
        }
        // pairs away from the trail's vertices are untouched
        std::set<VertexId> visited;
        for (DartId x : t.darts) visited.insert(g.owner(x));
        for (DartId x = 0; x < g.dart_count(); ++x) {
          if (!visited.count(g.owner(x))) {
            EXPECT_EQ(q.mate(x), p.mate(x));
          }
        }
      }
    }
  }
}

TEST(TSwitching, RoundTripOnSeededTriples) {
  for (const auto& g : {make_complete(5), fixtures::octahedron()}) {
    StreamRng rng(2718, 0);
    int done = 0;
    while (done < 1000) {
      const auto p = sample_partition(g, rng);
      const auto ts = extract_trails(g, p);
      const auto& t = ts.trails[uniform_below(rng, ts.trails.size())];
      const auto choices = all_choices(g, p, t);
      if (choices.empty()) continue;
      const auto& c = choices[uniform_below(rng, choices.size())];
      const auto q = apply_t_switching(g, p, c);
      EXPECT_TRUE(is_valid_partition(g, q));
      const auto back = inverse_t_switching(g, q, t);
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, p);
      ++done;
    }
  }
}

TEST(TSwitching, InverseAbsentWhenTrailDartsArePaired) {
  const auto g = make_complete(5);
  const auto p = sample_partition(g, 9);
  for (const auto& t : extract_trails(g, p).trails) EXPECT_FALSE(inverse_t_switching(g, p, t).has_value());
}

TEST(TSwitching, ChoicesMatchDefinitionAndAreInjective) {
  for (const char* dsl : {"complete:5", "circulant:6:1,2", "complete:7", "circulant:9:1,2,3"}) {
    SCOPED_TRACE(dsl);
    const auto g = generate(dsl);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto p = sample_partition(g, seed);
      for (const auto& t : extract_trails(g, p).trails) {
        if (t.length() > 7) continue;
        std::set<Mates> produced;
        std::size_t n_choices = 0;
        for_each_t_switching(g, p, t, [&](const TSwitchingChoice& c) {
          produced.insert(mates_of(apply_t_switching(g, p, c)));
          ++n_choices;
        });
        EXPECT_EQ(produced.size(), n_choices);
        EXPECT_EQ(BigInt(static_cast<unsigned long>(n_choices)), count_t_switchings(g, p, t));
        EXPECT_EQ(produced, oracle_switch_results(g, p, t));
      }
    }
  }
}

TEST(TSwitching, NeverTheIdentity) {
  const auto g = make_complete(5);
  for_each_partition(g, [&](const EulerianPartition& p) {
    for (const auto& t : extract_trails(g, p).trails) {
      for_each_t_switching(g, p, t, [&](const TSwitchingChoice& c) { EXPECT_NE(apply_t_switching(g, p, c), p); });
    }
  });
}

TEST(TSwitching, FallingFactorialOnTwoVertexMultigraph) {
  // ten parallel edges between 0 and 1; dart 2e leaves 0
  std::string text = "2 10\n";
  for (int i = 0; i < 10; ++i) text += "0 1\n";
  const auto g = parse_edge_list(text);
  const std::vector<DartId> trail_darts{0, 3, 4, 7};
  std::vector<std::vector<DartId>> circuits{trail_darts};
  for (int e = 4; e < 10; e += 2) circuits.push_back({2 * e, 2 * (e + 1) + 1});
  const auto p = partition_from_circuits(g, circuits);
  const Trail t{trail_darts, 2};
  // each vertex visited t = 2 times: (10 - 4)(10 - 4 - 2)
  EXPECT_EQ(count_t_switchings(g, p, t), 24 * 24);
  EXPECT_EQ(all_choices(g, p, t).size(), 576u);
  EXPECT_EQ(oracle_switch_results(g, p, t).size(), 576u);
  EXPECT_EQ(*t_switching_chain_floor(g, t), 16);
}

TEST(TSwitching, RejectsInvalidChoices) {
  const auto g = make_complete(5);
  EulerianPartition p;
  Trail t;
  std::vector<TSwitchingChoice> choices;
  for (std::uint64_t seed = 0; choices.empty() && seed < 100; ++seed) {
    p = sample_partition(g, seed);
    for (const auto& candidate : extract_trails(g, p).trails) {
      choices = all_choices(g, p, candidate);
      t = candidate;
      if (!choices.empty()) break;
    }
  }
  ASSERT_FALSE(choices.empty());
  auto bad = choices.front();
  bad.vertices.front().extra_pairs.front() = bad.vertices.front().trail_pairs.front();
  EXPECT_THROW(apply_t_switching(g, p, bad), InputError);
  auto missing = choices.front();
  missing.vertices.pop_back();
  EXPECT_THROW(apply_t_switching(g, p, missing), InputError);
  // a trail not induced by a different partition
  const auto q = apply_t_switching(g, p, choices.front());
  EXPECT_THROW(count_t_switchings(g, q, t), InputError);
}

TEST(TSwitching, FloorOnK9) {
  const auto g = make_complete(9);
  const int L = 3;
  ASSERT_TRUE(t_switching_floor(8, L, 3).has_value());
  EXPECT_EQ(*t_switching_floor(8, L, 3), 8);
  EXPECT_FALSE(t_switching_floor(4, 3, 3).has_value());
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = sample_partition(g, seed);
    for (const auto& t : extract_trails(g, p).trails) {
      if (t.length() > L || t.distinct_vertices > 3) continue;
      const auto count = count_t_switchings(g, p, t);
      EXPECT_EQ(count, 216);
      EXPECT_GE(count, *t_switching_floor(8, L, t.length()));
      EXPECT_GE(count, *t_switching_chain_floor(g, t));
    }
  }
}

TEST(SwitchingGraph, ClassesMatchIndependentEnumeration) {
  struct Case {
    MultiGraph g;
    int k;
    int L;
    std::map<std::vector<int>, long> sizes;
  };
  const std::vector<Case> cases{
      {make_complete(5), 3, 3, {{{0}, 168}, {{1}, 60}, {{2}, 15}}},
      {make_complete(5), 5, 10,
       {{{0, 0, 0, 0, 0, 0, 0, 1}, 132}, {{0, 0, 2, 0, 0, 0, 0, 0}, 6}, {{0, 1, 0, 1, 0, 0, 0, 0}, 30},
        {{1, 0, 0, 0, 1, 0, 0, 0}, 60}, {{2, 1, 0, 0, 0, 0, 0, 0}, 15}}},
      {fixtures::octahedron(), 3, 3, {{{0}, 547}, {{1}, 152}, {{2}, 28}, {{4}, 2}}},
      {fixtures::octahedron(), 6, 12,
       {{{0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 372}, {{0, 0, 0, 2, 0, 0, 0, 0, 0, 0}, 30},
        {{0, 0, 1, 0, 1, 0, 0, 0, 0, 0}, 48}, {{0, 1, 0, 0, 0, 1, 0, 0, 0, 0}, 90},
        {{0, 3, 0, 0, 0, 0, 0, 0, 0, 0}, 7}, {{1, 0, 0, 0, 0, 0, 1, 0, 0, 0}, 128},
        {{1, 1, 1, 0, 0, 0, 0, 0, 0, 0}, 24}, {{2, 0, 0, 1, 0, 0, 0, 0, 0, 0}, 28},
        {{4, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 2}}},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(testing::Message() << "n=" << c.g.vertex_count() << " k=" << c.k);
    const auto inst = build_switching_graph(c.g, c.k, c.L, 1.0);
    EXPECT_EQ(inst.total, partition_count(c.g));
    std::map<std::vector<int>, long> sizes;
    BigInt sum = 0;
    for (const auto& cls : inst.classes) {
      sizes[cls.m] = cls.N.get_si();
      sum += cls.N;
    }
    EXPECT_EQ(sizes, c.sizes);
    EXPECT_EQ(sum, inst.total);
  }
}

TEST(SwitchingGraph, CycleHasOneClassAndNoEdges) {
  const auto a = build_switching_graph(make_cycle(7), 3, 3, 1.0);
  ASSERT_EQ(a.classes.size(), 1u);
  EXPECT_EQ(a.classes[0].m, std::vector<int>{0});
  EXPECT_TRUE(a.edges.empty());
  const auto b = build_switching_graph(make_cycle(5), 5, 5, 1.0);
  ASSERT_EQ(b.classes.size(), 1u);
  EXPECT_EQ(b.classes[0].m, (std::vector<int>{0, 0, 1}));
  EXPECT_TRUE(b.edges.empty());
  EXPECT_EQ(b.classes[0].a[5], std::optional<std::uint64_t>(0));
}

TEST(SwitchingGraph, EdgesRespectEligibilityAndInDegreeBound) {
  for (const auto& [g, k, L] : {std::tuple{make_complete(5), 5, 10}, std::tuple{fixtures::octahedron(), 3, 3},
                                std::tuple{fixtures::octahedron(), 6, 12}}) {
    const auto inst = build_switching_graph(g, k, L, 1.0);
    const auto short_counts = count_short_closed_trails(g, L, k).short_counts;
    for (const auto& e : inst.edges) {
      const auto& from = inst.classes[e.from];
      EXPECT_TRUE(from.eligible(e.colour, L));
      EXPECT_GE(static_cast<long>(L) * from.at(e.colour), from.norm);
      ASSERT_TRUE(inst.classes[e.to].b[e.colour].has_value());
      EXPECT_LE(BigInt(static_cast<unsigned long>(*inst.classes[e.to].b[e.colour])), short_counts[e.colour]);
    }
  }
}

TEST(SwitchingGraph, AlphaRecomputedFromRawSwitchings) {
  const auto g = make_complete(5);
  const int k = 5, L = 10;
  const auto inst = build_switching_graph(g, k, L, 1.0);
  const PartitionCodec codec(g);
  const auto total = codec.total();
  std::vector<std::vector<int>> profile(total);
  for (std::uint64_t i = 0; i < total; ++i) profile[i] = short_trail_profile(extract_trails(g, codec.at(i)), k, L);
  auto eligible = [&](const std::vector<int>& m, int ell) {
    int norm = 0;
    for (int x : m) norm += x;
    return m[ell - 3] >= 1 && L * m[ell - 3] >= norm;
  };
  std::vector<std::map<int, long>> out(total), in(total);
  std::map<std::tuple<std::vector<int>, std::vector<int>, int>, long> s_prime;
  for (std::uint64_t i = 0; i < total; ++i) {
    const auto p = codec.at(i);
    for (const auto& t : extract_trails(g, p).trails) {
      const int ell = t.length();
      if (ell < 3 || ell > L || !eligible(profile[i], ell)) continue;
      for (const auto& q : oracle_switch_results(g, p, t)) {
        const auto j = codec.index_of(EulerianPartition(q));
        ++out[i][ell];
        ++in[j][ell];
        ++s_prime[{profile[i], profile[j], ell}];
      }
    }
  }
  ASSERT_EQ(s_prime.size(), inst.edges.size());
  for (const auto& e : inst.edges) {
    const auto& mf = inst.classes[e.from].m;
    const auto& mt = inst.classes[e.to].m;
    EXPECT_EQ(s_prime.at({mf, mt, e.colour}), static_cast<long>(e.s_prime));
    long a = -1, b = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
      if (profile[i] == mf) a = a < 0 ? out[i][e.colour] : std::min(a, out[i][e.colour]);
      if (profile[i] == mt) b = std::max(b, in[i][e.colour]);
    }
    if (a == 0) {
      EXPECT_TRUE(e.alpha.infinite);
      EXPECT_TRUE(e.alpha_hat.infinite);
    } else {
      EXPECT_EQ(e.alpha.value, frac(b, a));
      EXPECT_EQ(e.alpha_hat.value, frac(b * L, a));
    }
  }
}

TEST(PathBound, EmptyYYGivesUnitDenominator) {
  const auto inst = hand_instance({5, 0}, {{0, 1, Rational(1, 4)}});
  const auto r = path_bound(inst, make_split({1, 0}, {0, 1}));
  EXPECT_FALSE(r.max_YY.has_value());
  ASSERT_TRUE(r.max_YZ.has_value());
  EXPECT_EQ(r.factor.value, Rational(1, 4));
  EXPECT_FALSE(r.factor.infinite);
}

TEST(PathBound, NoPathsGiveZero) {
  const auto inst = hand_instance({5, 0}, {});
  const auto r = path_bound(inst, make_split({1, 0}, {0, 1}));
  EXPECT_FALSE(r.max_YZ.has_value());
  EXPECT_EQ(r.factor.value, 0);
}

TEST(PathBound, TwoHopAgainstDirectEdge) {
  // Y = {0}, middle = {1}, Z = {2}
  const auto big = hand_instance({6, 3, 0}, {{0, 1, Rational(1, 2)}, {1, 2, Rational(1, 2)}, {0, 2, Rational(1, 8)}});
  EXPECT_EQ(path_bound(big, make_split({1, 0, 0}, {0, 0, 1})).factor.value, Rational(1, 4));
  const auto small = hand_instance({6, 3, 0}, {{0, 1, Rational(1, 2)}, {1, 2, Rational(1, 2)}, {0, 2, Rational(1, 3)}});
  EXPECT_EQ(path_bound(small, make_split({1, 0, 0}, {0, 0, 1})).factor.value, Rational(1, 3));
}

TEST(PathBound, ReturnPathsToYShrinkTheDenominator) {
  // 0 -> 1 -> 0 cycles through Y; 0 -> 2 ends in Z
  const auto inst = hand_instance({6, 3, 0}, {{0, 1, Rational(1, 2)}, {1, 0, Rational(1, 2)}, {0, 2, Rational(1, 4)}});
  const auto r = path_bound(inst, make_split({1, 0, 0}, {0, 0, 1}));
  ASSERT_TRUE(r.max_YY.has_value());
  EXPECT_EQ(r.max_YY->value, Rational(1, 4));
  EXPECT_EQ(r.factor.value, Rational(1, 3));
  PathBoundOptions one_edge;
  one_edge.max_edges = 1;
  EXPECT_FALSE(path_bound(inst, make_split({1, 0, 0}, {0, 0, 1}), one_edge).max_YY.has_value());
}

TEST(PathBound, InfiniteWhenDenominatorVanishes) {
  const auto inst = hand_instance({6, 0}, {{0, 0, Rational(1)}, {0, 1, Rational(1, 2)}});
  EXPECT_TRUE(path_bound(inst, make_split({1, 0}, {0, 1})).factor.infinite);
}

TEST(SwitchingBound, ConditionViolationsAreNamed) {
  const auto inst = hand_instance({6, 3, 0}, {{0, 1, Rational(2)}, {1, 2, Rational(1, 2)}});
  const auto v = switching_condition_violation(inst, make_split({1, 0, 0}, {0, 0, 1}));
  ASSERT_TRUE(v.has_value());
  EXPECT_NE(v->find("class 0"), std::string::npos);
  EXPECT_TRUE(switching_condition_violation(inst, make_split({0, 0, 0}, {0, 0, 0})).has_value());
  EXPECT_TRUE(switching_condition_violation(inst, make_split({1, 0, 0}, {1, 0, 1})).has_value());
  const auto sink = hand_instance({6, 3}, {{0, 1, Rational(1, 2)}});
  EXPECT_TRUE(switching_condition_violation(sink, make_split({1, 0}, {0, 0})).has_value());
}

TEST(SwitchingBound, HoldsOnEveryAdmissibleSplit) {
  for (const auto& [g, k, L] : {std::tuple{make_complete(5), 3, 3}, std::tuple{make_complete(5), 5, 10},
                                std::tuple{fixtures::octahedron(), 3, 3}, std::tuple{fixtures::octahedron(), 6, 12}}) {
    const auto inst = build_switching_graph(g, k, L, 1.0);
    const int top = inst.max_norm();
    int admissible = 0;
    for (int M0 = 0; M0 <= top; ++M0) {
      for (int M = M0; M <= top; ++M) {
        const auto r = check_switching_bound(inst, M0, M);
        if (r.violation) continue;
        ++admissible;
        EXPECT_TRUE(r.holds) << "M0=" << M0 << " M=" << M;
        EXPECT_EQ(r.vacuous, sgn(r.sum_Y) == 0 || r.bound.infinite ||
                                 !(r.bound < ExtRational{false, Rational(inst.total - r.sum_Z)}));
      }
    }
    EXPECT_GT(admissible, 0);
  }
}

TEST(SwitchingBound, K5TriangleSplit) {
  const auto inst = build_switching_graph(make_complete(5), 3, 3, 1.0);
  const auto r = check_switching_bound(inst, 1, 1);
  ASSERT_FALSE(r.violation.has_value()) << *r.violation;
  EXPECT_EQ(r.sum_Y, 15);
  EXPECT_EQ(r.sum_Z, 228);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.vacuous);
  EXPECT_THROW(check_switching_bound(inst, 2, 1), InputError);
}

TEST(Tail, CycleIsAStepFunction) {
  const auto r = tail_report(make_cycle(6), 6, 6, 1.0, 3);
  ASSERT_EQ(r.s_histogram.size(), 2u);
  EXPECT_EQ(r.s_histogram[1], 1);
  EXPECT_EQ(r.rows[0].exact_tail, 1);
  for (std::size_t M = 1; M < r.rows.size(); ++M) EXPECT_EQ(r.rows[M].exact_tail, 0);
  EXPECT_TRUE(r.all_hold);
}

TEST(Tail, K5TriangleLaw) {
  const double C = 0.01;
  const auto r = tail_report(make_complete(5), 3, 3, C, 4);
  EXPECT_DOUBLE_EQ(r.M0, 2.0 * C * 5 * 9 / 4);
  EXPECT_EQ(r.s_histogram, (std::vector<BigInt>{168, 60, 15}));
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(r.rows[0].exact_tail, frac(75, 243));
  EXPECT_EQ(r.rows[1].exact_tail, frac(15, 243));
  EXPECT_EQ(r.rows[2].exact_tail, 0);
  for (const auto& row : r.rows) {
    EXPECT_DOUBLE_EQ(row.bound, 2 * std::exp(-row.M + r.M0));
    EXPECT_EQ(row.vacuous, row.bound >= 1);
    EXPECT_TRUE(row.holds);
  }
  const double lambda = 1.4 * std::log(2.0);
  EXPECT_DOUBLE_EQ(r.lambda, lambda);
  EXPECT_NEAR(r.mgf_exact, (168 + 60 * std::pow(2.0, 1.4) + 15 * std::pow(2.0, 2.8)) / 243, 1e-12);
  const double grow = std::exp(lambda * r.M0);
  EXPECT_DOUBLE_EQ(r.mgf_bound, grow + 2 * grow / (1 - lambda));
  EXPECT_TRUE(r.mgf_holds);
  EXPECT_FALSE(r.mgf_vacuous);
}

TEST(Tail, Errors) {
  EXPECT_THROW(tail_report(make_complete(5), 0, 3, 1.0), InputError);
  EXPECT_THROW(tail_report(make_complete(5), 3, 3, 0.0), InputError);
  EXPECT_THROW(tail_report(make_complete(7), 3, 3, 1.0, -1, 1000), BudgetExceeded);
  EXPECT_THROW(build_switching_graph(make_complete(5), 3, 2, 1.0), InputError);
}
