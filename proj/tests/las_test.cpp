#include <gtest/gtest.h>

#include <map>

#include "dwrosn/las.hpp"
#include "dwrosn/metrics.hpp"
#include "suites.hpp"

using namespace dwrosn;
using namespace dwrosn::testing;

namespace {

TEST(HopMatrix, PathGraph) {
  const HopMatrix h = hop_matrix(make_snapshot(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(h(0, 2), 2);
  EXPECT_EQ(h(0, 1), 1);
  EXPECT_EQ(h(1, 1), 0);
}

TEST(HopMatrix, UnreachableUsesSentinel) {
  const HopMatrix h = hop_matrix(make_snapshot(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(h(0, 3), 4);
  EXPECT_EQ(h(3, 0), 4);
}

TEST(HopMatrix, MatchesFloydWarshall) {
  Rng rng(1);
  for (int g = 0; g < 100; ++g) {
    const TopologySnapshot snap = make_snapshot(10, random_edges(10, 0.25, rng));
    EXPECT_EQ(hop_matrix(snap), floyd_warshall(snap));
  }
}

TEST(PathCounts, FourCycle) {
  const PathCountMatrix k = shortest_path_counts(make_snapshot(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  EXPECT_EQ(k(0, 2), 2);
  EXPECT_EQ(k(1, 3), 2);
  EXPECT_EQ(k(0, 1), 1);
  EXPECT_EQ(k(2, 2), 1);
}

TEST(PathCounts, TreeHasUniquePaths) {
  const PathCountMatrix k = shortest_path_counts(make_snapshot(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}}));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) EXPECT_EQ(k(i, j), 1);
}

TEST(PathCounts, UnreachableIsZero) {
  const PathCountMatrix k = shortest_path_counts(make_snapshot(3, {{0, 1}}));
  EXPECT_EQ(k(0, 2), 0);
}

TEST(PathCounts, MatchesExhaustiveEnumeration) {
  const SuiteResult r = path_count_suite(100, 2);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Importance, ClosingTriangle) {
  const TopologySnapshot snap = make_snapshot(3, {{0, 1}, {1, 2}});
  const auto a = importance_a(snap, complete_potential(3));
  EXPECT_EQ(a(0, 2), 2);
  EXPECT_EQ(a(2, 0), 2);
  EXPECT_EQ(a(0, 1), 0);  // already established
}

TEST(Importance, EstablishedEdgeScoresZero) {
  const TopologySnapshot snap = make_snapshot(3, {{0, 1}, {1, 2}, {0, 2}});
  const ImportanceMatrices m = compute_importance(snap, complete_potential(3));
  for (auto v : m.a.data()) EXPECT_EQ(v, 0);
  for (auto v : m.b.data()) EXPECT_EQ(v, 0);
}

TEST(Importance, ChordShortensOnlyItsOwnPair) {
  const TopologySnapshot snap = make_snapshot(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, 3);
  BoolMatrix potential(4);
  potential(1, 3) = potential(3, 1) = 1;
  const ImportanceMatrices m = compute_importance(snap, potential);
  // 1-3 shortens only the pair (1,3) itself: 2 -> 1 in both directions.
  EXPECT_EQ(m.a(1, 3), 2);
  EXPECT_EQ(m.b(1, 3), 0);
}

TEST(Importance, SentinelForIsolatedNode) {
  const TopologySnapshot snap = make_snapshot(3, {{0, 1}});
  const ImportanceMatrices m = compute_importance(snap, complete_potential(3));
  // Edge 1-2: (1,2) drops 3 -> 1, (0,2) drops 3 -> 2; doubled over direction.
  EXPECT_EQ(m.a(1, 2), 2 * (2 + 1));
  EXPECT_TRUE(m.joins(1, 2));
  EXPECT_FALSE(m.joins(0, 1));
}

TEST(Importance, ExtraShortestPaths) {
  // a=0 b=1 c=2 d=3; E = {a-b, b-d, a-c}; candidate c-d.
  const TopologySnapshot snap = make_snapshot(4, {{0, 1}, {1, 3}, {0, 2}});
  BoolMatrix potential(4);
  potential(2, 3) = potential(3, 2) = 1;
  const ImportanceMatrices m = compute_importance(snap, potential);
  // (a,d) and (b,c) stay at 2 hops and each gain one path, per direction.
  EXPECT_EQ(m.b(2, 3), 4);
  const BruteImportance brute = brute_importance(snap, potential);
  EXPECT_EQ(m.a(2, 3), brute.a(2, 3));
  EXPECT_EQ(m.b(2, 3), brute.b(2, 3));
}

TEST(Importance, ClosingFourCycleAddsEqualLengthPaths) {
  const TopologySnapshot snap = make_snapshot(4, {{0, 1}, {1, 2}, {2, 3}});
  BoolMatrix potential(4);
  potential(0, 3) = potential(3, 0) = 1;
  // (0,3) gets shorter; (0,2) and (1,3) keep 2 hops with a second path each.
  EXPECT_EQ(importance_b(snap, potential)(0, 3), 4);
}

TEST(Importance, PendantEdgeHasNoMultiplicityGain) {
  const TopologySnapshot snap = make_snapshot(4, {{0, 1}, {1, 2}}, 3);
  BoolMatrix potential(4);
  potential(2, 3) = potential(3, 2) = 1;
  EXPECT_EQ(importance_b(snap, potential)(2, 3), 0);
}

TEST(Importance, ZeroOutsidePotentialAndSaturated) {
  TopologySnapshot snap({1, 1, 2}, 0.0, 1.0);
  snap.add_edge(0, 1);
  const ImportanceMatrices m = compute_importance(snap, complete_potential(3));
  EXPECT_EQ(m.a(0, 2), 0);  // node 0 has no free terminal
  EXPECT_EQ(m.a(1, 2), 0);
  EXPECT_EQ(m.a(2, 2), 0);
}

TEST(Importance, MatchesBruteForceOracle) {
  const SuiteResult r = importance_suite(200, 3);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(CombineImportance, Examples) {
  SquareMatrix<std::int64_t> a(2, 0), b(2, 0);
  a(0, 1) = a(1, 0) = 4;
  b(0, 1) = b(1, 0) = 2;
  EXPECT_DOUBLE_EQ(combine_importance(a, b)(0, 1), 2.0);
  SquareMatrix<std::int64_t> z(2, 0);
  const auto c = combine_importance(z, z);
  for (double v : c.data()) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(combine_importance(a, SquareMatrix<std::int64_t>(3, 0)), std::invalid_argument);
}

TEST(CombineImportance, TermsWithinUnitRange) {
  Rng rng(4);
  for (int g = 0; g < 20; ++g) {
    const RandomInstance inst = random_instance(9, rng);
    const ImportanceMatrices m = compute_importance(inst.snapshot, inst.potential);
    for (double v : m.c.data()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 2.0);
    }
  }
}

ImportanceMatrices scored(int n, const std::vector<std::tuple<int, int, int>>& a) {
  ImportanceMatrices m{SquareMatrix<std::int64_t>(n, 0), SquareMatrix<std::int64_t>(n, 0),
                       SquareMatrix<double>(n, 0.0), 0, 0, BoolMatrix(n)};
  for (const auto& [i, j, v] : a) {
    m.a(i, j) = m.a(j, i) = v;
    m.max_a = std::max<std::int64_t>(m.max_a, v);
  }
  m.c = combine_importance(m.a, m.b);
  return m;
}

TEST(TieBreak, SingleMaximumIsDeterministic) {
  const BoolMatrix potential = complete_potential(4);
  const ImportanceMatrices m = scored(4, {{0, 1, 2}, {2, 3, 5}});
  Rng rng(1);
  for (int k = 0; k < 20; ++k) EXPECT_EQ(tie_break_select(m, potential, rng), (Edge{2, 3}));
}

TEST(TieBreak, MinimumVisibilityWins) {
  // Candidates 0-1 and 2-3 tie on score; node 0 sees 3 pairs, node 2 sees 5.
  BoolMatrix potential(8);
  auto link = [&](int i, int j) { potential(i, j) = potential(j, i) = 1; };
  link(0, 1);
  link(0, 4);
  link(0, 5);
  link(1, 4);
  link(1, 5);
  link(1, 6);
  link(2, 3);
  for (int k : {4, 5, 6, 7}) link(2, k);
  for (int k : {4, 5, 6, 7}) link(3, k);
  const ImportanceMatrices m = scored(8, {{0, 1, 3}, {2, 3, 3}});
  EXPECT_EQ(tie_break_candidates(m, potential), (std::vector<Edge>{{0, 1}}));
}

TEST(TieBreak, UniformAmongTies) {
  const BoolMatrix potential = complete_potential(4);
  const ImportanceMatrices m = scored(4, {});  // all tied at zero, all NVC equal
  const std::vector<Edge> tied = tie_break_candidates(m, potential);
  ASSERT_EQ(tied.size(), 6u);
  Rng rng(99);
  std::map<Edge, int> freq;
  const int trials = 10000;
  for (int k = 0; k < trials; ++k) ++freq[tie_break_select(m, potential, rng)];
  for (const Edge& e : tied) EXPECT_NEAR(freq[e] / double(trials), 1.0 / 6.0, 0.05 / 6.0);
}

TEST(TieBreak, NoEdgeThrows) {
  const ImportanceMatrices m = scored(3, {});
  Rng rng(1);
  EXPECT_THROW(tie_break_select(m, BoolMatrix(3), rng), std::domain_error);
}

TEST(TieBreak, JoiningEdgesOutrankFiniteScores) {
  ImportanceMatrices m = scored(4, {{0, 1, 100}, {2, 3, 1}});
  m.joins(2, 3) = m.joins(3, 2) = 1;
  EXPECT_EQ(tie_break_candidates(m, complete_potential(4)), (std::vector<Edge>{{2, 3}}));
}

TEST(Schemes, TriangleUnderDegreeTwo) {
  Rng rng(5);
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) {
    const TopologySnapshot snap = assign(s, potential_from(complete_potential(3)), uniform_nodes(3, 2), rng);
    EXPECT_EQ(snap.edge_count(), 3u) << scheme_name(s);
  }
}

TEST(Schemes, SingleEdgeUnderDegreeOne) {
  Rng rng(6);
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) {
    const TopologySnapshot snap = assign(s, potential_from(complete_potential(2)), uniform_nodes(2, 1), rng);
    EXPECT_TRUE(snap.has_edge(0, 1));
    EXPECT_EQ(snap.free_terminals(0), 0);
    EXPECT_EQ(snap.free_terminals(1), 0);
  }
}

TEST(Schemes, GreedyFillsStar) {
  NodeSet nodes = uniform_nodes(4, 1);
  nodes.degree[0] = 3;
  BoolMatrix potential(4);
  for (int k = 1; k < 4; ++k) potential(0, k) = potential(k, 0) = 1;
  Rng rng(7);
  const TopologySnapshot snap = greedy_assign(potential_from(potential), nodes, rng);
  EXPECT_EQ(snap.edge_count(), 3u);
}

TEST(Schemes, GreedyPrefersShortLinksOnTies) {
  // Four nodes, degree 1: lengths make {0-1, 2-3} the only shortest matching.
  PotentialLinkMatrix potential = potential_from(complete_potential(4));
  potential.length_km = SquareMatrix<double>(4, 0.0);
  const double len[4][4] = {{0, 1, 9, 9}, {1, 0, 9, 9}, {9, 9, 0, 2}, {9, 9, 2, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) potential.length_km(i, j) = len[i][j];
  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    const TopologySnapshot snap = greedy_assign(potential, uniform_nodes(4, 1), rng);
    EXPECT_TRUE(snap.has_edge(0, 1));
    EXPECT_TRUE(snap.has_edge(2, 3));
  }
}

TEST(Schemes, PeimJoinsComponentsFirst) {
  // A path of six nodes under degree 2 everywhere: PEIM must end connected.
  Rng rng(9);
  BoolMatrix potential(6);
  for (int k = 0; k + 1 < 6; ++k) potential(k, k + 1) = potential(k + 1, k) = 1;
  potential(0, 5) = potential(5, 0) = 1;
  const TopologySnapshot snap = peim_assign(potential_from(potential), uniform_nodes(6, 2), rng);
  EXPECT_TRUE(is_connected(snap));
  EXPECT_EQ(snap.edge_count(), 6u);
}

TEST(Schemes, FeasibilityProvenanceMaximality) {
  const SuiteResult r = feasibility_suite(500, 10);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Schemes, DeterministicUnderSeed) {
  Rng shape(12);
  const PotentialLinkMatrix potential = potential_from(random_symmetric(12, 0.5, shape));
  const NodeSet nodes = uniform_nodes(12, 3);
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) {
    Rng a(77), b(77);
    EXPECT_EQ(assign(s, potential, nodes, a), assign(s, potential, nodes, b));
  }
}

TEST(Schemes, Names) {
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_EQ(parse_scheme("PEIM"), Scheme::kPeim);
  EXPECT_FALSE(parse_scheme("random").has_value());
}

TEST(Schemes, SizeMismatchRejected) {
  Rng rng(1);
  EXPECT_THROW(peim_assign(potential_from(complete_potential(3)), uniform_nodes(4, 2), rng), std::invalid_argument);
}

TEST(AverageHops, Examples) {
  EXPECT_DOUBLE_EQ(average_hops(hop_matrix(make_snapshot(3, {{0, 1}, {1, 2}}))), 8.0 / 6.0);
  EXPECT_DOUBLE_EQ(average_hops(hop_matrix(make_snapshot(3, {{0, 1}, {1, 2}, {0, 2}}))), 1.0);
  EXPECT_THROW(average_hops(hop_matrix(make_snapshot(3, {{0, 1}}))), std::domain_error);
}

TEST(Pool, CompleteGraphHasUnitDistance) {
  PoolOptions options;
  options.count = 3;
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) {
    const CandidatePool pool = generate_and_select(s, potential_from(complete_potential(5)), uniform_nodes(5, 4), options, 1);
    EXPECT_EQ(pool.candidates.size(), 3u);
    EXPECT_DOUBLE_EQ(pool.best_hbar(), 1.0);
  }
}

TEST(Pool, UniqueConnectedTopology) {
  BoolMatrix potential(4);
  for (int k = 0; k + 1 < 4; ++k) potential(k, k + 1) = potential(k + 1, k) = 1;
  PoolOptions options;
  options.count = 1;
  const CandidatePool pool = generate_and_select(Scheme::kAct, potential_from(potential), uniform_nodes(4, 2), options, 2);
  EXPECT_DOUBLE_EQ(pool.best_hbar(), 20.0 / 12.0);
}

TEST(Pool, SelectsMinimumAndIsDeterministic) {
  Rng shape(21);
  BoolMatrix links = random_symmetric(14, 0.45, shape);
  for (int k = 0; k + 1 < 14; ++k) links(k, k + 1) = links(k + 1, k) = 1;
  const PotentialLinkMatrix potential = potential_from(links);
  PoolOptions options;
  options.count = 8;
  for (Scheme s : {Scheme::kPeim, Scheme::kAct, Scheme::kGreedy}) {
    const CandidatePool pool = generate_and_select(s, potential, uniform_nodes(14, 3), options, 5);
    ASSERT_EQ(pool.hbar.size(), 8u);
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
      EXPECT_TRUE(is_connected(pool.candidates[i]));
      EXPECT_LE(pool.best_hbar(), pool.hbar[i]);
    }
    EXPECT_DOUBLE_EQ(pool.min_hbar(), pool.best_hbar());
    options.threads = 1;
    const CandidatePool again = generate_and_select(s, potential, uniform_nodes(14, 3), options, 5);
    EXPECT_EQ(again.best(), pool.best());
    EXPECT_EQ(again.hbar, pool.hbar);
    options.threads = 0;
  }
}

TEST(Pool, InfeasibleInstanceGivesUp) {
  BoolMatrix links(4);
  links(0, 1) = links(1, 0) = 1;
  PoolOptions options;
  options.count = 2;
  EXPECT_THROW(generate_and_select(Scheme::kAct, potential_from(links), uniform_nodes(4, 2), options, 1),
               InfeasibleAssignment);
}

}  // namespace
