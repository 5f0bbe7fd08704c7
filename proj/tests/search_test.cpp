#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "propo/constructions.hpp"
#include "propo/search.hpp"

using namespace propo;

namespace {

using EdgeList = std::vector<std::vector<Vertex>>;

EdgeList sorted_edges(const OrientedHypergraph& h) {
  EdgeList out;
  for (const auto& e : h.edges()) out.push_back(e.vertices);
  std::sort(out.begin(), out.end());
  return out;
}

// Canonical form: the smallest sorted edge list over all vertex relabelings.
EdgeList canonical(const OrientedHypergraph& h) {
  std::vector<Vertex> perm(h.n());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  EdgeList best;
  bool first = true;
  do {
    auto cand = sorted_edges(relabel(h, perm));
    if (first || cand < best) best = std::move(cand);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

struct OracleCensus {
  std::uint64_t tournaments = 0;
  std::uint64_t with_property = 0;
  std::set<EdgeList> classes;
  std::set<EdgeList> classes_with_property;
};

OracleCensus oracle_census(unsigned n, unsigned k) {
  const TournamentSpace space(n, k);
  OracleCensus out;
  for (Count idx = 0; idx < space.total(); ++idx) {
    const auto h = space.tournament_at(idx);
    const bool p = oracle::has_property_o(h);
    const auto c = canonical(h);
    ++out.tournaments;
    out.with_property += p;
    out.classes.insert(c);
    if (p) out.classes_with_property.insert(c);
  }
  return out;
}

CensusOptions full_census() {
  CensusOptions o;
  o.early_reject = false;
  return o;
}

}  // namespace

TEST(TournamentSpace, ColexSubsetsAndIndexRoundTrip) {
  const TournamentSpace space(5, 3);
  ASSERT_EQ(space.subset_count(), 10u);
  EXPECT_EQ(space.subset(0), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(space.subset(1), (std::vector<Vertex>{0, 1, 3}));
  EXPECT_EQ(space.subset(2), (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(space.subset(3), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(space.subset(9), (std::vector<Vertex>{2, 3, 4}));
  for (std::size_t s = 0; s < space.subset_count(); ++s) {
    EXPECT_EQ(space.subset_rank(space.subset(s)), s);
  }
  for (Count idx : {Count{0}, Count{1}, Count{12345}, space.total() - 1}) {
    const auto h = space.tournament_at(idx);
    EXPECT_EQ(space.index_of(space.digits_for(h)), idx);
  }
}

TEST(TournamentSpace, BudgetRefusal) {
  EXPECT_THROW(TournamentSpace(7, 3), BudgetExceeded);
  EXPECT_THROW(TournamentSpace(2, 3), InputError);
}

TEST(Enumerate, Counts) {
  auto count = [](unsigned n, unsigned k) {
    return enumerate_tournaments(n, k, [](const OrientedHypergraph&, Count, unsigned) {
             return VisitResult{};
           }).total_enumerated;
  };
  EXPECT_EQ(count(3, 2), 8u);
  EXPECT_EQ(count(4, 3), 1296u);
  EXPECT_EQ(count(4, 2), 64u);
}

TEST(Enumerate, VisitsEveryTournamentOnceInCounterOrder) {
  const TournamentSpace space(4, 2);
  std::set<EdgeList> seen;
  Count expected_index = 0;
  enumerate_tournaments(4, 2, [&](const OrientedHypergraph& h, Count idx, unsigned) {
    EXPECT_EQ(idx, expected_index++);
    EXPECT_EQ(h, space.tournament_at(idx));
    seen.insert(sorted_edges(h));
    return VisitResult{};
  });
  EXPECT_EQ(seen.size(), 64u);
}

TEST(Enumerate, FiveVertexTripleCount) {
  EXPECT_EQ(TournamentSpace(5, 3).total(), 60466176u);
}

TEST(Census, MatchesOracleCounts) {
  for (auto [n, k] : {std::pair{3u, 2u}, std::pair{4u, 2u}, std::pair{4u, 3u}}) {
    const auto truth = oracle_census(n, k);
    const auto rep = prove_vertex_lower_bound(n, k, full_census());
    EXPECT_EQ(rep.total_enumerated, truth.tournaments);
    EXPECT_EQ(rep.property_o_found, truth.with_property) << n << "," << k;
  }
  // Two cyclic triangles on three vertices.
  EXPECT_EQ(prove_vertex_lower_bound(3, 2, full_census()).property_o_found, 2u);
}

TEST(Census, DeterministicAcrossPartitions) {
  for (auto [n, k] : {std::pair{3u, 2u}, std::pair{4u, 2u}, std::pair{4u, 3u}}) {
    std::optional<SearchReport> base;
    for (unsigned parts : {1u, 4u, 16u}) {
      auto opts = full_census();
      opts.parallel_partitions = parts;
      const auto rep = prove_vertex_lower_bound(n, k, opts);
      if (!base) {
        base = rep;
        continue;
      }
      EXPECT_EQ(rep.total_enumerated, base->total_enumerated);
      EXPECT_EQ(rep.property_o_found, base->property_o_found);
      EXPECT_EQ(rep.first_witness_index, base->first_witness_index);
      EXPECT_EQ(rep.first_witness, base->first_witness);
    }
  }
}

TEST(Census, SymmetryPruningVisitsOnePerClass) {
  for (auto [n, k] : {std::pair{3u, 2u}, std::pair{4u, 2u}, std::pair{4u, 3u}}) {
    const auto truth = oracle_census(n, k);
    auto opts = full_census();
    opts.symmetry_pruning = true;
    const auto pruned = prove_vertex_lower_bound(n, k, opts);
    const auto full = prove_vertex_lower_bound(n, k, full_census());
    EXPECT_EQ(pruned.total_enumerated, truth.classes.size()) << n << "," << k;
    EXPECT_EQ(pruned.property_o_found, truth.classes_with_property.size()) << n << "," << k;
    EXPECT_EQ(pruned.property_o_found > 0, full.property_o_found > 0);
  }
}

TEST(Census, FirstWitnessHasSmallestIndex) {
  const auto truth_space = TournamentSpace(3, 2);
  std::optional<Count> first;
  for (Count idx = 0; idx < truth_space.total() && !first; ++idx) {
    if (oracle::has_property_o(truth_space.tournament_at(idx))) first = idx;
  }
  for (unsigned parts : {1u, 4u, 8u}) {
    auto opts = full_census();
    opts.parallel_partitions = parts;
    const auto rep = prove_vertex_lower_bound(3, 2, opts);
    EXPECT_EQ(rep.first_witness_index, first);
    ASSERT_TRUE(rep.first_witness);
    EXPECT_EQ(*rep.first_witness, truth_space.tournament_at(*first));
  }
}

TEST(Census, StopAtFirstWitness) {
  auto opts = full_census();
  opts.stop_at_first_witness = true;
  const auto rep = prove_vertex_lower_bound(3, 2, opts);
  EXPECT_TRUE(rep.stopped_early);
  ASSERT_TRUE(rep.first_witness_index);
  EXPECT_EQ(rep.total_enumerated, *rep.first_witness_index + 1);
  EXPECT_EQ(rep.property_o_found, 1u);
}

TEST(Census, EarlyRejectWhenTooFewSubsets) {
  const auto rep = prove_vertex_lower_bound(4, 3);
  EXPECT_TRUE(rep.early_rejected);
  EXPECT_EQ(rep.property_o_found, 0u);
  EXPECT_EQ(rep.total_enumerated, 0u);
}

TEST(Census, LowerBoundConsistencyForSmallN) {
  for (unsigned n : {3u, 4u}) {
    const auto rep = prove_vertex_lower_bound(n, 3, full_census());
    EXPECT_EQ(rep.property_o_found, 0u) << "n=" << n;
    EXPECT_FALSE(rep.first_witness);
  }
}

TEST(Census, ViolatingOrdersAreRechecked) {
  auto opts = full_census();
  opts.check_violations = true;
  const auto rep = prove_vertex_lower_bound(4, 3, opts);
  EXPECT_EQ(rep.violations_checked, 1296u);
  EXPECT_EQ(rep.property_o_found, 0u);
}

TEST(Census, SixVertexWitnessNearCompletedH1) {
  const auto completed = complete_to_tournament(construct_h1());
  ASSERT_EQ(completed.edge_count(), 20u);
  EXPECT_TRUE(oracle::has_property_o(completed));
  const TournamentSpace space(6, 3, 63.0);
  const Count idx = space.index_of(space.digits_for(completed));
  CensusOptions opts;
  opts.max_bits = 63.0;
  opts.stop_at_first_witness = true;
  opts.range_begin = idx >= 5000 ? idx - 5000 : 0;
  opts.range_end = idx + 1;
  const auto rep = prove_vertex_lower_bound(6, 3, opts);
  ASSERT_TRUE(rep.first_witness);
  EXPECT_LE(*rep.first_witness_index, idx);
  EXPECT_TRUE(oracle::has_property_o(*rep.first_witness));
  EXPECT_EQ(rep.total_enumerated, *rep.first_witness_index - opts.range_begin + 1);
}

TEST(Census, RangeOutsideSpaceIsInputError) {
  CensusOptions opts = full_census();
  opts.range_begin = 10;
  opts.range_end = 5;
  EXPECT_THROW(prove_vertex_lower_bound(3, 2, opts), InputError);
  opts.range_begin = 0;
  opts.range_end = 9;
  EXPECT_THROW(prove_vertex_lower_bound(3, 2, opts), InputError);
}

TEST(CompleteToTournament, AddsMissingSubsetsAscending) {
  const auto h = complete_to_tournament(OrientedHypergraph(2, 3, {{1, 0}}));
  EXPECT_EQ(h.edge_count(), 3u);
  EXPECT_EQ(h.edges()[0].vertices, (std::vector<Vertex>{1, 0}));
  EXPECT_TRUE(same_edge_set(h, OrientedHypergraph(2, 3, {{1, 0}, {0, 2}, {1, 2}})));
}

TEST(Minimality, H2AllEssential) {
  const auto h = construct_h2();
  const auto rep = edge_minimality(h);
  ASSERT_EQ(rep.edges.size(), 10u);
  EXPECT_EQ(rep.essential_count(), 10u);
  for (const auto& v : rep.edges) {
    ASSERT_TRUE(v.witness);
    const auto g = without_edge(h, v.edge);
    for (std::size_t i = 0; i < g.edge_count(); ++i) EXPECT_FALSE(is_consistent(g.edge(i), *v.witness));
  }
}

TEST(Minimality, CyclicTriangleAllEssential) {
  EXPECT_EQ(edge_minimality(construct_cyclic_triangle()).essential_count(), 3u);
}

TEST(Minimality, H1MatchesOracleAndFixture) {
  const auto h = construct_h1();
  const auto rep = edge_minimality(h);
  ASSERT_EQ(rep.edges.size(), 18u);
  std::string pattern;
  for (const auto& v : rep.edges) {
    EXPECT_EQ(v.essential, !oracle::has_property_o(without_edge(h, v.edge))) << "edge " << v.edge;
    EXPECT_EQ(v.essential, v.witness.has_value());
    pattern += v.essential ? 'E' : 'r';
  }
  EXPECT_EQ(pattern, std::string(18, 'E'));
}

TEST(Minimality, RejectsGraphWithoutPropertyO) {
  EXPECT_THROW(edge_minimality(OrientedHypergraph(2, 2, {{0, 1}})), InputError);
}
