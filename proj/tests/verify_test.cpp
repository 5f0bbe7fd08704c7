#include <gtest/gtest.h>

#include "oracle.hpp"
#include "propo/constructions.hpp"
#include "propo/search.hpp"
#include "propo/verify.hpp"

using namespace propo;

namespace {

void expect_violating(const OrientedHypergraph& h, const LinearOrder& order) {
  ASSERT_EQ(order.size(), h.n());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    EXPECT_FALSE(is_consistent(h.edge(i), order)) << "edge " << i;
  }
}

}  // namespace

TEST(Exhaustive, SingleEdgeOnTwoVertices) {
  const OrientedHypergraph h(2, 2, {{0, 1}});
  const auto res = find_violating_order_exhaustive(h);
  ASSERT_TRUE(res.violating_order);
  EXPECT_EQ(res.violating_order->ascending(), (std::vector<Vertex>{1, 0}));
  EXPECT_EQ(res.orders_examined, 2u);
}

TEST(Exhaustive, CyclicTriangleHasNone) {
  const auto res = find_violating_order_exhaustive(construct_cyclic_triangle());
  EXPECT_FALSE(res.violating_order);
  EXPECT_EQ(res.orders_examined, 6u);
}

TEST(Exhaustive, ReturnsLexicographicallyFirst) {
  auto h = without_edge(construct_h2(), 0);
  const auto expected = oracle::violating_orders(h);
  ASSERT_FALSE(expected.empty());
  const auto res = find_violating_order_exhaustive(h);
  ASSERT_TRUE(res.violating_order);
  EXPECT_EQ(std::vector<unsigned>(res.violating_order->ascending().begin(),
                                  res.violating_order->ascending().end()),
            expected.front());
  expect_violating(h, *res.violating_order);
}

TEST(Exhaustive, WorkerCountDoesNotChangeResult) {
  const std::vector<OrientedHypergraph> inputs = {
      without_edge(construct_h2(), 3), without_edge(construct_claim1(), 9),
      OrientedHypergraph(3, 7, {{6, 5, 4}}), construct_h1()};
  for (const auto& h : inputs) {
    const auto one = find_violating_order_exhaustive(h, {}, 1);
    for (unsigned w : {2u, 3u, 8u}) {
      const auto many = find_violating_order_exhaustive(h, {}, w);
      EXPECT_EQ(one.violating_order, many.violating_order);
      EXPECT_EQ(one.orders_examined, many.orders_examined);
    }
  }
}

TEST(Exhaustive, BudgetRefusal) {
  const OrientedHypergraph h(2, 13, {{0, 1}});
  EXPECT_THROW(find_violating_order_exhaustive(h), BudgetExceeded);
  EnumerationBudget small;
  small.max_vertices = 5;
  EXPECT_THROW(find_violating_order_exhaustive(construct_h1(), small), BudgetExceeded);
}

TEST(Backtracking, TenEdgeGraphHasNone) {
  const auto res = find_violating_order_backtracking(construct_claim1());
  EXPECT_FALSE(res.violating_order);
  EXPECT_GT(res.nodes_expanded, 0u);
}

TEST(Backtracking, SingleTripleViolated) {
  const OrientedHypergraph h(3, 3, {{0, 1, 2}});
  const auto res = find_violating_order_backtracking(h);
  ASSERT_TRUE(res.violating_order);
  expect_violating(h, *res.violating_order);
}

TEST(Backtracking, EmptyVertexSet) {
  const auto res = find_violating_order_backtracking(OrientedHypergraph(2, 0));
  ASSERT_TRUE(res.violating_order);
  EXPECT_EQ(res.violating_order->size(), 0u);
}

TEST(Backtracking, MemoisedSearchAgreesWithPlainSearch) {
  // Force memoisation on small inputs and compare verdicts.
  BacktrackingSearch memo(1);
  BacktrackingSearch plain(100);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto h = construct_claim1();
    h.remove_edge(rng() % h.edge_count());
    if (trial % 3 == 0) h = construct_h1();
    EXPECT_EQ(memo.run(h).violating_order.has_value(), plain.run(h).violating_order.has_value());
  }
}

TEST(Backtracking, GeneralFourHasPropertyO) {
  // 27 vertices; far beyond exhaustive enumeration (27! orders).
  const auto h = construct_general(4);
  BacktrackingSearch search;
  const auto res = search.run(h);
  EXPECT_FALSE(res.violating_order);
  // Regression value for the current search rules, not a contract.
  EXPECT_EQ(res.nodes_expanded, 23313260u);
}

TEST(CheckPropertyO, AutoPicksExhaustiveForSmallN) {
  const auto cert = check_property_o(construct_h1(), MethodChoice::kAuto);
  EXPECT_EQ(cert.verdict, Verdict::kPropertyO);
  EXPECT_EQ(cert.method, Method::kExhaustive);
  EXPECT_EQ(cert.orders_examined, 720u);
}

TEST(CheckPropertyO, EmptyHypergraphViolatedByIdentity) {
  const auto cert = check_property_o(OrientedHypergraph(2, 3), MethodChoice::kAuto);
  EXPECT_EQ(cert.verdict, Verdict::kViolated);
  ASSERT_TRUE(cert.violating_order);
  EXPECT_EQ(cert.violating_order->ascending(), (std::vector<Vertex>{0, 1, 2}));
}

TEST(CheckPropertyO, H2Exhaustive) {
  const auto cert = check_property_o(construct_h2(), MethodChoice::kExhaustive);
  EXPECT_EQ(cert.verdict, Verdict::kPropertyO);
  EXPECT_EQ(cert.orders_examined, 720u);
}

TEST(CheckPropertyO, AutoPicksBacktrackingForLargeN) {
  OrientedHypergraph h(2, 10, {{0, 1}, {1, 2}, {2, 0}});
  const auto cert = check_property_o(h, MethodChoice::kAuto);
  EXPECT_EQ(cert.method, Method::kBacktracking);
  EXPECT_EQ(cert.verdict, Verdict::kPropertyO);
}

TEST(CheckPropertyO, RejectsInvalidInput) {
  EXPECT_THROW(check_property_o(OrientedHypergraph(3, 3, {{0, 0, 1}})), InputError);
}

TEST(Histogram, CyclicTriangle) {
  const auto hist = coverage_histogram(construct_cyclic_triangle());
  const std::map<unsigned, Count> expected = {{1, 3}, {2, 3}};
  EXPECT_EQ(hist.counts, expected);
  EXPECT_EQ(oracle::histogram(construct_cyclic_triangle()), (std::map<unsigned, std::uint64_t>{{1, 3}, {2, 3}}));
}

TEST(Histogram, SingleEdge) {
  const auto hist = coverage_histogram(OrientedHypergraph(2, 2, {{0, 1}}));
  EXPECT_EQ(hist.counts, (std::map<unsigned, Count>{{0, 1}, {1, 1}}));
}

TEST(Histogram, H2MatchesOracle) {
  const auto h = construct_h2();
  const auto hist = coverage_histogram(h);
  const auto expected = oracle::histogram(h);
  EXPECT_EQ(hist.counts.size(), expected.size());
  for (const auto& [c, m] : expected) EXPECT_EQ(hist.counts.at(c), m);
  EXPECT_EQ(hist.uncovered(), 0u);
  EXPECT_EQ(hist.weighted_sum(), 1200u);
  EXPECT_TRUE(hist.total_holds());
}
