#include <gtest/gtest.h>

#include "oracle.hpp"
#include "propo/audit.hpp"
#include "propo/constructions.hpp"
#include "propo/search.hpp"
#include "propo/verify.hpp"

using namespace propo;

namespace {

// Random oriented k-graph: each k-subset is kept with probability `density`
// and given a uniformly random orientation.
OrientedHypergraph random_graph(unsigned n, unsigned k, double density, std::mt19937_64& rng) {
  const TournamentSpace space(n, k, 4096.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  OrientedHypergraph h(k, n);
  for (std::size_t s = 0; s < space.subset_count(); ++s) {
    if (coin(rng) >= density) continue;
    const Count o = rng() % space.radix();
    h.add_edge(space.oriented(s, o));
  }
  return h;
}

std::vector<OrientedHypergraph> corpus() {
  std::vector<OrientedHypergraph> out = {construct_cyclic_triangle(), construct_claim1(),
                                         construct_h1(), construct_h2()};
  std::mt19937_64 rng(20261018);
  for (int i = 0; i < 60; ++i) {
    const unsigned k = 2 + i % 2;
    const unsigned n = k + 1 + static_cast<unsigned>(rng() % (k == 2 ? 4 : 4));
    out.push_back(random_graph(n, k, k == 2 ? 0.6 : 0.85, rng));
  }
  return out;
}

}  // namespace

TEST(Properties, RelabelInvariance) {
  std::mt19937_64 rng(1);
  for (const auto& h : corpus()) {
    const bool p = check_property_o(h).has_property_o();
    for (int t = 0; t < 3; ++t) {
      const auto perm = oracle::random_permutation(h.n(), rng);
      const auto g = relabel(h, std::vector<Vertex>(perm.begin(), perm.end()));
      EXPECT_EQ(check_property_o(g).has_property_o(), p);
    }
  }
}

TEST(Properties, ReversalInvariance) {
  for (const auto& h : corpus()) {
    EXPECT_EQ(check_property_o(reverse(h)).has_property_o(), check_property_o(h).has_property_o());
  }
  EXPECT_TRUE(check_property_o(reverse(construct_h1())).has_property_o());
}

TEST(Properties, ReversedOrderViolatesReversedGraph) {
  for (const auto& h : corpus()) {
    const auto cert = check_property_o(h, MethodChoice::kExhaustive);
    if (!cert.violating_order) continue;
    const auto g = reverse(h);
    const auto rev = cert.violating_order->reversed();
    for (std::size_t i = 0; i < g.edge_count(); ++i) EXPECT_FALSE(is_consistent(g.edge(i), rev));
  }
}

TEST(Properties, AddingEdgesPreservesPropertyO) {
  std::mt19937_64 rng(3);
  for (const auto& h : corpus()) {
    if (!check_property_o(h).has_property_o()) continue;
    const auto full = complete_to_tournament(h);
    EXPECT_TRUE(check_property_o(full).has_property_o());
    OrientedHypergraph wider(h.k(), h.n() + 2);
    for (const auto& e : h.edges()) wider.add_edge(e);
    EXPECT_TRUE(check_property_o(wider).has_property_o());
  }
}

TEST(Properties, SupportRestrictionPreservesVerdict) {
  for (const auto& h : corpus()) {
    OrientedHypergraph padded(h.k(), h.n() + 3);
    for (const auto& e : h.edges()) padded.add_edge(e);
    EXPECT_EQ(check_property_o(support_restriction(padded)).has_property_o(),
              check_property_o(h).has_property_o());
  }
}

TEST(Properties, FindersAgreeWithOracle) {
  for (const auto& h : corpus()) {
    const auto expected = oracle::violating_orders(h);
    const auto ex = find_violating_order_exhaustive(h);
    const auto bt = find_violating_order_backtracking(h);
    EXPECT_EQ(ex.violating_order.has_value(), !expected.empty());
    EXPECT_EQ(bt.violating_order.has_value(), !expected.empty());
    if (!expected.empty()) {
      const auto& asc = ex.violating_order->ascending();
      EXPECT_EQ(std::vector<unsigned>(asc.begin(), asc.end()), expected.front());
      const auto& bta = bt.violating_order->ascending();
      EXPECT_TRUE(std::find(expected.begin(), expected.end(),
                            std::vector<unsigned>(bta.begin(), bta.end())) != expected.end());
    }
  }
}

TEST(Properties, HistogramConservation) {
  for (const auto& h : corpus()) {
    const auto hist = coverage_histogram(h);
    EXPECT_TRUE(hist.total_holds());
    EXPECT_TRUE(hist.weighted_holds());
    EXPECT_EQ(hist.total_orders(), factorial(h.n()));
    EXPECT_EQ(hist.weighted_sum(), h.edge_count() * factorial(h.n()) / factorial(h.k()));
    EXPECT_EQ(hist.uncovered() == 0, check_property_o(h).has_property_o());
    const auto brute = oracle::histogram(h);
    for (const auto& [c, m] : brute) EXPECT_EQ(hist.counts.at(c), m);
  }
}

TEST(Properties, AuditDivisibility) {
  for (const auto& h : corpus()) {
    for (std::size_t base = 0; base < h.edge_count(); base += 3) {
      const auto rep = lower_bound_audit(h, base);
      EXPECT_TRUE(rep.divisibility_ok);
      for (std::size_t i = 0; i < rep.class_sizes.size(); ++i) {
        const Count c = rep.class_sizes[i];
        if (c != 0) {
          EXPECT_EQ(c, factorial(h.k()) / factorial(rep.intersection_sizes[i]));
        }
      }
    }
  }
}

TEST(Properties, PropertyOInstancesHaveMoreThanKFactorialEdges) {
  int seen = 0;
  for (const auto& h : corpus()) {
    if (!check_property_o(h).has_property_o()) continue;
    ++seen;
    EXPECT_GE(h.edge_count(), factorial(h.k()) + 1);
  }
  EXPECT_GT(seen, 4);
}
