#include <gtest/gtest.h>

#include <cmath>

#include "cyclerank/cycle_rank.hpp"
#include "cyclerank/generators.hpp"
#include "oracles.hpp"

using namespace cyclerank;

TEST(CrankBruteforce, Examples) {
  EXPECT_EQ(crank_bruteforce(path_graph(3)), 0u);
  EXPECT_EQ(crank_bruteforce(cycle_graph(4)), 1u);
  EXPECT_EQ(crank_bruteforce(complete_graph(3)), 2u);
  EXPECT_EQ(crank_bruteforce(Digraph(1, {{0, 0}})), 1u);
  EXPECT_THROW(crank_bruteforce(cycle_graph(11)), CapacityError);
}

TEST(CrankBruteforce, AgreesWithMatrixOracle) {
  Rng rng(1);
  for (int t = 0; t < 150; ++t) {
    auto g = random_digraph(7, 0.3, rng, 0.1);
    EXPECT_EQ(crank_bruteforce(g), oracle::crank(g));
  }
}

TEST(CrankExact, AcyclicHasEmptyWitness) {
  auto r = crank_exact(path_graph(5));
  EXPECT_EQ(r.value, 0u);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_EQ(r.stats.memo_entries, 0u);
}

TEST(CrankExact, CompleteGraphWitness) {
  auto g = complete_graph(3);
  auto r = crank_exact(g);
  EXPECT_EQ(r.value, 2u);
  ASSERT_EQ(r.witness.trees.size(), 1u);
  const auto& root = r.witness.trees.front();
  EXPECT_EQ(root.scope, VertexSet::full(3));
  EXPECT_EQ(root.children.size(), 1u);
  EXPECT_TRUE(validate_forest(g, r.witness).ok());
  // smallest optimal pivot
  EXPECT_EQ(root.pivot, 0u);
}

TEST(CrankExact, DisjointCyclesTakeMax) {
  Digraph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  auto r = crank_exact(g);
  EXPECT_EQ(r.value, 1u);
  EXPECT_EQ(r.witness.trees.size(), 2u);
}

TEST(CrankExact, CompleteGraphs) {
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(crank_exact(complete_graph(n)).value, n == 1 ? 0u : n - 1);
  }
}

TEST(CrankExact, MatchesBruteforceAndWitnessIsValid) {
  Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    auto g = random_digraph(8, t % 2 ? 0.2 : 0.4, rng, 0.1);
    auto r = crank_exact(g);
    EXPECT_EQ(r.value, crank_bruteforce(g));
    EXPECT_TRUE(validate_forest(g, r.witness).ok());
    EXPECT_EQ(height(r.witness), r.value);
  }
}

TEST(CrankExact, DeletionMonotone) {
  Rng rng(3);
  for (int t = 0; t < 80; ++t) {
    auto g = random_digraph(9, 0.3, rng, 0.05);
    const auto full = crank_exact(g).value;
    for (Vertex v = 0; v < g.order(); ++v) {
      auto sub = remove_vertices(g, VertexSet(g.order(), {v}));
      EXPECT_LE(crank_exact(sub.graph).value, full);
    }
  }
}

TEST(CrankExact, MemoBoundedByNontrivialScSubsets) {
  Rng rng(4);
  for (int t = 0; t < 80; ++t) {
    auto g = random_digraph(10, 0.25, rng, 0.05);
    auto r = crank_exact(g);
    EXPECT_LE(r.stats.memo_entries, count_sc_subsets(g).nontrivial);
  }
}

TEST(CrankExact, MemoLimitRaisesCapacityError) {
  ExactOptions opts;
  opts.memo_limit = 3;
  EXPECT_THROW(crank_exact(complete_graph(8), opts), CapacityError);
}

TEST(CrankExact, RejectsTooLargeGraphs) {
  EXPECT_THROW(crank_exact(cycle_graph(65)), CapacityError);
}

TEST(CountScSubsets, Examples) {
  EXPECT_EQ(count_sc_subsets(cycle_graph(3)), (ScSubsetCount{1, 4}));
  EXPECT_EQ(count_sc_subsets(complete_graph(3)), (ScSubsetCount{4, 7}));
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(count_sc_subsets(Digraph(n)), (ScSubsetCount{0, n}));
  }
}

TEST(CountScSubsets, AgreesWithOracle) {
  Rng rng(5);
  for (int t = 0; t < 40; ++t) {
    auto g = random_digraph(8, 0.3, rng, 0.2);
    auto m = oracle::matrix_of(g);
    ScSubsetCount want;
    for (std::uint64_t s = 1; s < 256; ++s) {
      if (!oracle::strongly_connected(m, s)) continue;
      ++want.total;
      if (!oracle::acyclic(m, s)) ++want.nontrivial;
    }
    EXPECT_EQ(count_sc_subsets(g), want);
  }
}

TEST(ScSubsetBound, Examples) {
  EXPECT_NEAR(sc_subset_gamma(2), 1.9129, 5e-5);
  EXPECT_NEAR(sc_subset_bound(3, 2), 10.0, 1e-9);
  for (std::size_t d = 1; d <= 5; ++d) EXPECT_DOUBLE_EQ(sc_subset_bound(0, d), 1.0);
  EXPECT_THROW(sc_subset_bound(4, 0), InputError);
}

TEST(ScSubsetBound, HoldsOnDegreeBoundedGraphs) {
  Rng rng(6);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int t = 0; t < 30; ++t) {
      auto g = random_strongly_connected(12, d, rng);
      EXPECT_LE(static_cast<double>(count_sc_subsets(g).total), sc_subset_bound(12, d));
    }
  }
}
