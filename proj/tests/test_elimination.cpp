#include <gtest/gtest.h>

#include "cyclerank/cycle_rank.hpp"
#include "cyclerank/elimination.hpp"
#include "cyclerank/generators.hpp"
#include "cyclerank/path_decomposition.hpp"

using namespace cyclerank;

namespace {

EliminationNode leaf(std::size_t n, Vertex pivot, std::initializer_list<Vertex> scope) {
  return {pivot, VertexSet(n, scope), {}};
}

PathDecomposition bags(std::size_t n, std::vector<std::vector<Vertex>> lists) {
  PathDecomposition d;
  for (const auto& l : lists) {
    VertexSet s(n);
    for (Vertex v : l) s.insert(v);
    d.bags.push_back(s);
  }
  return d;
}

}  // namespace

TEST(ValidateForest, AcyclicWithEmptyForest) {
  EXPECT_TRUE(validate_forest(path_graph(3), {}).ok());
}

TEST(ValidateForest, CycleWithSingleRoot) {
  EliminationForest f{{leaf(3, 0, {0, 1, 2})}};
  EXPECT_TRUE(validate_forest(cycle_graph(3), f).ok());
}

TEST(ValidateForest, RootScopeMustBeComponent) {
  EliminationForest f{{leaf(3, 0, {0, 1})}};
  auto v = validate_forest(cycle_graph(3), f);
  EXPECT_FALSE(v.ok());
}

TEST(ValidateForest, MissingChildIsRejected) {
  // K3 - 0 leaves the 2-cycle {1,2}, which needs its own node.
  EliminationForest f{{leaf(3, 0, {0, 1, 2})}};
  EXPECT_FALSE(validate_forest(complete_graph(3), f).ok());
}

TEST(ValidateForest, MutationsOfWitnessesAreRejected) {
  Rng rng(21);
  int mutated = 0;
  for (int t = 0; t < 60; ++t) {
    auto g = random_digraph(7, 0.35, rng, 0.05);
    auto w = crank_exact(g).witness;
    ASSERT_TRUE(validate_forest(g, w).ok());
    if (w.empty()) continue;

    auto outside = w;
    auto& root = outside.trees.front();
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!root.scope.contains(v)) {
        root.pivot = v;
        break;
      }
    }
    if (root.pivot != w.trees.front().pivot) {
      EXPECT_FALSE(validate_forest(g, outside).ok());
      ++mutated;
    }

    for (std::size_t i = 0; i < w.trees.size(); ++i) {
      if (w.trees[i].children.empty()) continue;
      auto pruned = w;
      pruned.trees[i].children.pop_back();
      EXPECT_FALSE(validate_forest(g, pruned).ok());
      ++mutated;
    }
  }
  EXPECT_GT(mutated, 20);
}

TEST(Height, CountsNodes) {
  EXPECT_EQ(height(EliminationForest{}), 0u);
  EliminationForest one{{leaf(3, 0, {0, 1, 2})}};
  EXPECT_EQ(height(one), 1u);
  EliminationNode root = leaf(3, 0, {0, 1, 2});
  root.children.push_back(leaf(3, 1, {1, 2}));
  EXPECT_EQ(height(EliminationForest{{root}}), 2u);
}

TEST(ForestText, RoundTrip) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    auto g = random_digraph(8, 0.3, rng, 0.1);
    auto w = crank_exact(g).witness;
    auto text = serialize_forest(w);
    auto back = parse_forest(text, g.order());
    EXPECT_EQ(serialize_forest(back), text);
    EXPECT_TRUE(validate_forest(g, back).ok());
  }
  EXPECT_THROW(parse_forest("    0 {0}\n", 2), InputError);
  EXPECT_THROW(parse_forest("0 {0,7}\n", 2), InputError);
}

TEST(ForestToPath, ChainGivesSingletons) {
  auto d = forest_to_path_decomposition(path_graph(3), {});
  EXPECT_EQ(d.bags, bags(3, {{0}, {1}, {2}}).bags);
  EXPECT_EQ(width(d).value, 0u);
}

TEST(ForestToPath, CycleTrace) {
  EliminationForest f{{leaf(3, 0, {0, 1, 2})}};
  auto d = forest_to_path_decomposition(cycle_graph(3), f);
  EXPECT_EQ(d.bags, bags(3, {{0, 1}, {0, 2}}).bags);
  EXPECT_EQ(width(d).value, 1u);
}

TEST(ForestToPath, CompleteGraph) {
  auto g = complete_graph(3);
  auto d = forest_to_path_decomposition(g, crank_exact(g).witness);
  EXPECT_TRUE(validate_path_decomposition(g, d).ok());
  EXPECT_LE(width(d).value, 2u);
}

TEST(ForestToPath, InvalidForestIsRejected) {
  EliminationForest f{{leaf(3, 0, {0, 1})}};
  EXPECT_THROW(forest_to_path_decomposition(cycle_graph(3), f), InputError);
}

TEST(ForestToPath, WidthAtMostHeightOnRandomGraphs) {
  Rng rng(13);
  for (int t = 0; t < 150; ++t) {
    auto g = random_digraph(9, 0.25, rng, 0.1);
    auto w = crank_exact(g).witness;
    auto d = forest_to_path_decomposition(g, w);
    ASSERT_TRUE(validate_path_decomposition(g, d).ok()) << serialize_digraph(g);
    EXPECT_LE(width(d).value, height(w));
  }
}

TEST(PathDecomposition, ValidatorExamples) {
  EXPECT_TRUE(validate_path_decomposition(path_graph(3), bags(3, {{0}, {1}, {2}})).ok());
  auto bad = validate_path_decomposition(path_graph(3), bags(3, {{1}, {0}, {2}}));
  ASSERT_FALSE(bad.ok());
  EXPECT_NE(bad.violations.front().find("(c) edge (0,1)"), std::string::npos);
  EXPECT_TRUE(validate_path_decomposition(cycle_graph(3), bags(3, {{0, 1}, {0, 2}})).ok());
}

TEST(PathDecomposition, CoverageAndContiguity) {
  auto missing = validate_path_decomposition(path_graph(3), bags(3, {{0}, {1}}));
  EXPECT_FALSE(missing.ok());
  auto gap = validate_path_decomposition(Digraph(2), bags(2, {{0}, {1}, {0}}));
  EXPECT_FALSE(gap.ok());
}

TEST(PathDecomposition, Width) {
  EXPECT_EQ(width(bags(3, {{0, 1}, {0, 2}})).value, 1u);
  EXPECT_EQ(width(bags(1, {{0}})).value, 0u);
  EXPECT_TRUE(width(PathDecomposition{}).empty);
}

TEST(PathDecomposition, Normalize) {
  auto d = normalize(cycle_graph(3), bags(3, {{0, 1}, {0, 2}}));
  EXPECT_EQ(d.bags, bags(3, {{0, 1}, {0}, {0, 2}}).bags);
  EXPECT_EQ(width(d).value, 1u);
  EXPECT_TRUE(validate_path_decomposition(cycle_graph(3), d).ok());
}

TEST(PathDecomposition, TextRoundTrip) {
  auto d = bags(4, {{0, 3}, {3}, {1, 2, 3}});
  std::istringstream in(serialize_path_decomposition(d));
  EXPECT_EQ(parse_path_decomposition(in, 4).bags, d.bags);
}
