// Copyright 2026 The SymGraph Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "symgraph/tree.h"

namespace symgraph {
namespace {

struct Data {
  Matrix X;
  std::vector<int> y;
};

// Integer-valued features; labels depend on the first two columns with some
// noise so trees of many sizes appear.
Data random_data(Rng& rng, int rows, int cols, int classes) {
  Data d;
  d.X = Matrix(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) d.X.at(i, j) = static_cast<double>(rng.below(6));
    int c = static_cast<int>(d.X.at(i, 0) + 2 * d.X.at(i, 1)) % classes;
    if (rng.bernoulli(0.15)) c = static_cast<int>(rng.below(classes));
    d.y.push_back(c);
  }
  return d;
}

double accuracy(const DecisionTree& t, const Data& d) {
  int ok = 0;
  for (std::size_t i = 0; i < d.X.rows(); ++i) ok += t.predict(d.X.row(i)) == d.y[i];
  return static_cast<double>(ok) / d.X.rows();
}

// Partition of row indices induced by leaf assignment.
std::set<std::set<int>> partition(const DecisionTree& t, const Matrix& X) {
  std::map<int, std::set<int>> blocks;
  for (std::size_t i = 0; i < X.rows(); ++i) blocks[t.leaf_of(X.row(i))].insert(i);
  std::set<std::set<int>> out;
  for (auto& [leaf, b] : blocks) out.insert(b);
  return out;
}

TEST(Tree, TwoPointSplit) {
  Matrix X = Matrix::from_rows({{0}, {1}});
  std::vector<int> y = {0, 1};
  DecisionTree t = fit_tree_leafwise(X, y, 2, {.max_leaves = 2});
  ASSERT_EQ(t.leaf_count(), 2);
  EXPECT_EQ(t.nodes()[0].feature, 0);
  EXPECT_DOUBLE_EQ(t.nodes()[0].threshold, 0.5);
  EXPECT_EQ(t.predict(X.row(0)), 0);
  EXPECT_EQ(t.predict(X.row(1)), 1);
}

TEST(Tree, SingleLeafPredictsMajority) {
  Matrix X = Matrix::from_rows({{0}, {1}, {2}});
  std::vector<int> y = {1, 0, 1};
  DecisionTree t = fit_tree_leafwise(X, y, 2, {.max_leaves = 1});
  EXPECT_EQ(t.leaf_count(), 1);
  EXPECT_EQ(t.predict(X.row(1)), 1);
}

TEST(Tree, PureLabelsGiveOneLeaf) {
  Matrix X = Matrix::from_rows({{0, 5}, {1, 4}, {2, 3}});
  std::vector<int> y = {1, 1, 1};
  DecisionTree t = fit_tree_leafwise(X, y, 2, {.max_leaves = 16});
  EXPECT_EQ(t.leaf_count(), 1);
}

TEST(Tree, InputErrors) {
  Matrix empty;
  std::vector<int> none;
  EXPECT_THROW(fit_tree_leafwise(empty, none, 2, {}), InputError);
  Matrix X = Matrix::from_rows({{0}, {1}});
  std::vector<int> y = {0, 1};
  EXPECT_THROW(fit_tree_leafwise(X, y, 2, {.max_leaves = 0}), InputError);
  std::vector<int> bad = {0, 2};
  EXPECT_THROW(fit_tree_leafwise(X, bad, 2, {}), InputError);
  std::vector<int> short_y = {0};
  EXPECT_THROW(fit_tree_leafwise(X, short_y, 2, {}), InputError);
}

TEST(Tree, LeafwiseTakesLargestGainFirst) {
  // Feature 0 separates 6 rows cleanly; feature 1 only isolates 2 rows of
  // the other part. With two leaves the first split must be on feature 0.
  Matrix X = Matrix::from_rows({{0, 0}, {0, 0}, {0, 0}, {1, 0}, {1, 1}, {1, 1}});
  std::vector<int> y = {0, 0, 0, 1, 2, 2};
  DecisionTree t = fit_tree_leafwise(X, y, 3, {.max_leaves = 2});
  EXPECT_EQ(t.nodes()[0].feature, 0);
  DecisionTree full = fit_tree_leafwise(X, y, 3, {.max_leaves = 8});
  EXPECT_EQ(full.leaf_count(), 3);
  EXPECT_EQ(full.growth_trace().front(), 0);
  EXPECT_DOUBLE_EQ(accuracy(full, {X, y}), 1.0);
}

TEST(Tree, TiesGoToLowestFeature) {
  Matrix X = Matrix::from_rows({{0, 0}, {1, 1}});
  std::vector<int> y = {0, 1};
  DecisionTree t = fit_tree_leafwise(X, y, 2, {.max_leaves = 2});
  EXPECT_EQ(t.nodes()[0].feature, 0);
}

TEST(Tree, DeterministicAndLeafIdsDense) {
  Rng rng(3);
  Data d = random_data(rng, 200, 5, 3);
  TreeParams p{.max_leaves = 20, .seed = 9, .feature_fraction = 0.6};
  DecisionTree a = fit_tree_leafwise(d.X, d.y, 3, p);
  DecisionTree b = fit_tree_leafwise(d.X, d.y, 3, p);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  std::vector<int> ids;
  for (const auto& n : a.nodes()) {
    if (n.is_leaf()) ids.push_back(n.leaf_id);
    else EXPECT_TRUE(n.left > 0 && n.right > 0);
  }
  std::vector<int> expect(a.leaf_count());
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(ids, expect);  // preorder visits leaves left to right
}

TEST(Tree, JsonRoundTrip) {
  Rng rng(4);
  Data d = random_data(rng, 120, 4, 2);
  DecisionTree t = fit_tree_leafwise(d.X, d.y, 2, {.max_leaves = 10});
  DecisionTree back = DecisionTree::from_json(nlohmann::json::parse(t.to_json().dump()));
  EXPECT_TRUE(back == t);
  nlohmann::json broken = t.to_json();
  broken["nodes"][0]["left"] = 99;
  EXPECT_THROW(DecisionTree::from_json(broken), InputError);
}

TEST(CostComplexity, PrunesWeakSplitsOnly) {
  Rng rng(6);
  Data d = random_data(rng, 300, 4, 2);
  DecisionTree full = fit_tree_leafwise(d.X, d.y, 2, {.max_leaves = 40});
  DecisionTree same = cost_complexity_prune(full, 0.0);
  EXPECT_EQ(same.leaf_count(), full.leaf_count());
  DecisionTree root = cost_complexity_prune(full, 10.0);
  EXPECT_EQ(root.leaf_count(), 1);
  int prev = full.leaf_count();
  for (double alpha : {1e-4, 1e-3, 3e-3, 1e-2, 3e-2}) {
    DecisionTree p = cost_complexity_prune(full, alpha);
    EXPECT_LE(p.leaf_count(), prev);
    prev = p.leaf_count();
    // Every remaining split beats alpha under the weakest-link criterion:
    // a single split's link strength is its cost decrease.
    const double n = full.nodes()[0].samples();
    for (const auto& node : p.nodes()) {
      if (node.is_leaf()) continue;
      const auto& l = p.nodes()[node.left];
      const auto& r = p.nodes()[node.right];
      if (!l.is_leaf() || !r.is_leaf()) continue;
      double decrease = (node.samples() * node.impurity - l.samples() * l.impurity -
                         r.samples() * r.impurity) / n;
      EXPECT_GT(decrease, alpha - 1e-12);
    }
  }
}

TEST(PruneToLeaves, IdentityAndRoot) {
  Rng rng(7);
  Data d = random_data(rng, 150, 3, 3);
  DecisionTree t = fit_tree_leafwise(d.X, d.y, 3, {.max_leaves = 12});
  ASSERT_GT(t.leaf_count(), 2);
  EXPECT_TRUE(prune_to_leaves(t, t.leaf_count()) == t);
  DecisionTree r = prune_to_leaves(t, 1);
  EXPECT_EQ(r.leaf_count(), 1);
  EXPECT_EQ(r.nodes().size(), 1u);
  EXPECT_THROW(prune_to_leaves(t, 0), InputError);
  EXPECT_THROW(prune_to_leaves(t, t.leaf_count() + 1), InputError);
}

TEST(PruneToLeaves, EachLevelMergesOneSiblingPair) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Data d = random_data(rng, 150, 4, 3);
    DecisionTree t = fit_tree_leafwise(d.X, d.y, 3, {.max_leaves = 16, .seed = 1});
    double prev_acc = 0.0;
    for (int lambda = 1; lambda < t.leaf_count(); ++lambda) {
      auto coarse = partition(prune_to_leaves(t, lambda), d.X);
      auto fine = partition(prune_to_leaves(t, lambda + 1), d.X);
      ASSERT_EQ(coarse.size(), static_cast<std::size_t>(lambda));
      ASSERT_EQ(fine.size(), static_cast<std::size_t>(lambda + 1));
      // Exactly one coarse block is missing from the fine partition, and it
      // is the union of the two fine blocks missing from the coarse one.
      std::vector<std::set<int>> only_coarse, only_fine;
      for (const auto& b : coarse)
        if (!fine.count(b)) only_coarse.push_back(b);
      for (const auto& b : fine)
        if (!coarse.count(b)) only_fine.push_back(b);
      ASSERT_EQ(only_coarse.size(), 1u);
      ASSERT_EQ(only_fine.size(), 2u);
      std::set<int> merged = only_fine[0];
      merged.insert(only_fine[1].begin(), only_fine[1].end());
      ASSERT_EQ(merged, only_coarse[0]);
      double acc = accuracy(prune_to_leaves(t, lambda), d);
      EXPECT_GE(acc + 1e-12, prev_acc);
      prev_acc = acc;
    }
  }
}

TEST(LookupTable, MatchesLivePrunedTrees) {
  Rng rng(9);
  Data d = random_data(rng, 180, 4, 3);
  DecisionTree master = fit_tree_leafwise(d.X, d.y, 3, {.max_leaves = 10});
  const int cap = 14;  // beyond the leaf count on purpose
  LookupTable table = build_lookup_table(master, d.X, cap);
  for (int lambda = 1; lambda <= cap; ++lambda) {
    DecisionTree live = prune_to_leaves(master, std::min(lambda, master.leaf_count()));
    std::set<int> distinct;
    for (std::size_t i = 0; i < d.X.rows(); ++i) {
      ASSERT_EQ(table.at(i, lambda), live.leaf_of(d.X.row(i)));
      distinct.insert(table.at(i, lambda));
    }
    EXPECT_LE(distinct.size(), static_cast<std::size_t>(lambda));
    if (lambda == 1) EXPECT_EQ(distinct, std::set<int>{0});
  }
}

TEST(ExtractPaths, DepthOneAndRoot) {
  Matrix X = Matrix::from_rows({{0}, {1}});
  std::vector<int> y = {0, 1};
  auto paths = extract_paths(fit_tree_leafwise(X, y, 2, {.max_leaves = 2}));
  ASSERT_EQ(paths.size(), 2u);
  ASSERT_EQ(paths[0].literals.size(), 1u);
  ASSERT_EQ(paths[1].literals.size(), 1u);
  EXPECT_FALSE(paths[0].literals[0].greater);
  EXPECT_TRUE(paths[1].literals[0].greater);
  EXPECT_EQ(paths[0].literals[0].threshold, paths[1].literals[0].threshold);

  auto root = extract_paths(fit_tree_leafwise(X, y, 2, {.max_leaves = 1}));
  ASSERT_EQ(root.size(), 1u);
  EXPECT_TRUE(root[0].literals.empty());
}

TEST(ExtractPaths, ExclusiveExhaustiveAndFaithful) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    Data d = random_data(rng, 150, 4, 3);
    DecisionTree t = fit_tree_leafwise(d.X, d.y, 3, {.max_leaves = 15});
    auto paths = extract_paths(t);
    // Probe with fresh points, including values outside the training range.
    Data probe = random_data(rng, 300, 4, 3);
    for (std::size_t i = 0; i < probe.X.rows(); ++i) {
      int accepted = 0, which = -1;
      for (const auto& p : paths) {
        if (path_accepts(p, probe.X.row(i))) {
          ++accepted;
          which = p.leaf_id;
        }
      }
      ASSERT_EQ(accepted, 1);
      ASSERT_EQ(which, t.leaf_of(probe.X.row(i)));
      ASSERT_EQ(paths[which].predicted_class, t.predict(probe.X.row(i)));
    }
  }
}

TEST(Forest, OneTreeOneRowEqualsSingleTree) {
  Matrix X = Matrix::from_rows({{3, 1}});
  std::vector<int> y = {1};
  RandomForest f = fit_forest(X, y, 2, {.n_trees = 1, .feature_fraction = 1.0});
  DecisionTree t = fit_tree_leafwise(X, y, 2, {.max_leaves = 48});
  EXPECT_TRUE(f.trees()[0] == t);
}

TEST(Forest, VoteTieBreak) {
  std::vector<int> votes = {0, 0, 1};
  EXPECT_EQ(vote(votes, 2), 0);
  std::vector<int> tie = {2, 1, 1, 2};
  EXPECT_EQ(vote(tie, 3), 1);
}

TEST(Forest, ImportancesNormalizeAndTrackSignal) {
  Rng rng(12);
  Matrix X(200, 3);
  std::vector<int> y;
  for (int i = 0; i < 200; ++i) {
    X.at(i, 0) = static_cast<double>(rng.below(10));
    X.at(i, 1) = 7.0;  // constant, never used
    X.at(i, 2) = static_cast<double>(rng.below(10));
    y.push_back(X.at(i, 0) >= 5 ? 1 : 0);
  }
  RandomForest f = fit_forest(X, y, 2, {.n_trees = 15, .max_leaves = 8, .seed = 1});
  auto imp = feature_importance(f);
  EXPECT_NEAR(std::accumulate(imp.begin(), imp.end(), 0.0), 1.0, 1e-12);
  EXPECT_EQ(imp[1], 0.0);

  // Single informative feature without bootstrap noise: all importance there.
  RandomForest clean = fit_forest(X, y, 2, {.n_trees = 3, .max_leaves = 8, .bootstrap = false});
  auto ci = feature_importance(clean);
  EXPECT_DOUBLE_EQ(ci[0], 1.0);
  EXPECT_EQ(ci[2], 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) EXPECT_EQ(clean.predict(X.row(i)), y[i]);
}

TEST(Forest, ColumnPermutationPermutesImportances) {
  Rng rng(13);
  Data d = random_data(rng, 200, 3, 2);
  std::vector<int> perm = {2, 0, 1};  // new column k holds old column perm[k]
  Matrix P(d.X.rows(), 3);
  for (std::size_t i = 0; i < d.X.rows(); ++i)
    for (int k = 0; k < 3; ++k) P.at(i, k) = d.X.at(i, perm[k]);
  ForestParams fp{.n_trees = 5, .max_leaves = 12, .bootstrap = false};
  auto a = feature_importance(fit_forest(d.X, d.y, 2, fp));
  auto b = feature_importance(fit_forest(P, d.y, 2, fp));
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(b[k], a[perm[k]], 1e-12);
}

TEST(Forest, DeterministicUnderSeed) {
  Rng rng(14);
  Data d = random_data(rng, 150, 6, 3);
  ForestParams fp{.n_trees = 8, .max_leaves = 10, .feature_fraction = 0.5, .seed = 5};
  RandomForest a = fit_forest(d.X, d.y, 3, fp);
  RandomForest b = fit_forest(d.X, d.y, 3, fp);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  RandomForest back = RandomForest::from_json(a.to_json());
  EXPECT_EQ(back.to_json().dump(), a.to_json().dump());
}

}  // namespace
}  // namespace symgraph
