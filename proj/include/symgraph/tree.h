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

// Classification trees grown leaf-wise (best gain first), with minimal
// cost-complexity pruning, nested pruning by undoing splits, cached
// leaf-assignment tables, and a bagged forest.
//
// Splits send rows with value <= threshold to the left child. Thresholds are
// midpoints between adjacent distinct values. Equal gains go to the lower
// feature index, then the lower threshold.

#ifndef SYMGRAPH_TREE_H_
#define SYMGRAPH_TREE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "symgraph/common.h"

namespace symgraph {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_id = -1;                  // dense, left to right; leaves only
  std::vector<double> class_counts;  // training rows reaching this node
  double impurity = 0.0;             // Gini
  double gain = 0.0;                 // weighted impurity decrease of the split

  bool is_leaf() const { return feature < 0; }
  double samples() const;
  int majority() const;  // lowest class index on ties
  bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;

  int num_classes() const { return num_classes_; }
  int num_features() const { return num_features_; }
  int leaf_count() const { return leaf_count_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  // Internal node ids in the order their splits were applied.
  const std::vector<int>& growth_trace() const { return trace_; }

  int leaf_of(std::span<const double> x) const;
  int predict(std::span<const double> x) const;
  // Node id of the leaf with the given leaf id.
  int leaf_node(int leaf_id) const;
  // Majority class of every leaf, indexed by leaf id.
  std::vector<int> leaf_classes() const;

  // Total gain per feature (unnormalized).
  std::vector<double> split_gains() const;

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

  bool operator==(const DecisionTree&) const = default;

  // Builds a tree from raw parts. Validates the structure and renumbers
  // nodes in preorder with leaf ids assigned left to right.
  static DecisionTree assemble(int num_classes, int num_features, std::vector<TreeNode> nodes,
                               std::vector<int> trace);

 private:
  int num_classes_ = 0;
  int num_features_ = 0;
  int leaf_count_ = 0;
  std::vector<TreeNode> nodes_;  // node 0 is the root
  std::vector<int> trace_;
};

struct TreeParams {
  int max_leaves = 16;
  double ccp_alpha = 0.0;
  std::uint64_t seed = 0;
  // Fraction of features drawn (without replacement) per split search;
  // 1.0 uses every feature.
  double feature_fraction = 1.0;
};

// Throws InputError on empty X, |y| != rows, labels outside
// [0, num_classes), max_leaves < 1 or ccp_alpha < 0.
DecisionTree fit_tree_leafwise(const Matrix& X, std::span<const int> y, int num_classes,
                               const TreeParams& params);

// Same, on a multiset of row indices (bootstrap samples).
DecisionTree fit_tree_on_rows(const Matrix& X, std::span<const int> y, int num_classes,
                              std::span<const int> rows, const TreeParams& params);

// Minimal cost-complexity pruning (weakest link first) with cost
// R(t) = (n_t / n) * gini(t).
DecisionTree cost_complexity_prune(const DecisionTree& t, double ccp_alpha);

// Undoes splits in reverse growth order until `target` leaves remain.
DecisionTree prune_to_leaves(const DecisionTree& t, int target);

// table[i][lambda - 1] = leaf id of row i in prune_to_leaves(master,
// min(lambda, leaves)) for lambda in 1..cap.
class LookupTable {
 public:
  LookupTable() = default;
  LookupTable(std::size_t rows, int cap) : rows_(rows), cap_(cap), cells_(rows * cap, 0) {}

  std::size_t rows() const { return rows_; }
  int cap() const { return cap_; }
  int at(std::size_t row, int lambda) const { return cells_[row * cap_ + (lambda - 1)]; }
  int& at(std::size_t row, int lambda) { return cells_[row * cap_ + (lambda - 1)]; }

 private:
  std::size_t rows_ = 0;
  int cap_ = 0;
  std::vector<int> cells_;
};

LookupTable build_lookup_table(const DecisionTree& master, const Matrix& X, int cap);

struct PathLiteral {
  int feature = 0;
  bool greater = false;  // false: x <= threshold, true: x > threshold
  double threshold = 0.0;
  bool operator==(const PathLiteral&) const = default;
};

struct LeafPath {
  int leaf_id = 0;
  std::vector<PathLiteral> literals;
  int predicted_class = 0;
  std::vector<double> class_counts;
};

std::vector<LeafPath> extract_paths(const DecisionTree& t);

bool path_accepts(const LeafPath& path, std::span<const double> x);

// ---------------------------------------------------------------------------

struct ForestParams {
  int n_trees = 100;
  int max_leaves = 48;
  double ccp_alpha = 0.0;
  double feature_fraction = 1.0;
  bool bootstrap = true;
  std::uint64_t seed = 0;
};

class RandomForest {
 public:
  RandomForest() = default;
  RandomForest(std::vector<DecisionTree> trees, std::vector<std::uint64_t> seeds,
               double feature_fraction);

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<std::uint64_t>& seeds() const { return seeds_; }
  double feature_fraction() const { return feature_fraction_; }

  // Majority vote; ties go to the lowest class index.
  int predict(std::span<const double> x) const;

  nlohmann::json to_json() const;
  static RandomForest from_json(const nlohmann::json& j);

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::uint64_t> seeds_;
  double feature_fraction_ = 1.0;
};

RandomForest fit_forest(const Matrix& X, std::span<const int> y, int num_classes,
                        const ForestParams& params);

// Mean over trees with at least one split of each tree's normalized gain
// vector. Sums to 1 when any split exists, otherwise all zeros.
std::vector<double> feature_importance(const RandomForest& f);
std::vector<double> feature_importance(const DecisionTree& t);

int vote(std::span<const int> predictions, int num_classes);

}  // namespace symgraph

#endif  // SYMGRAPH_TREE_H_
