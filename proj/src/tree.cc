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

#include "symgraph/tree.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace symgraph {

namespace {

constexpr double kGainEps = 1e-12;
constexpr int kTreeFormatVersion = 1;

double sum_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double gini(const std::vector<double>& counts) {
  double n = sum_of(counts);
  if (n <= 0) return 0.0;
  double s = 0;
  for (double c : counts) s += (c / n) * (c / n);
  return 1.0 - s;
}

// n * gini without the division by n twice.
double weighted_gini(const std::vector<double>& counts, double n) {
  if (n <= 0) return 0.0;
  double s = 0;
  for (double c : counts) s += c * c;
  return n - s / n;
}

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& X, std::span<const int> y, int num_classes, const TreeParams& params)
      : X_(X), y_(y), num_classes_(num_classes), params_(params), rng_(params.seed) {}

  DecisionTree build(std::span<const int> rows) {
    add_node(std::vector<int>(rows.begin(), rows.end()));
    int leaves = 1;
    while (leaves < params_.max_leaves) {
      int best = -1;
      for (std::size_t i = 0; i < open_.size(); ++i) {
        int id = open_[i];
        if (splits_[id].gain <= kGainEps) continue;
        if (best < 0 || splits_[id].gain > splits_[best].gain + kGainEps) best = id;
      }
      if (best < 0) break;
      apply_split(best);
      ++leaves;
    }
    return DecisionTree::assemble(num_classes_, static_cast<int>(X_.cols()), std::move(nodes_),
                                  std::move(trace_));
  }

 private:
  int add_node(std::vector<int> rows) {
    TreeNode node;
    node.class_counts.assign(num_classes_, 0.0);
    for (int r : rows) node.class_counts[y_[r]] += 1.0;
    node.impurity = gini(node.class_counts);
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    splits_.push_back(find_split(rows, nodes_.back()));
    rows_.push_back(std::move(rows));
    // Leaves are kept in creation order, which is ascending node id.
    open_.push_back(id);
    return id;
  }

  std::vector<int> candidate_features() {
    const int nf = static_cast<int>(X_.cols());
    std::vector<int> all(nf);
    std::iota(all.begin(), all.end(), 0);
    if (params_.feature_fraction >= 1.0) return all;
    int k = std::max(1, static_cast<int>(std::ceil(params_.feature_fraction * nf)));
    k = std::min(k, nf);
    for (int i = 0; i < k; ++i) {
      std::swap(all[i], all[i + rng_.below(nf - i)]);
    }
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

  SplitChoice find_split(const std::vector<int>& rows, const TreeNode& node) {
    SplitChoice best;
    std::vector<int> features = candidate_features();
    const double n = static_cast<double>(rows.size());
    if (node.impurity <= 0.0 || rows.size() < 2) return best;
    const double parent = weighted_gini(node.class_counts, n);
    std::vector<std::pair<double, int>> column(rows.size());
    std::vector<double> left(num_classes_), right(num_classes_);
    for (int f : features) {
      double lo = X_.at(rows[0], f), hi = lo;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        double x = X_.at(rows[i], f);
        column[i] = {x, y_[rows[i]]};
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      if (lo == hi) continue;
      std::sort(column.begin(), column.end());
      std::fill(left.begin(), left.end(), 0.0);
      right = node.class_counts;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left[column[i].second] += 1.0;
        right[column[i].second] -= 1.0;
        if (column[i].first == column[i + 1].first) continue;
        double nl = static_cast<double>(i + 1), nr = n - nl;
        double gain = parent - weighted_gini(left, nl) - weighted_gini(right, nr);
        if (gain > best.gain + kGainEps) {
          best.feature = f;
          best.threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  void apply_split(int id) {
    const SplitChoice s = splits_[id];
    std::vector<int> l, r;
    for (int row : rows_[id]) {
      (X_.at(row, s.feature) <= s.threshold ? l : r).push_back(row);
    }
    SYMGRAPH_CHECK(!l.empty() && !r.empty(), "split produced an empty child");
    open_.erase(std::find(open_.begin(), open_.end(), id));
    rows_[id].clear();
    int left = add_node(std::move(l));
    int right = add_node(std::move(r));
    TreeNode& node = nodes_[id];
    node.feature = s.feature;
    node.threshold = s.threshold;
    node.gain = s.gain;
    node.left = left;
    node.right = right;
    trace_.push_back(id);
  }

  const Matrix& X_;
  std::span<const int> y_;
  int num_classes_;
  TreeParams params_;
  Rng rng_;
  std::vector<TreeNode> nodes_;
  std::vector<SplitChoice> splits_;
  std::vector<std::vector<int>> rows_;
  std::vector<int> open_;
  std::vector<int> trace_;
};

void validate_fit_inputs(const Matrix& X, std::span<const int> y, int num_classes,
                         int max_leaves, double ccp_alpha) {
  if (X.rows() == 0) throw InputError("cannot fit a tree on an empty matrix");
  if (y.size() != X.rows()) throw InputError("label count differs from row count");
  if (num_classes < 1) throw InputError("num_classes must be >= 1");
  for (int c : y) {
    if (c < 0 || c >= num_classes) throw InputError("class label out of range");
  }
  if (max_leaves < 1) throw InputError("max_leaves must be >= 1");
  if (ccp_alpha < 0) throw InputError("ccp_alpha must be >= 0");
}

}  // namespace

double TreeNode::samples() const { return sum_of(class_counts); }

int TreeNode::majority() const {
  int best = 0;
  for (int c = 1; c < static_cast<int>(class_counts.size()); ++c) {
    if (class_counts[c] > class_counts[best]) best = c;
  }
  return best;
}

int DecisionTree::leaf_of(std::span<const double> x) const {
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& n = nodes_[id];
    id = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[id].leaf_id;
}

int DecisionTree::predict(std::span<const double> x) const {
  return nodes_[leaf_node(leaf_of(x))].majority();
}

int DecisionTree::leaf_node(int leaf_id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf_id == leaf_id) return static_cast<int>(i);
  }
  throw InvariantError("unknown leaf id " + std::to_string(leaf_id));
}

std::vector<int> DecisionTree::leaf_classes() const {
  std::vector<int> out(leaf_count_);
  for (const auto& n : nodes_) {
    if (n.is_leaf()) out[n.leaf_id] = n.majority();
  }
  return out;
}

std::vector<double> DecisionTree::split_gains() const {
  std::vector<double> g(num_features_, 0.0);
  for (const auto& n : nodes_) {
    if (!n.is_leaf()) g[n.feature] += n.gain;
  }
  return g;
}

DecisionTree DecisionTree::assemble(int num_classes, int num_features,
                                    std::vector<TreeNode> nodes, std::vector<int> trace) {
  SYMGRAPH_CHECK(!nodes.empty(), "tree without nodes");
  DecisionTree t;
  t.num_classes_ = num_classes;
  t.num_features_ = num_features;
  std::vector<int> new_id(nodes.size(), -1);
  std::vector<int> order;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    SYMGRAPH_CHECK(id >= 0 && id < static_cast<int>(nodes.size()), "child index out of range");
    SYMGRAPH_CHECK(new_id[id] < 0, "tree node reachable twice");
    new_id[id] = static_cast<int>(order.size());
    order.push_back(id);
    const TreeNode& n = nodes[id];
    if (!n.is_leaf()) {
      SYMGRAPH_CHECK(n.feature < num_features, "split feature out of range");
      stack.push_back(n.right);
      stack.push_back(n.left);
    }
  }
  int leaf = 0;
  for (int old : order) {
    TreeNode n = nodes[old];
    SYMGRAPH_CHECK(static_cast<int>(n.class_counts.size()) == num_classes,
                   "class count vector has the wrong length");
    if (n.is_leaf()) {
      n.left = n.right = -1;
      n.gain = 0.0;
      n.threshold = 0.0;
      n.leaf_id = leaf++;
    } else {
      n.left = new_id[n.left];
      n.right = new_id[n.right];
      n.leaf_id = -1;
    }
    t.nodes_.push_back(std::move(n));
  }
  t.leaf_count_ = leaf;
  for (int old : trace) {
    if (old < 0 || old >= static_cast<int>(nodes.size())) continue;
    int id = new_id[old];
    if (id >= 0 && !t.nodes_[id].is_leaf()) t.trace_.push_back(id);
  }
  SYMGRAPH_CHECK(static_cast<int>(t.trace_.size()) == t.leaf_count_ - 1,
                 "growth trace does not cover every split");
  return t;
}

nlohmann::json DecisionTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nlohmann::json j;
    j["counts"] = n.class_counts;
    j["impurity"] = n.impurity;
    if (!n.is_leaf()) {
      j["feature"] = n.feature;
      j["threshold"] = n.threshold;
      j["left"] = n.left;
      j["right"] = n.right;
      j["gain"] = n.gain;
    } else {
      j["leaf"] = n.leaf_id;
    }
    nodes.push_back(std::move(j));
  }
  return {{"format", "symgraph-tree"},
          {"version", kTreeFormatVersion},
          {"num_classes", num_classes_},
          {"num_features", num_features_},
          {"nodes", std::move(nodes)},
          {"growth_trace", trace_}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  try {
    if (j.at("version").get<int>() != kTreeFormatVersion) {
      throw InputError("unsupported tree format version");
    }
    std::vector<TreeNode> nodes;
    for (const auto& jn : j.at("nodes")) {
      TreeNode n;
      n.class_counts = jn.at("counts").get<std::vector<double>>();
      n.impurity = jn.at("impurity").get<double>();
      if (jn.contains("feature")) {
        n.feature = jn.at("feature").get<int>();
        n.threshold = jn.at("threshold").get<double>();
        n.left = jn.at("left").get<int>();
        n.right = jn.at("right").get<int>();
        n.gain = jn.at("gain").get<double>();
        if (n.feature < 0) throw InputError("negative split feature");
      }
      nodes.push_back(std::move(n));
    }
    if (nodes.empty()) throw InputError("tree without nodes");
    return assemble(j.at("num_classes").get<int>(), j.at("num_features").get<int>(),
                    std::move(nodes), j.at("growth_trace").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed tree JSON: ") + e.what());
  } catch (const InvariantError& e) {
    throw InputError(std::string("inconsistent tree JSON: ") + e.what());
  }
}

DecisionTree fit_tree_leafwise(const Matrix& X, std::span<const int> y, int num_classes,
                               const TreeParams& params) {
  std::vector<int> rows(X.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return fit_tree_on_rows(X, y, num_classes, rows, params);
}

DecisionTree fit_tree_on_rows(const Matrix& X, std::span<const int> y, int num_classes,
                              std::span<const int> rows, const TreeParams& params) {
  validate_fit_inputs(X, y, num_classes, params.max_leaves, params.ccp_alpha);
  if (rows.empty()) throw InputError("cannot fit a tree on zero rows");
  if (params.feature_fraction <= 0.0 || params.feature_fraction > 1.0) {
    throw InputError("feature_fraction must be in (0, 1]");
  }
  DecisionTree t = TreeBuilder(X, y, num_classes, params).build(rows);
  if (params.ccp_alpha > 0.0) t = cost_complexity_prune(t, params.ccp_alpha);
  return t;
}

DecisionTree cost_complexity_prune(const DecisionTree& t, double ccp_alpha) {
  std::vector<TreeNode> nodes = t.nodes();
  const double total = nodes[0].samples();
  auto cost = [&](const TreeNode& n) { return n.samples() / total * n.impurity; };
  while (!nodes[0].is_leaf()) {
    // Subtree leaf cost and leaf count for every internal node.
    std::vector<double> subtree_cost(nodes.size(), 0.0);
    std::vector<int> subtree_leaves(nodes.size(), 0);
    std::function<void(int)> walk = [&](int id) {
      TreeNode& n = nodes[id];
      if (n.is_leaf()) {
        subtree_cost[id] = cost(n);
        subtree_leaves[id] = 1;
        return;
      }
      walk(n.left);
      walk(n.right);
      subtree_cost[id] = subtree_cost[n.left] + subtree_cost[n.right];
      subtree_leaves[id] = subtree_leaves[n.left] + subtree_leaves[n.right];
    };
    walk(0);
    int weakest = -1;
    double weakest_g = 0.0;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (subtree_leaves[id] < 2) continue;
      double g = (cost(nodes[id]) - subtree_cost[id]) / (subtree_leaves[id] - 1);
      if (weakest < 0 || g < weakest_g - kGainEps) {
        weakest = static_cast<int>(id);
        weakest_g = g;
      }
    }
    if (weakest < 0 || weakest_g > ccp_alpha) break;
    nodes[weakest].feature = -1;
  }
  return DecisionTree::assemble(t.num_classes(), t.num_features(), std::move(nodes),
                                t.growth_trace());
}

DecisionTree prune_to_leaves(const DecisionTree& t, int target) {
  if (target < 1 || target > t.leaf_count()) {
    throw InputError("prune target " + std::to_string(target) + " outside [1, " +
                     std::to_string(t.leaf_count()) + "]");
  }
  std::vector<TreeNode> nodes = t.nodes();
  std::vector<int> trace = t.growth_trace();
  for (int undo = t.leaf_count() - target; undo > 0; --undo) {
    int id = trace.back();
    trace.pop_back();
    SYMGRAPH_CHECK(nodes[nodes[id].left].is_leaf() && nodes[nodes[id].right].is_leaf(),
                   "last split in the growth trace has an internal child");
    nodes[id].feature = -1;
  }
  return DecisionTree::assemble(t.num_classes(), t.num_features(), std::move(nodes),
                                std::move(trace));
}

LookupTable build_lookup_table(const DecisionTree& master, const Matrix& X, int cap) {
  if (cap < 1) throw InputError("lookup cap must be >= 1");
  LookupTable table(X.rows(), cap);
  const int leaves = master.leaf_count();
  for (int lambda = 1; lambda <= cap; ++lambda) {
    if (lambda > leaves) {
      for (std::size_t i = 0; i < X.rows(); ++i) table.at(i, lambda) = table.at(i, leaves);
      continue;
    }
    DecisionTree pruned = prune_to_leaves(master, lambda);
    for (std::size_t i = 0; i < X.rows(); ++i) table.at(i, lambda) = pruned.leaf_of(X.row(i));
  }
  return table;
}

std::vector<LeafPath> extract_paths(const DecisionTree& t) {
  std::vector<LeafPath> out(t.leaf_count());
  std::vector<PathLiteral> current;
  std::function<void(int)> walk = [&](int id) {
    const TreeNode& n = t.nodes()[id];
    if (n.is_leaf()) {
      LeafPath& p = out[n.leaf_id];
      p.leaf_id = n.leaf_id;
      p.literals = current;
      p.predicted_class = n.majority();
      p.class_counts = n.class_counts;
      return;
    }
    current.push_back({n.feature, false, n.threshold});
    walk(n.left);
    current.back().greater = true;
    walk(n.right);
    current.pop_back();
  };
  walk(0);
  return out;
}

bool path_accepts(const LeafPath& path, std::span<const double> x) {
  for (const auto& lit : path.literals) {
    bool le = x[lit.feature] <= lit.threshold;
    if (le == lit.greater) return false;
  }
  return true;
}

int vote(std::span<const int> predictions, int num_classes) {
  std::vector<int> counts(num_classes, 0);
  for (int p : predictions) ++counts[p];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

RandomForest::RandomForest(std::vector<DecisionTree> trees, std::vector<std::uint64_t> seeds,
                           double feature_fraction)
    : trees_(std::move(trees)), seeds_(std::move(seeds)), feature_fraction_(feature_fraction) {
  SYMGRAPH_CHECK(!trees_.empty(), "forest without trees");
  SYMGRAPH_CHECK(trees_.size() == seeds_.size(), "one seed per tree required");
}

int RandomForest::predict(std::span<const double> x) const {
  std::vector<int> preds;
  preds.reserve(trees_.size());
  for (const auto& t : trees_) preds.push_back(t.predict(x));
  return vote(preds, trees_.front().num_classes());
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.to_json());
  return {{"format", "symgraph-forest"},
          {"version", kTreeFormatVersion},
          {"feature_fraction", feature_fraction_},
          {"seeds", seeds_},
          {"trees", std::move(trees)}};
}

RandomForest RandomForest::from_json(const nlohmann::json& j) {
  try {
    std::vector<DecisionTree> trees;
    for (const auto& jt : j.at("trees")) trees.push_back(DecisionTree::from_json(jt));
    if (trees.empty()) throw InputError("forest without trees");
    auto seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (seeds.size() != trees.size()) throw InputError("forest seed count mismatch");
    return RandomForest(std::move(trees), std::move(seeds),
                        j.at("feature_fraction").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed forest JSON: ") + e.what());
  }
}

RandomForest fit_forest(const Matrix& X, std::span<const int> y, int num_classes,
                        const ForestParams& params) {
  validate_fit_inputs(X, y, num_classes, params.max_leaves, params.ccp_alpha);
  if (params.n_trees < 1) throw InputError("n_trees must be >= 1");
  const std::size_t n = X.rows();
  std::vector<std::uint64_t> seeds(params.n_trees);
  for (int i = 0; i < params.n_trees; ++i) seeds[i] = mix_seed(params.seed, i);
  std::vector<DecisionTree> trees(params.n_trees);
  parallel_for(trees.size(), [&](std::size_t i) {
    std::vector<int> rows(n);
    if (params.bootstrap) {
      Rng rng(mix_seed(seeds[i], 0xB007));
      for (auto& r : rows) r = static_cast<int>(rng.below(n));
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    TreeParams tp;
    tp.max_leaves = params.max_leaves;
    tp.ccp_alpha = params.ccp_alpha;
    tp.seed = seeds[i];
    tp.feature_fraction = params.feature_fraction;
    trees[i] = fit_tree_on_rows(X, y, num_classes, rows, tp);
  });
  return RandomForest(std::move(trees), std::move(seeds), params.feature_fraction);
}

std::vector<double> feature_importance(const DecisionTree& t) {
  std::vector<double> g = t.split_gains();
  double total = sum_of(g);
  if (total <= 0) return std::vector<double>(g.size(), 0.0);
  for (auto& x : g) x /= total;
  return g;
}

std::vector<double> feature_importance(const RandomForest& f) {
  std::vector<double> out(f.trees().front().num_features(), 0.0);
  int used = 0;
  for (const auto& t : f.trees()) {
    if (t.leaf_count() < 2) continue;
    auto imp = feature_importance(t);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += imp[i];
    ++used;
  }
  if (used > 0) {
    for (auto& x : out) x /= used;
  }
  return out;
}

}  // namespace symgraph
