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

// Graph data model: attributed undirected graphs, datasets, node tasks and
// rooted ego subgraphs.

#ifndef SYMGRAPH_GRAPH_H_
#define SYMGRAPH_GRAPH_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symgraph/common.h"

namespace symgraph {

using NodeId = int;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

struct Neighbor {
  NodeId node;
  int edge;  // index into Graph::edges()
};

// Column layout shared by every graph of a dataset.
struct FeatureSchema {
  std::vector<int> discrete_arities;  // category count per discrete column
  int continuous_count = 0;
  int edge_label_arity = 0;  // 0 when the dataset has no edge labels

  int discrete_count() const { return static_cast<int>(discrete_arities.size()); }
  bool has_edge_labels() const { return edge_label_arity > 0; }

  // Throws InputError when an arity is < 1.
  void validate() const;

  bool operator==(const FeatureSchema&) const = default;
};

// Undirected simple graph with per-node categorical and real features and
// optional categorical edge labels. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Edges are normalized to u < v. Throws InputError on self loops, duplicate
  // edges, out-of-range endpoints, or feature arrays of the wrong size.
  // `discrete` is row-major node_count x discrete_width, `continuous` is
  // node_count x continuous_width; `edge_labels` is empty or one per edge.
  Graph(int node_count, std::vector<Edge> edges, int discrete_width,
        std::vector<int> discrete, int continuous_width,
        std::vector<double> continuous, std::vector<int> edge_labels = {});

  // Structure-only convenience: a single constant discrete column.
  static Graph unlabeled(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(NodeId a, NodeId b) const;

  int discrete_width() const { return discrete_width_; }
  int continuous_width() const { return continuous_width_; }
  std::span<const int> discrete(NodeId v) const {
    return {discrete_.data() + static_cast<std::size_t>(v) * discrete_width_,
            static_cast<std::size_t>(discrete_width_)};
  }
  std::span<const double> continuous(NodeId v) const {
    return {continuous_.data() + static_cast<std::size_t>(v) * continuous_width_,
            static_cast<std::size_t>(continuous_width_)};
  }
  bool has_edge_labels() const { return !edge_labels_.empty(); }
  int edge_label(int edge) const {
    return edge_labels_.empty() ? 0 : edge_labels_[edge];
  }

  const std::vector<int>& discrete_values() const { return discrete_; }
  const std::vector<double>& continuous_values() const { return continuous_; }
  const std::vector<int>& edge_labels() const { return edge_labels_; }

  // Returns the graph with node i renamed to perm[i].
  Graph permuted(std::span<const int> perm) const;

  bool operator==(const Graph& other) const;

 private:
  int node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  int discrete_width_ = 0;
  std::vector<int> discrete_;
  int continuous_width_ = 0;
  std::vector<double> continuous_;
  std::vector<int> edge_labels_;
};

struct GraphDataset {
  std::string name;
  FeatureSchema schema;
  std::vector<Graph> graphs;
  std::vector<int> labels;

  std::size_t size() const { return graphs.size(); }
  int num_classes() const;
  // Throws InputError if labels are not in {0..C-1} with C >= 2, sizes
  // disagree, or a graph does not match the schema.
  void validate() const;
  GraphDataset subset(std::span<const int> indices) const;
};

// A single graph with per-node targets and a train/test node partition.
struct NodeTask {
  std::string name;
  FeatureSchema schema;
  Graph graph;
  std::vector<int> node_labels;
  std::vector<int> train_nodes;
  std::vector<int> test_nodes;

  int num_classes() const;
  void validate() const;
};

// Induced subgraph re-indexed so that the center is local node 0.
struct Subgraph {
  std::vector<NodeId> parent_nodes;  // root first, then ascending
  Graph local;
  NodeId root = 0;
};

// Induced subgraph on every node within `hops` of v.
Subgraph ego_subgraph(const Graph& g, NodeId v, int hops);

// The whole graph as a subgraph rooted at `root`.
Subgraph as_subgraph(const Graph& g, NodeId root);

// Hop distance of every node from `source`; -1 when unreachable.
std::vector<int> bfs_distances(const Graph& g, NodeId source);

struct SplitIndices {
  std::vector<int> train;
  std::vector<int> test;
};

// Stratified, seeded partition of item indices by class label. Each class
// contributes round(train_fraction * n_c) items to train, clamped so both
// sides receive at least one. Throws InputError if a class has fewer than
// two members or the fraction is outside (0, 1).
SplitIndices stratified_split(std::span<const int> labels, double train_fraction,
                              std::uint64_t seed);

std::pair<GraphDataset, GraphDataset> split_dataset(const GraphDataset& data,
                                                    double train_fraction,
                                                    std::uint64_t seed);

}  // namespace symgraph

#endif  // SYMGRAPH_GRAPH_H_
