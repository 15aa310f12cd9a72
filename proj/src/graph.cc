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

#include "symgraph/graph.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>

namespace symgraph {

void FeatureSchema::validate() const {
  for (int a : discrete_arities) {
    if (a < 1) throw InputError("discrete feature arity must be >= 1");
  }
  if (continuous_count < 0) throw InputError("negative continuous_count");
  if (edge_label_arity < 0) throw InputError("negative edge_label_arity");
}

Graph::Graph(int node_count, std::vector<Edge> edges, int discrete_width,
             std::vector<int> discrete, int continuous_width,
             std::vector<double> continuous, std::vector<int> edge_labels)
    : node_count_(node_count),
      discrete_width_(discrete_width),
      discrete_(std::move(discrete)),
      continuous_width_(continuous_width),
      continuous_(std::move(continuous)) {
  if (node_count < 0) throw InputError("negative node count");
  if (discrete_.size() != static_cast<std::size_t>(node_count) * discrete_width) {
    throw InputError("discrete feature array has the wrong size");
  }
  if (continuous_.size() !=
      static_cast<std::size_t>(node_count) * continuous_width) {
    throw InputError("continuous feature array has the wrong size");
  }
  if (!edge_labels.empty() && edge_labels.size() != edges.size()) {
    throw InputError("edge label count does not match edge count");
  }
  // Normalize and sort edges, carrying labels along.
  std::vector<std::pair<Edge, int>> tagged;
  tagged.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge e = edges[i];
    if (e.u == e.v) throw InputError("self loop on node " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count) {
      throw InputError("edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    tagged.emplace_back(e, edge_labels.empty() ? 0 : edge_labels[i]);
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < tagged.size(); ++i) {
    if (tagged[i].first == tagged[i - 1].first) {
      throw InputError("duplicate edge " + std::to_string(tagged[i].first.u) +
                       "-" + std::to_string(tagged[i].first.v));
    }
  }
  edges_.reserve(tagged.size());
  for (const auto& [e, label] : tagged) {
    edges_.push_back(e);
    if (!edge_labels.empty()) edge_labels_.push_back(label);
  }
  adjacency_.assign(node_count, {});
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    adjacency_[edges_[i].u].push_back({edges_[i].v, i});
    adjacency_[edges_[i].v].push_back({edges_[i].u, i});
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

Graph Graph::unlabeled(int node_count, std::vector<Edge> edges) {
  return Graph(node_count, std::move(edges), 1,
               std::vector<int>(static_cast<std::size_t>(node_count), 0), 0, {});
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(
      adj.begin(), adj.end(), b,
      [](const Neighbor& n, NodeId target) { return n.node < target; });
  return it != adj.end() && it->node == b;
}

Graph Graph::permuted(std::span<const int> perm) const {
  SYMGRAPH_CHECK(perm.size() == static_cast<std::size_t>(node_count_),
                 "permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const Edge& e : edges_) edges.push_back({perm[e.u], perm[e.v]});
  std::vector<int> discrete(discrete_.size());
  std::vector<double> continuous(continuous_.size());
  for (int v = 0; v < node_count_; ++v) {
    std::copy_n(discrete_.begin() + static_cast<std::ptrdiff_t>(v) * discrete_width_,
                discrete_width_,
                discrete.begin() + static_cast<std::ptrdiff_t>(perm[v]) * discrete_width_);
    std::copy_n(
        continuous_.begin() + static_cast<std::ptrdiff_t>(v) * continuous_width_,
        continuous_width_,
        continuous.begin() + static_cast<std::ptrdiff_t>(perm[v]) * continuous_width_);
  }
  return Graph(node_count_, std::move(edges), discrete_width_, std::move(discrete),
               continuous_width_, std::move(continuous), edge_labels_);
}

bool Graph::operator==(const Graph& other) const {
  return node_count_ == other.node_count_ && edges_ == other.edges_ &&
         discrete_width_ == other.discrete_width_ &&
         discrete_ == other.discrete_ &&
         continuous_width_ == other.continuous_width_ &&
         continuous_ == other.continuous_ && edge_labels_ == other.edge_labels_;
}

int GraphDataset::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

namespace {

void check_graph_schema(const Graph& g, const FeatureSchema& schema,
                        const std::string& where) {
  if (g.discrete_width() != schema.discrete_count() ||
      g.continuous_width() != schema.continuous_count) {
    throw InputError(where + ": feature widths do not match the schema");
  }
  for (int v = 0; v < g.node_count(); ++v) {
    auto d = g.discrete(v);
    for (int c = 0; c < schema.discrete_count(); ++c) {
      if (d[c] < 0 || d[c] >= schema.discrete_arities[c]) {
        throw InputError(where + ": discrete value out of range");
      }
    }
  }
  if (schema.has_edge_labels()) {
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edge_label(e) < 0 || g.edge_label(e) >= schema.edge_label_arity) {
        throw InputError(where + ": edge label out of range");
      }
    }
  }
}

}  // namespace

void GraphDataset::validate() const {
  schema.validate();
  if (labels.size() != graphs.size()) {
    throw InputError("label count does not match graph count");
  }
  if (graphs.empty()) throw InputError("dataset has no graphs");
  for (int y : labels) {
    if (y < 0) throw InputError("negative class label");
  }
  const int c = num_classes();
  if (c < 2) throw InputError("dataset needs at least two classes");
  std::vector<bool> seen(c, false);
  for (int y : labels) seen[y] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("class labels are not contiguous");
  }
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].node_count() == 0) {
      throw InputError("graph " + std::to_string(i) + " has no nodes");
    }
    check_graph_schema(graphs[i], schema, "graph " + std::to_string(i));
  }
}

GraphDataset GraphDataset::subset(std::span<const int> indices) const {
  GraphDataset out;
  out.name = name;
  out.schema = schema;
  out.graphs.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (int i : indices) {
    out.graphs.push_back(graphs.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

int NodeTask::num_classes() const {
  if (node_labels.empty()) return 0;
  return *std::max_element(node_labels.begin(), node_labels.end()) + 1;
}

void NodeTask::validate() const {
  schema.validate();
  const int n = graph.node_count();
  if (static_cast<int>(node_labels.size()) != n) {
    throw InputError("node label count does not match node count");
  }
  std::vector<int> mark(n, 0);
  for (int v : train_nodes) {
    if (v < 0 || v >= n) throw InputError("train node out of range");
    mark[v] |= 1;
  }
  for (int v : test_nodes) {
    if (v < 0 || v >= n) throw InputError("test node out of range");
    if (mark[v] & 1) throw InputError("train and test masks overlap");
    mark[v] |= 2;
  }
  check_graph_schema(graph, schema, "node task graph");
}

std::vector<int> bfs_distances(const Graph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (const Neighbor& n : g.neighbors(u)) {
      if (dist[n.node] < 0) {
        dist[n.node] = dist[u] + 1;
        queue.push_back(n.node);
      }
    }
  }
  return dist;
}

namespace {

Subgraph induced(const Graph& g, std::vector<NodeId> nodes) {
  std::vector<int> local(g.node_count(), -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) local[nodes[i]] = i;
  std::vector<Edge> edges;
  std::vector<int> labels;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    for (const Neighbor& n : g.neighbors(nodes[i])) {
      const int j = local[n.node];
      if (j > i) {
        edges.push_back({i, j});
        if (g.has_edge_labels()) labels.push_back(g.edge_label(n.edge));
      }
    }
  }
  std::vector<int> discrete;
  std::vector<double> continuous;
  discrete.reserve(nodes.size() * g.discrete_width());
  continuous.reserve(nodes.size() * g.continuous_width());
  for (NodeId v : nodes) {
    auto d = g.discrete(v);
    discrete.insert(discrete.end(), d.begin(), d.end());
    auto c = g.continuous(v);
    continuous.insert(continuous.end(), c.begin(), c.end());
  }
  Subgraph s;
  s.local = Graph(static_cast<int>(nodes.size()), std::move(edges),
                  g.discrete_width(), std::move(discrete), g.continuous_width(),
                  std::move(continuous), std::move(labels));
  s.parent_nodes = std::move(nodes);
  s.root = 0;
  return s;
}

}  // namespace

Subgraph ego_subgraph(const Graph& g, NodeId v, int hops) {
  if (hops < 1) throw InputError("ego_subgraph needs hops >= 1");
  if (v < 0 || v >= g.node_count()) throw InputError("ego_subgraph: bad node");
  // Bounded BFS; only touches the neighborhood.
  std::vector<NodeId> frontier{v};
  std::vector<NodeId> others;
  std::vector<char> seen(g.node_count(), 0);
  seen[v] = 1;
  for (int d = 0; d < hops && !frontier.empty(); ++d) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (const Neighbor& n : g.neighbors(u)) {
        if (!seen[n.node]) {
          seen[n.node] = 1;
          next.push_back(n.node);
          others.push_back(n.node);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(others.begin(), others.end());
  std::vector<NodeId> nodes{v};
  nodes.insert(nodes.end(), others.begin(), others.end());
  return induced(g, std::move(nodes));
}

Subgraph as_subgraph(const Graph& g, NodeId root) {
  std::vector<NodeId> nodes{root};
  for (int v = 0; v < g.node_count(); ++v) {
    if (v != root) nodes.push_back(v);
  }
  return induced(g, std::move(nodes));
}

SplitIndices stratified_split(std::span<const int> labels, double train_fraction,
                              std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InputError("train_fraction must lie strictly between 0 and 1");
  }
  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    by_class[labels[i]].push_back(i);
  }
  Rng rng(seed);
  SplitIndices out;
  for (auto& [label, members] : by_class) {
    const int n = static_cast<int>(members.size());
    if (n < 2) {
      throw InputError("class " + std::to_string(label) +
                       " has fewer than 2 members; cannot stratify");
    }
    rng.shuffle(members);
    int n_train = static_cast<int>(std::lround(train_fraction * n));
    n_train = std::clamp(n_train, 1, n - 1);
    out.train.insert(out.train.end(), members.begin(), members.begin() + n_train);
    out.test.insert(out.test.end(), members.begin() + n_train, members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<GraphDataset, GraphDataset> split_dataset(const GraphDataset& data,
                                                    double train_fraction,
                                                    std::uint64_t seed) {
  SplitIndices idx = stratified_split(data.labels, train_fraction, seed);
  return {data.subset(idx.train), data.subset(idx.test)};
}

}  // namespace symgraph
