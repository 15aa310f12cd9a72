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

#include "symgraph/synthetic.h"

#include <algorithm>
#include <set>

namespace symgraph {

namespace {

constexpr int kBa2MotifsBase = 20;
constexpr int kMultiShapesTotal = 40;
constexpr int kBaShapesBase = 300;
constexpr int kBaShapesAttach = 5;
constexpr int kBaShapesHouses = 80;
constexpr int kBaShapesPerturbations = 70;
constexpr int kTreeGridHeight = 8;
constexpr int kTreeGridGrids = 80;
constexpr double kNodeTrainFraction = 0.8;

// Appends `m` to the edge list with node offset `offset` and a bridge from
// its anchor to `base_node`. Returns the offset of the motif's first node.
int plant(std::vector<Edge>& edges, int& node_count, const Motif& m, NodeId base_node) {
  const int offset = node_count;
  for (const Edge& e : m.edges) edges.push_back({e.u + offset, e.v + offset});
  edges.push_back({base_node, m.anchor + offset});
  node_count += m.node_count;
  return offset;
}

Graph constant_features(int n, std::vector<Edge> edges) {
  return Graph::unlabeled(n, std::move(edges));
}

FeatureSchema constant_schema() {
  FeatureSchema s;
  s.discrete_arities = {1};
  return s;
}

NodeTask finish_node_task(std::string name, int n, std::vector<Edge> edges,
                          std::vector<int> labels, std::uint64_t seed) {
  NodeTask t;
  t.name = std::move(name);
  t.schema = constant_schema();
  t.graph = constant_features(n, std::move(edges));
  t.node_labels = std::move(labels);
  SplitIndices split = stratified_split(t.node_labels, kNodeTrainFraction, mix_seed(seed, 0x5EED));
  t.train_nodes = std::move(split.train);
  t.test_nodes = std::move(split.test);
  t.validate();
  return t;
}

}  // namespace

const char* motif_name(MotifKind kind) {
  switch (kind) {
    case MotifKind::kHouse:
      return "house";
    case MotifKind::kFiveCycle:
      return "five_cycle";
    case MotifKind::kGrid3x3:
      return "grid";
    case MotifKind::kWheel:
      return "wheel";
  }
  return "unknown";
}

Motif make_motif(MotifKind kind) {
  Motif m;
  switch (kind) {
    case MotifKind::kHouse:
      m.node_count = 5;
      m.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
      m.anchor = 0;
      break;
    case MotifKind::kFiveCycle:
      m.node_count = 5;
      m.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
      m.anchor = 0;
      break;
    case MotifKind::kWheel:
      m.node_count = 6;
      for (int i = 1; i <= 5; ++i) {
        m.edges.push_back({0, i});
        m.edges.push_back({i, i % 5 + 1});
      }
      m.anchor = 1;
      break;
    case MotifKind::kGrid3x3:
      m.node_count = 9;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          int v = 3 * r + c;
          if (c < 2) m.edges.push_back({v, v + 1});
          if (r < 2) m.edges.push_back({v, v + 3});
        }
      }
      m.anchor = 0;
      break;
  }
  return m;
}

std::vector<Edge> barabasi_albert(int n, int m, Rng& rng) {
  if (m < 1 || n < m + 1) throw InputError("BA graph needs m >= 1 and n >= m + 1");
  std::vector<Edge> edges;
  // Each node appears once per incident edge, so uniform draws from this
  // list are degree-proportional.
  std::vector<NodeId> endpoints;
  for (int i = 1; i <= m; ++i) {
    edges.push_back({0, i});
    endpoints.push_back(0);
    endpoints.push_back(i);
  }
  for (int v = m + 1; v < n; ++v) {
    std::vector<NodeId> targets;
    while (static_cast<int>(targets.size()) < m) {
      NodeId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

PlantedGraphs gen_ba2motifs(std::uint64_t seed, int num_graphs) {
  if (num_graphs < 2) throw InputError("need at least two graphs");
  PlantedGraphs out;
  out.data.name = "Ba2Motifs";
  out.data.schema = constant_schema();
  out.data.graphs.resize(num_graphs);
  out.data.labels.resize(num_graphs);
  out.motifs.resize(num_graphs);
  parallel_for(num_graphs, [&](std::size_t i) {
    Rng rng(mix_seed(seed, i));
    const int label = static_cast<int>(i % 2);
    const MotifKind kind = label == 0 ? MotifKind::kHouse : MotifKind::kFiveCycle;
    std::vector<Edge> edges = barabasi_albert(kBa2MotifsBase, 1, rng);
    int n = kBa2MotifsBase;
    plant(edges, n, make_motif(kind), static_cast<NodeId>(rng.below(kBa2MotifsBase)));
    out.data.graphs[i] = constant_features(n, std::move(edges));
    out.data.labels[i] = label;
    out.motifs[i] = {kind};
  });
  out.data.validate();
  return out;
}

int multishapes_rule(const std::vector<MotifKind>& motifs) {
  std::set<MotifKind> kinds(motifs.begin(), motifs.end());
  bool h = kinds.count(MotifKind::kHouse) > 0;
  bool w = kinds.count(MotifKind::kWheel) > 0;
  bool g = kinds.count(MotifKind::kGrid3x3) > 0;
  return ((h && w) || (h && g) || (w && g)) ? 1 : 0;
}

PlantedGraphs gen_bamultishapes(std::uint64_t seed, int num_graphs) {
  if (num_graphs < 2) throw InputError("need at least two graphs");
  using K = MotifKind;
  const std::vector<std::vector<K>> class0 = {{}, {K::kHouse}, {K::kWheel}, {K::kGrid3x3}};
  const std::vector<std::vector<K>> class1 = {
      {K::kHouse, K::kWheel}, {K::kHouse, K::kGrid3x3}, {K::kWheel, K::kGrid3x3}};
  PlantedGraphs out;
  out.data.name = "BAMultiShapes";
  out.data.schema = constant_schema();
  out.data.graphs.resize(num_graphs);
  out.data.labels.resize(num_graphs);
  out.motifs.resize(num_graphs);
  parallel_for(num_graphs, [&](std::size_t i) {
    Rng rng(mix_seed(seed, i));
    const int label = static_cast<int>(i % 2);
    const std::size_t k = i / 2;
    const std::vector<K>& kinds = label == 0 ? class0[k % class0.size()] : class1[k % class1.size()];
    int motif_nodes = 0;
    for (K kind : kinds) motif_nodes += make_motif(kind).node_count;
    const int base = kMultiShapesTotal - motif_nodes;
    std::vector<Edge> edges = barabasi_albert(base, 1, rng);
    int n = base;
    for (K kind : kinds) {
      plant(edges, n, make_motif(kind), static_cast<NodeId>(rng.below(base)));
    }
    out.data.graphs[i] = constant_features(n, std::move(edges));
    out.data.labels[i] = multishapes_rule(kinds);
    SYMGRAPH_CHECK(out.data.labels[i] == label, "multishapes class disagrees with its rule");
    out.motifs[i] = kinds;
  });
  out.data.validate();
  return out;
}

NodeTask gen_bashapes(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges = barabasi_albert(kBaShapesBase, kBaShapesAttach, rng);
  int n = kBaShapesBase;
  std::vector<int> labels(kBaShapesBase, 0);
  const Motif house = make_motif(MotifKind::kHouse);
  const int role[5] = {3, 3, 2, 2, 1};  // bottom, bottom, middle, middle, top
  for (int h = 0; h < kBaShapesHouses; ++h) {
    plant(edges, n, house, static_cast<NodeId>(rng.below(kBaShapesBase)));
    for (int r : role) labels.push_back(r);
  }
  std::set<Edge> present(edges.begin(), edges.end());
  int added = 0;
  while (added < kBaShapesPerturbations) {
    NodeId a = static_cast<NodeId>(rng.below(kBaShapesBase));
    NodeId b = static_cast<NodeId>(rng.below(kBaShapesBase));
    if (a == b) continue;
    Edge e{std::min(a, b), std::max(a, b)};
    if (!present.insert(e).second) continue;
    edges.push_back(e);
    ++added;
  }
  return finish_node_task("BaShapes", n, std::move(edges), std::move(labels), seed);
}

NodeTask gen_treegrid(std::uint64_t seed) {
  Rng rng(seed);
  const int tree_nodes = (1 << (kTreeGridHeight + 1)) - 1;
  std::vector<Edge> edges;
  for (int v = 1; v < tree_nodes; ++v) edges.push_back({(v - 1) / 2, v});
  int n = tree_nodes;
  std::vector<int> labels(tree_nodes, 0);
  std::vector<NodeId> hosts(tree_nodes);
  for (int i = 0; i < tree_nodes; ++i) hosts[i] = i;
  rng.shuffle(hosts);
  const Motif grid = make_motif(MotifKind::kGrid3x3);
  // corner 1, edge 2, center 3 in row-major order
  const int role[9] = {1, 2, 1, 2, 3, 2, 1, 2, 1};
  for (int k = 0; k < kTreeGridGrids; ++k) {
    plant(edges, n, grid, hosts[k]);
    for (int r : role) labels.push_back(r);
  }
  return finish_node_task("TreeGrid", n, std::move(edges), std::move(labels), seed);
}

std::vector<std::string> synthetic_dataset_names() {
  return {"Ba2Motifs", "BAMultiShapes", "BaShapes", "TreeGrid"};
}

bool is_node_dataset(const std::string& name) {
  return name == "BaShapes" || name == "TreeGrid";
}

int default_hops(const std::string& name) { return name == "TreeGrid" ? 2 : 1; }

}  // namespace symgraph
