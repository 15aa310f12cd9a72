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

#include "oracles.h"
#include "symgraph/orbits.h"

namespace symgraph {
namespace {

FeatureSchema discrete_schema(int arity) {
  FeatureSchema s;
  s.discrete_arities = {arity};
  return s;
}

Graph star(int leaves, std::vector<int> feat = {}) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  if (feat.empty()) feat.assign(leaves + 1, 0);
  return Graph(leaves + 1, e, 1, feat, 0, {});
}

TEST(OrbitDecomposition, StarIsOneEdgeOrbit) {
  Graph g = star(3);
  OrbitDecomposition d = stable_orbit_decomposition(as_subgraph(g, 0));
  EXPECT_EQ(d.partition.size(), 2u);
  EXPECT_TRUE(d.node_orbits.empty());
  ASSERT_EQ(d.edge_orbits.size(), 1u);
  EXPECT_EQ(d.edge_orbits[0].size(), 3u);
}

TEST(OrbitDecomposition, PathRootedAtMiddle) {
  Graph path = Graph::unlabeled(3, {{0, 1}, {1, 2}});
  OrbitDecomposition d = stable_orbit_decomposition(as_subgraph(path, 1));
  EXPECT_TRUE(d.node_orbits.empty());
  ASSERT_EQ(d.edge_orbits.size(), 1u);
  EXPECT_EQ(d.edge_orbits[0].size(), 2u);
  EXPECT_NE(d.edge_keys[0].first, d.edge_keys[0].second);

  HashConfig unrooted;
  unrooted.rooted = false;
  OrbitDecomposition u = stable_orbit_decomposition(as_subgraph(path, 0), unrooted);
  EXPECT_EQ(u.edge_orbits.size(), 1u);
  // Rooted at an end the two edges play different roles.
  OrbitDecomposition end = stable_orbit_decomposition(as_subgraph(path, 0));
  EXPECT_EQ(end.edge_orbits.size(), 2u);
}

TEST(OrbitDecomposition, PathRelabelingKeepsSequence) {
  Graph path = Graph::unlabeled(3, {{0, 1}, {1, 2}});
  std::vector<int> perm = {2, 0, 1};
  Graph moved = path.permuted(perm);
  auto a = stable_orbit_decomposition(as_subgraph(path, 1));
  auto b = stable_orbit_decomposition(as_subgraph(moved, perm[1]));
  EXPECT_EQ(a.layout_signature(), b.layout_signature());
  EXPECT_EQ(a.edge_keys, b.edge_keys);
}

TEST(OrbitDecomposition, IsolatedNodesSurviveFiltering) {
  Graph g(3, {}, 0, {}, 1, {5.0, 1.0, 3.0});
  FeatureSchema schema;
  schema.continuous_count = 1;
  Subgraph s = as_subgraph(g, 0);
  OrbitDecomposition d = stable_orbit_decomposition(s);
  ASSERT_EQ(d.node_orbits.size(), 2u);
  EXPECT_TRUE(d.edge_orbits.empty());
  std::vector<double> z = orbit_feature_vector(s, d, schema);
  ASSERT_EQ(z.size(), 2u);
  // One orbit is the root alone, the other averages 1.0 and 3.0.
  std::multiset<double> values(z.begin(), z.end());
  EXPECT_EQ(values, (std::multiset<double>{2.0, 5.0}));
}

TEST(OrbitFeatureVector, StarLeafHistogram) {
  // Alphabet {C, N, O} = {0, 1, 2}; center N, leaves C, C, O.
  Graph g = star(3, {1, 0, 0, 2});
  FeatureSchema schema = discrete_schema(3);
  Subgraph s = as_subgraph(g, 0);
  OrbitDecomposition d = stable_orbit_decomposition(s);
  std::vector<double> z = orbit_feature_vector(s, d, schema);
  ASSERT_EQ(z.size(), 6u);
  // Pairs involving the N center: (C-N), (N-N), (N-O).
  EXPECT_EQ(z[unordered_pair_index(0, 1, 3)], 2.0);
  EXPECT_EQ(z[unordered_pair_index(1, 1, 3)], 0.0);
  EXPECT_EQ(z[unordered_pair_index(1, 2, 3)], 1.0);
  // The shell encoding keeps the plain leaf histogram.
  std::vector<double> shells = hop_distance_feature_vector(s, schema);
  ASSERT_EQ(shells.size(), 6u);
  EXPECT_EQ(std::vector<double>(shells.begin() + 3, shells.end()),
            (std::vector<double>{2, 0, 1}));
}

TEST(OrbitFeatureVector, ContinuousEndpointMean) {
  Graph g(2, {{0, 1}}, 0, {}, 1, {1.0, 3.0});
  FeatureSchema schema;
  schema.continuous_count = 1;
  Subgraph s = as_subgraph(g, 0);
  auto z = orbit_feature_vector(s, stable_orbit_decomposition(s), schema);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_DOUBLE_EQ(z[0], 2.0);
}

TEST(OrbitFeatureVector, PairIndexIsDense) {
  std::set<int> seen;
  for (int a = 0; a < 5; ++a) {
    for (int b = a; b < 5; ++b) {
      int i = unordered_pair_index(a, b, 5);
      EXPECT_EQ(i, unordered_pair_index(b, a, 5));
      seen.insert(i);
    }
  }
  EXPECT_EQ(seen.size(), 15u);
  EXPECT_EQ(*seen.rbegin(), 14);
}

TEST(OrbitFeatureVector, SlotNamesMatchWidth) {
  FeatureSchema schema;
  schema.discrete_arities = {2};
  schema.continuous_count = 1;
  schema.edge_label_arity = 2;
  Graph g(3, {{0, 1}, {1, 2}}, 1, {0, 1, 0}, 1, {0.5, 1, 2}, {0, 1});
  Subgraph s = as_subgraph(g, 1);
  auto d = stable_orbit_decomposition(s);
  auto names = orbit_slot_names(d, schema);
  EXPECT_EQ(names.size(), orbit_feature_vector(s, d, schema).size());
  FeatureNames fn;
  fn.discrete_values = {{"C", "O"}};
  names = orbit_slot_names(d, schema, fn);
  EXPECT_EQ(names[0], "Orbit 0: #(C-C)");
  EXPECT_EQ(names[3], "Orbit 0: #label=0");
  EXPECT_EQ(names[5], "Orbit 0: mean(x0)");
}

TEST(OrbitFeatureVector, SchemaMismatchThrows) {
  Graph g = star(2, {0, 4, 0});
  Subgraph s = as_subgraph(g, 0);
  auto d = stable_orbit_decomposition(s);
  EXPECT_THROW(orbit_feature_vector(s, d, discrete_schema(3)), InputError);
  FeatureSchema two;
  two.discrete_arities = {5, 5};
  EXPECT_THROW(orbit_feature_vector(s, d, two), InputError);
}

// Root with a triangle orbit {a1, a2} and a pendant orbit {b1, b2}, with
// features alpha and beta placed on the two orbits in either order.
Graph swapped_orbits(int on_a, int on_b) {
  // 0 = root, 1-2 = triangle partners, 3-4 = pendants.
  return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}}, 1, {0, on_a, on_a, on_b, on_b}, 0,
               {});
}

TEST(OrbitFeatureVector, SwappedOrbitFeaturesAreSeparated) {
  const int alpha = 1, beta = 2;
  Graph g1 = swapped_orbits(alpha, beta);
  Graph g2 = swapped_orbits(beta, alpha);
  FeatureSchema schema = discrete_schema(3);
  Subgraph s1 = as_subgraph(g1, 0), s2 = as_subgraph(g2, 0);
  EXPECT_EQ(subgraph_hash(s1, {}), subgraph_hash(s2, {}));

  auto z1 = orbit_feature_vector(s1, stable_orbit_decomposition(s1), schema);
  auto z2 = orbit_feature_vector(s2, stable_orbit_decomposition(s2), schema);
  EXPECT_EQ(z1.size(), z2.size());
  EXPECT_NE(z1, z2);

  // Sum of neighbor features of the root is the same in both graphs.
  auto neighbor_sum = [](const Graph& g) {
    int sum = 0;
    for (auto nb : g.neighbors(0)) sum += g.discrete(nb.node)[0];
    return sum;
  };
  EXPECT_EQ(neighbor_sum(g1), neighbor_sum(g2));

  // Both orbits sit at distance one, so the shell encoding collides.
  EXPECT_EQ(hop_distance_feature_vector(s1, schema), hop_distance_feature_vector(s2, schema));
}

TEST(HopShells, StarAndPath) {
  Graph g = star(3);
  FeatureSchema schema = discrete_schema(1);
  auto shells = hop_distance_feature_vector(as_subgraph(g, 0), schema);
  EXPECT_EQ(shells, (std::vector<double>{1, 3}));

  Graph path = Graph::unlabeled(3, {{0, 1}, {1, 2}});
  auto p = hop_distance_feature_vector(ego_subgraph(path, 0, 2), schema);
  EXPECT_EQ(p, (std::vector<double>{1, 1, 1}));
}

TEST(OrbitProperties, PermutationInvariance) {
  Rng rng(21);
  FeatureSchema schema;
  schema.discrete_arities = {3};
  schema.continuous_count = 2;
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(rng.below(8));
    Graph g = oracle::random_graph(n, 0.4, rng, 3, 2);
    auto perm = oracle::random_permutation(n, rng);
    Graph h = g.permuted(perm);
    NodeId root = static_cast<NodeId>(rng.below(n));
    Subgraph a = as_subgraph(g, root), b = as_subgraph(h, perm[root]);
    auto da = stable_orbit_decomposition(a), db = stable_orbit_decomposition(b);
    ASSERT_EQ(da.layout_signature(), db.layout_signature());
    auto za = orbit_feature_vector(a, da, schema);
    auto zb = orbit_feature_vector(b, db, schema);
    ASSERT_EQ(za.size(), zb.size());
    for (std::size_t i = 0; i < za.size(); ++i) ASSERT_NEAR(za[i], zb[i], 1e-12);
  }
}

TEST(OrbitProperties, EqualHashMeansEqualLayout) {
  Rng rng(8);
  std::map<StructHash, std::string> layout;
  for (int t = 0; t < 60; ++t) {
    Graph g = oracle::random_graph(12, 0.2, rng);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (int hops : {1, 2}) {
        Subgraph s = ego_subgraph(g, v, hops);
        StructHash h = subgraph_hash(s, {});
        std::string sig = stable_orbit_decomposition(s).layout_signature();
        auto [it, inserted] = layout.emplace(h, sig);
        if (!inserted) ASSERT_EQ(it->second, sig);
      }
    }
  }
}

TEST(OrbitProperties, AutomorphismOrbitsInsideColorClasses) {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : oracle::all_graphs(n)) {
      auto exact = oracle::automorphism_orbits(g, 0, {.rooted = true});
      auto d = stable_orbit_decomposition(as_subgraph(g, 0));
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          if (exact[u] == exact[v]) {
            ASSERT_EQ(d.partition.color[u], d.partition.color[v]);
          }
        }
      }
    }
  }
}

// House attached through its bottom-left corner to a short path.
Graph planted_house() {
  // 0..4 house (bottom 0,1; middle 2,3; roof 4), 5..7 path.
  return Graph::unlabeled(8, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}, {0, 5}, {5, 6},
                              {6, 7}});
}

TEST(NodeEncoding, HouseRoofBlock) {
  Graph g = planted_house();
  FeatureSchema schema = discrete_schema(1);
  std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7};
  NodeEncodingRegistry reg = build_node_registry(g, schema, all, 1);
  EXPECT_TRUE(reg.frozen());
  SparseVector z = node_global_encoding(4, g, schema, 1, reg);
  StructHash h = subgraph_hash(ego_subgraph(g, 4, 1), {});
  auto range = reg.find(h);
  ASSERT_TRUE(range.has_value());
  ASSERT_FALSE(z.entries.empty());
  for (auto [i, x] : z.entries) {
    EXPECT_GE(i, range->offset);
    EXPECT_LT(i, range->offset + range->width);
  }
  // The roof's ego is a triangle; its first descriptor flags the center.
  auto dense = z.dense();
  EXPECT_EQ(dense[range->offset], 1.0);
}

TEST(NodeEncoding, IdenticalNeighborhoodsGiveIdenticalVectors) {
  Graph g = planted_house();
  FeatureSchema schema = discrete_schema(1);
  std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7};
  NodeEncodingRegistry reg = build_node_registry(g, schema, all, 1);
  // Node 1 and node 6 both see a rooted path with the root in the middle.
  auto a = node_global_encoding(1, g, schema, 1, reg).dense();
  auto b = node_global_encoding(6, g, schema, 1, reg).dense();
  EXPECT_EQ(a, b);
}

TEST(NodeEncoding, CardinalityAndUnknownFlag) {
  Graph g = star(3);
  FeatureSchema schema = discrete_schema(1);
  std::vector<int> train = {0};
  NodeEncodingRegistry reg = build_node_registry(g, schema, train, 1);
  EXPECT_EQ(reg.hash_count(), 1u);
  auto z = node_global_encoding(0, g, schema, 1, reg).dense();
  // [indicator, cardinality, one-hot mean]
  EXPECT_EQ(z[0], 1.0);
  EXPECT_EQ(z[1], 3.0);
  EXPECT_EQ(z[2], 1.0);
  EXPECT_EQ(z.back(), 0.0);
  auto leaf = node_global_encoding(1, g, schema, 1, reg);
  ASSERT_EQ(leaf.entries.size(), 1u);
  EXPECT_EQ(leaf.entries[0].first, reg.unknown_slot());
}

}  // namespace
}  // namespace symgraph
