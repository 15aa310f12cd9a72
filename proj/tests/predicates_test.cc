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

#include <set>

#include "oracles.h"
#include "symgraph/predicates.h"
#include "symgraph/synthetic.h"

namespace symgraph {
namespace {

FeatureSchema discrete_schema(int arity) {
  FeatureSchema s;
  s.discrete_arities = {arity};
  return s;
}

GraphDataset make_dataset(std::vector<Graph> graphs, std::vector<int> labels, int arity = 1) {
  GraphDataset d;
  d.name = "test";
  d.schema = discrete_schema(arity);
  d.graphs = std::move(graphs);
  d.labels = std::move(labels);
  return d;
}

// k disjoint copies of a motif.
Graph copies(MotifKind kind, int k) {
  Motif m = make_motif(kind);
  std::vector<Edge> edges;
  for (int c = 0; c < k; ++c) {
    for (Edge e : m.edges) edges.push_back({e.u + c * m.node_count, e.v + c * m.node_count});
  }
  return Graph::unlabeled(k * m.node_count, edges);
}

GraphDataset random_dataset(std::uint64_t seed, int graphs, int values) {
  Rng rng(seed);
  std::vector<Graph> gs;
  std::vector<int> labels;
  for (int i = 0; i < graphs; ++i) {
    gs.push_back(oracle::random_graph(4 + static_cast<int>(rng.below(5)), 0.4, rng, values));
    labels.push_back(i % 2);
  }
  return make_dataset(std::move(gs), std::move(labels), values);
}

Genome random_genome(std::size_t K, int cap, Rng& rng) {
  Genome g(K);
  for (int& x : g) x = static_cast<int>(rng.uniform_int(1, cap));
  return g;
}

TEST(EvalPredicate, StructureAndFeatureConditions) {
  StructHash h1{{1, 2}, HashMode::kCanonical};
  StructHash h2{{1, 3}, HashMode::kCanonical};
  Predicate p{h1, 0, 2};
  EXPECT_EQ(eval_predicate({h1, 2}, p), 1);
  EXPECT_EQ(eval_predicate({h1, 1}, p), 0);
  EXPECT_EQ(eval_predicate({h2, 2}, p), 0);
}

TEST(EvalPredicate, ExactlyOnePredicateFiresPerKnownNode) {
  GraphDataset data = random_dataset(1, 30, 3);
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 4});
  Genome genome(bank.group_count(), 4);
  Vocabulary vocab = build_vocabulary(bank, genome);
  auto trees = active_trees(bank, genome);
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto encoded = encode_graph(data.graphs[i], data.schema, bank.encoder());
    for (const auto& node : encoded) {
      int k = *bank.find(node.hash);
      NodeContext ctx{node.hash, trees[k].leaf_of(node.features)};
      int fired = 0;
      for (const auto& p : vocab.predicates()) fired += eval_predicate(ctx, p);
      EXPECT_EQ(fired, 1);
    }
  }
}

TEST(Vocabulary, OrderedByDigestThenState) {
  GraphDataset data = random_dataset(2, 30, 3);
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 5});
  Vocabulary vocab = build_vocabulary(bank, Genome(bank.group_count(), 5));
  for (std::size_t j = 1; j < vocab.size(); ++j) {
    const auto& a = vocab.predicates()[j - 1];
    const auto& b = vocab.predicates()[j];
    EXPECT_TRUE(a.hash < b.hash || (a.hash == b.hash && a.state + 1 == b.state));
  }
  EXPECT_THROW(build_vocabulary(bank, Genome(bank.group_count() + 1, 1)), InputError);
  EXPECT_THROW(build_vocabulary(bank, Genome(bank.group_count(), 6)), InputError);
  EXPECT_THROW(build_vocabulary(bank, Genome(bank.group_count(), 0)), InputError);
}

TEST(CountVector, AllOnesIsHashHistogram) {
  GraphDataset data = random_dataset(3, 20, 2);
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 8});
  Vocabulary vocab = build_vocabulary(bank, Genome(bank.group_count(), 1));
  EXPECT_EQ(vocab.size(), bank.group_count());
  Matrix m = count_matrix_cached(bank, vocab);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::vector<double> expect(bank.group_count(), 0.0);
    for (const auto& node : encode_graph(data.graphs[i], data.schema, bank.encoder())) {
      expect[*bank.find(node.hash)] += 1.0;
    }
    auto row = m.row(i);
    EXPECT_EQ(std::vector<double>(row.begin(), row.end()), expect);
  }
}

TEST(CountVector, LookupEqualsLiveEvaluationForEveryGenome) {
  GraphDataset data = random_dataset(4, 40, 3);
  const int cap = 6;
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = cap});
  std::vector<Genome> genomes;
  for (int l = 1; l <= cap; ++l) genomes.push_back(Genome(bank.group_count(), l));
  Rng rng(9);
  for (int r = 0; r < 10; ++r) genomes.push_back(random_genome(bank.group_count(), cap, rng));
  for (const Genome& genome : genomes) {
    Vocabulary vocab = build_vocabulary(bank, genome);
    auto trees = active_trees(bank, genome);
    EXPECT_EQ(count_matrix_cached(bank, vocab), count_matrix_live(bank, vocab, trees, data));
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(count_vector_cached(bank, vocab, i).fired,
                count_vector_live(bank, vocab, trees, data.graphs[i]).fired);
    }
  }
}

TEST(CountVector, GroupSumsDoNotDependOnGenome) {
  GraphDataset data = random_dataset(5, 40, 3);
  const int cap = 6;
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = cap});
  Vocabulary base = build_vocabulary(bank, Genome(bank.group_count(), 1));
  Matrix hist = count_matrix_cached(bank, base);
  Rng rng(10);
  for (int r = 0; r < 20; ++r) {
    Vocabulary vocab = build_vocabulary(bank, random_genome(bank.group_count(), cap, rng));
    Matrix m = count_matrix_cached(bank, vocab);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t k = 0; k < bank.group_count(); ++k) {
        double sum = 0;
        for (int s = 0; s < vocab.group_size(k); ++s) sum += m.at(i, vocab.index(k, s));
        EXPECT_EQ(sum, hist.at(i, k));
      }
    }
  }
}

TEST(CountVector, IncrementingOneGeneSplitsOneColumn) {
  GraphDataset data = random_dataset(6, 40, 3);
  const int cap = 8;
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = cap});
  int splits_seen = 0;
  for (std::size_t k = 0; k < bank.group_count(); ++k) {
    for (int l = 1; l < cap; ++l) {
      Genome before(bank.group_count(), 2), after;
      before[k] = l;
      after = before;
      after[k] = l + 1;
      Vocabulary va = build_vocabulary(bank, before), vb = build_vocabulary(bank, after);
      Matrix ma = count_matrix_cached(bank, va), mb = count_matrix_cached(bank, vb);
      const int grown = vb.group_size(k) - va.group_size(k);
      ASSERT_GE(grown, 0);
      ASSERT_LE(grown, 1);
      // Other groups are unchanged.
      for (std::size_t o = 0; o < bank.group_count(); ++o) {
        if (o == k) continue;
        for (int s = 0; s < va.group_size(o); ++s) {
          for (std::size_t i = 0; i < ma.rows(); ++i) {
            ASSERT_EQ(ma.at(i, va.index(o, s)), mb.at(i, vb.index(o, s)));
          }
        }
      }
      if (grown == 0) continue;
      ++splits_seen;
      // Every node keeps its state or moves from one old state to one of two
      // new states; the mapping old -> new is a refinement.
      std::map<int, std::set<int>> children;
      std::map<int, int> parent;
      for (std::size_t i = 0; i < data.size(); ++i) {
        auto fa = count_vector_cached(bank, va, i).fired;
        auto fb = count_vector_cached(bank, vb, i).fired;
        for (std::size_t v = 0; v < fa.size(); ++v) {
          if (bank.train_rows(i)[v].first != static_cast<int>(k)) continue;
          children[fa[v]].insert(fb[v]);
          auto [it, fresh] = parent.emplace(fb[v], fa[v]);
          ASSERT_EQ(it->second, fa[v]);
        }
      }
      int split_columns = 0;
      for (const auto& [old, kids] : children) {
        ASSERT_LE(kids.size(), 2u);
        split_columns += kids.size() == 2;
      }
      EXPECT_EQ(split_columns, 1);
    }
  }
  EXPECT_GT(splits_seen, 0);
}

TEST(CountVector, UnseenHashesAreDroppedAndCounted) {
  GraphDataset data = make_dataset({copies(MotifKind::kHouse, 1), copies(MotifKind::kFiveCycle, 1)},
                                   {0, 1});
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 2});
  Genome genome(bank.group_count(), 1);
  Vocabulary vocab = build_vocabulary(bank, genome);
  auto trees = active_trees(bank, genome);
  Graph wheel = copies(MotifKind::kWheel, 1);
  CountVector c = count_vector_live(bank, vocab, trees, wheel);
  EXPECT_EQ(c.counts, std::vector<int>(vocab.size(), 0));
  EXPECT_EQ(c.unseen_nodes, wheel.node_count());
  EXPECT_EQ(c.fired, std::vector<int>(wheel.node_count(), -1));
}

TEST(CountVector, NodePermutationInvariance) {
  GraphDataset data = random_dataset(7, 30, 3);
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 4});
  Genome genome(bank.group_count(), 4);
  Vocabulary vocab = build_vocabulary(bank, genome);
  auto trees = active_trees(bank, genome);
  Rng rng(11);
  for (const Graph& g : data.graphs) {
    Graph p = g.permuted(oracle::random_permutation(g.node_count(), rng));
    EXPECT_EQ(count_vector_live(bank, vocab, trees, g).counts,
              count_vector_live(bank, vocab, trees, p).counts);
  }
}

TEST(CountVector, PermutedTrainingSetGivesSameBank) {
  GraphDataset data = random_dataset(8, 30, 3);
  GraphDataset permuted = data;
  Rng rng(12);
  for (Graph& g : permuted.graphs) g = g.permuted(oracle::random_permutation(g.node_count(), rng));
  PredicateBank a = build_predicate_bank(data, {}, {.max_leaves_cap = 6});
  PredicateBank b = build_predicate_bank(permuted, {}, {.max_leaves_cap = 6});
  ASSERT_EQ(a.group_count(), b.group_count());
  for (std::size_t k = 0; k < a.group_count(); ++k) {
    EXPECT_EQ(a.groups()[k].hash, b.groups()[k].hash);
    EXPECT_TRUE(a.groups()[k].master == b.groups()[k].master);
  }
  Genome genome(a.group_count(), 6);
  EXPECT_EQ(count_matrix_cached(a, build_vocabulary(a, genome)),
            count_matrix_cached(b, build_vocabulary(b, genome)));
}

TEST(Binarize, Examples) {
  EXPECT_EQ(binarize(std::vector<int>{0, 3, 1}), (std::vector<int>{0, 1, 1}));
  auto once = binarize(std::vector<int>{4, 0, 2, 0});
  EXPECT_EQ(binarize(once), once);
  Matrix m = Matrix::from_rows({{0, 2}, {5, 0}});
  EXPECT_EQ(binarize(m), Matrix::from_rows({{0, 1}, {1, 0}}));
}

// One motif copy against k copies: counts scale by k while every pooled
// indicator summary collides.
TEST(Expressiveness, MultiplicityNeedsCounts) {
  for (MotifKind kind : {MotifKind::kHouse, MotifKind::kWheel, MotifKind::kGrid3x3}) {
    const int k = 3;
    Graph one = copies(kind, 1), many = copies(kind, k);
    GraphDataset data = make_dataset({one, many}, {0, 1});
    PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 4});
    Genome genome(bank.group_count(), 4);
    Vocabulary vocab = build_vocabulary(bank, genome);
    CountVector c1 = count_vector_cached(bank, vocab, 0);
    CountVector ck = count_vector_cached(bank, vocab, 1);
    EXPECT_NE(c1.counts, ck.counts);
    for (std::size_t j = 0; j < vocab.size(); ++j) EXPECT_EQ(ck.counts[j], k * c1.counts[j]);

    auto pool = [&](const CountVector& c, int n) {
      std::vector<double> mean(vocab.size(), 0.0), max(vocab.size(), 0.0), min(vocab.size(), 1.0);
      for (int j = 0; j < static_cast<int>(vocab.size()); ++j) {
        for (int f : c.fired) {
          double x = f == j ? 1.0 : 0.0;
          mean[j] += x / n;
          max[j] = std::max(max[j], x);
          min[j] = std::min(min[j], x);
        }
      }
      return std::tuple(mean, max, min);
    };
    auto [mean1, max1, min1] = pool(c1, one.node_count());
    auto [meank, maxk, mink] = pool(ck, many.node_count());
    for (std::size_t j = 0; j < vocab.size(); ++j) EXPECT_NEAR(mean1[j], meank[j], 1e-12);
    EXPECT_EQ(max1, maxk);
    EXPECT_EQ(min1, mink);
    EXPECT_EQ(binarize(c1.counts), binarize(ck.counts));
  }
}

// Structurally different regular neighborhoods get different predicates
// even though every node sees the same summed neighbor features.
TEST(Expressiveness, RegularPairGetsDistinctPredicates) {
  std::vector<Edge> c6;
  for (int i = 0; i < 6; ++i) c6.push_back({i, (i + 1) % 6});
  Graph hexagon = Graph::unlabeled(6, c6);
  Graph triangles = Graph::unlabeled(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  GraphDataset data = make_dataset({hexagon, triangles}, {0, 1});
  for (int hops : {1, 2}) {
    EncoderConfig enc;
    enc.hops = hops;
    PredicateBank bank = build_predicate_bank(data, enc, {.max_leaves_cap = 2});
    Vocabulary vocab = build_vocabulary(bank, Genome(bank.group_count(), 2));
    std::set<int> a, b;
    for (int f : count_vector_cached(bank, vocab, 0).fired) a.insert(f);
    for (int f : count_vector_cached(bank, vocab, 1).fired) b.insert(f);
    for (int f : a) EXPECT_FALSE(b.count(f)) << hops;
  }
  for (const Graph* g : {&hexagon, &triangles}) {
    for (NodeId v = 0; v < 6; ++v) {
      int sum = 0;
      for (auto nb : g->neighbors(v)) sum += g->discrete(nb.node)[0] + 1;
      EXPECT_EQ(sum, 2);
    }
  }
}

// Same hash, features swapped between orbits: the master tree separates
// the two roots into different predicates.
TEST(Expressiveness, SwappedOrbitFeaturesGetDistinctPredicates) {
  auto swapped = [](int on_a, int on_b) {
    return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}}, 1, {0, on_a, on_a, on_b, on_b}, 0,
                 {});
  };
  Graph g1 = swapped(1, 2), g2 = swapped(2, 1);
  GraphDataset data = make_dataset({g1, g2}, {0, 1}, 3);
  EncoderConfig enc;
  enc.hops = 1;
  PredicateBank bank = build_predicate_bank(data, enc, {.max_leaves_cap = 4});
  Vocabulary vocab = build_vocabulary(bank, Genome(bank.group_count(), 4));
  int root1 = count_vector_cached(bank, vocab, 0).fired[0];
  int root2 = count_vector_cached(bank, vocab, 1).fired[0];
  EXPECT_EQ(vocab.predicates()[root1].hash, vocab.predicates()[root2].hash);
  EXPECT_NE(root1, root2);

  // The hop-shell encoding cannot tell the roots apart.
  enc.encoding = LocalEncoding::kHopShells;
  PredicateBank shells = build_predicate_bank(data, enc, {.max_leaves_cap = 4});
  Vocabulary sv = build_vocabulary(shells, Genome(shells.group_count(), 4));
  EXPECT_EQ(count_vector_cached(shells, sv, 0).fired[0], count_vector_cached(shells, sv, 1).fired[0]);
}

TEST(PredicateBank, NoRefitsAfterBuild) {
  GraphDataset data = random_dataset(13, 30, 3);
  const std::uint64_t before = local_tree_fit_count();
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 5});
  EXPECT_EQ(local_tree_fit_count() - before, bank.group_count());
  const std::uint64_t built = local_tree_fit_count();
  Rng rng(14);
  for (int r = 0; r < 10; ++r) {
    count_matrix_cached(bank, build_vocabulary(bank, random_genome(bank.group_count(), 5, rng)));
  }
  EXPECT_EQ(local_tree_fit_count(), built);
}

TEST(PredicateBank, RepresentativeMatchesLayout) {
  GraphDataset data = gen_ba2motifs(0, 20).data;
  PredicateBank bank = build_predicate_bank(data, {}, {.max_leaves_cap = 2});
  for (const HashGroup& g : bank.groups()) {
    const Representative& r = g.representative;
    EXPECT_EQ(static_cast<int>(r.node_group.size()), r.node_count);
    EXPECT_EQ(r.edge_group.size(), r.edges.size());
    EXPECT_EQ(static_cast<int>(g.slot_names.size()), g.master.num_features());
    Representative back = Representative::from_json(r.to_json());
    EXPECT_EQ(back.edges, r.edges);
    EXPECT_EQ(back.node_group, r.node_group);
  }
}

TEST(PredicateBank, RejectsBadInput) {
  GraphDataset empty = make_dataset({}, {});
  EXPECT_THROW(build_predicate_bank(empty, {}, {}), InputError);
  GraphDataset data = random_dataset(15, 10, 2);
  EncoderConfig enc;
  enc.hops = 0;
  EXPECT_THROW(build_predicate_bank(data, enc, {}), InputError);
  EXPECT_THROW(build_predicate_bank(data, {}, {.max_leaves_cap = 0}), InputError);
}

TEST(EncoderConfig, JsonRoundTrip) {
  EncoderConfig c;
  c.hops = 2;
  c.hash.mode = HashMode::kWl;
  c.encoding = LocalEncoding::kHopShells;
  EncoderConfig back = EncoderConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
}

}  // namespace
}  // namespace symgraph
