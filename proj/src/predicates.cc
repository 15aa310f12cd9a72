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

#include "symgraph/predicates.h"

#include <algorithm>
#include <atomic>

namespace symgraph {

namespace {

std::atomic<std::uint64_t> g_local_fits{0};

std::vector<double> local_features(const Subgraph& ego, const FeatureSchema& schema,
                                   const EncoderConfig& config) {
  if (config.encoding == LocalEncoding::kHopShells) {
    return hop_distance_feature_vector(ego, schema);
  }
  return orbit_feature_vector(ego, stable_orbit_decomposition(ego, config.hash), schema);
}

// Layout text, slot names and drawing for the first ego seen with a hash.
void describe_group(HashGroup& group, const Subgraph& ego, const FeatureSchema& schema,
                    const EncoderConfig& config) {
  Representative& rep = group.representative;
  rep.node_count = ego.local.node_count();
  rep.edges = ego.local.edges();
  rep.node_group.assign(rep.node_count, -1);
  rep.edge_group.assign(rep.edges.size(), -1);
  if (config.encoding == LocalEncoding::kHopShells) {
    std::vector<int> dist = bfs_distances(ego.local, ego.root);
    rep.node_group = dist;
    int max_d = 0;
    for (int d : dist) max_d = std::max(max_d, d);
    group.layout = "hops:" + std::to_string(max_d);
    group.slot_names = hop_slot_names(ego, schema);
    return;
  }
  OrbitDecomposition d = stable_orbit_decomposition(ego, config.hash);
  group.layout = d.layout_signature();
  group.slot_names = orbit_slot_names(d, schema);
  int k = 0;
  for (int cls : d.node_orbits) {
    for (NodeId v : d.partition.classes[cls]) rep.node_group[v] = k;
    ++k;
  }
  for (const auto& members : d.edge_orbits) {
    for (int e : members) rep.edge_group[e] = k;
    ++k;
  }
}

DecisionTree fit_master(const Matrix& X, const std::vector<int>& y, int num_classes,
                        const BankParams& params, std::uint64_t stream) {
  ++g_local_fits;
  if (X.cols() == 0) {
    TreeNode leaf;
    leaf.class_counts.assign(num_classes, 0.0);
    for (int label : y) leaf.class_counts[label] += 1.0;
    return DecisionTree::assemble(num_classes, 0, {leaf}, {});
  }
  TreeParams tp;
  tp.max_leaves = params.max_leaves_cap;
  tp.ccp_alpha = params.ccp_alpha;
  tp.seed = mix_seed(params.seed, stream);
  return fit_tree_leafwise(X, y, num_classes, tp);
}

}  // namespace

const char* local_encoding_name(LocalEncoding e) {
  return e == LocalEncoding::kOrbits ? "orbits" : "hop_shells";
}

LocalEncoding local_encoding_from_name(std::string_view name) {
  if (name == "orbits") return LocalEncoding::kOrbits;
  if (name == "hop_shells") return LocalEncoding::kHopShells;
  throw InputError("unknown local encoding: " + std::string(name));
}

nlohmann::json EncoderConfig::to_json() const {
  return {{"hops", hops},
          {"hash_mode", hash_mode_name(hash.mode)},
          {"wl_iterations", hash.wl_iterations},
          {"canonical_size_limit", hash.canonical_size_limit},
          {"rooted", hash.rooted},
          {"node_features", hash.node_features},
          {"edge_labels", hash.edge_labels},
          {"encoding", local_encoding_name(encoding)}};
}

EncoderConfig EncoderConfig::from_json(const nlohmann::json& j) {
  EncoderConfig c;
  c.hops = j.at("hops").get<int>();
  c.hash.mode = hash_mode_from_name(j.at("hash_mode").get<std::string>());
  c.hash.wl_iterations = j.at("wl_iterations").get<int>();
  c.hash.canonical_size_limit = j.at("canonical_size_limit").get<int>();
  c.hash.rooted = j.at("rooted").get<bool>();
  c.hash.node_features = j.at("node_features").get<bool>();
  c.hash.edge_labels = j.at("edge_labels").get<bool>();
  c.encoding = local_encoding_from_name(j.at("encoding").get<std::string>());
  c.hash.validate();
  if (c.hops < 1) throw InputError("hops must be >= 1");
  return c;
}

EncodedNode encode_node(const Graph& g, NodeId v, const FeatureSchema& schema,
                        const EncoderConfig& config) {
  Subgraph ego = ego_subgraph(g, v, config.hops);
  return {subgraph_hash(ego, config.hash), local_features(ego, schema, config)};
}

std::vector<EncodedNode> encode_graph(const Graph& g, const FeatureSchema& schema,
                                      const EncoderConfig& config) {
  std::vector<EncodedNode> out;
  out.reserve(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) out.push_back(encode_node(g, v, schema, config));
  return out;
}

nlohmann::json Representative::to_json() const {
  nlohmann::json edge_list = nlohmann::json::array();
  for (const Edge& e : edges) edge_list.push_back({e.u, e.v});
  return {{"nodes", node_count},
          {"edges", edge_list},
          {"node_group", node_group},
          {"edge_group", edge_group}};
}

Representative Representative::from_json(const nlohmann::json& j) {
  Representative r;
  r.node_count = j.at("nodes").get<int>();
  for (const auto& e : j.at("edges")) r.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  r.node_group = j.at("node_group").get<std::vector<int>>();
  r.edge_group = j.at("edge_group").get<std::vector<int>>();
  if (static_cast<int>(r.node_group.size()) != r.node_count ||
      r.edge_group.size() != r.edges.size()) {
    throw InputError("representative group lists do not match its size");
  }
  return r;
}

std::optional<int> PredicateBank::find(const StructHash& hash) const {
  auto it = index_.find(hash);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int PredicateBank::effective_leaves(int group, int lambda) const {
  return std::min(lambda, groups_[group].master.leaf_count());
}

PredicateBank PredicateBank::from_groups(EncoderConfig encoder, FeatureSchema schema, int cap,
                                         int num_classes, std::vector<HashGroup> groups) {
  PredicateBank b;
  b.encoder_ = std::move(encoder);
  b.schema_ = std::move(schema);
  b.cap_ = cap;
  b.num_classes_ = num_classes;
  b.groups_ = std::move(groups);
  for (std::size_t k = 0; k < b.groups_.size(); ++k) {
    if (k > 0 && !(b.groups_[k - 1].hash < b.groups_[k].hash)) {
      throw InputError("hash groups are not in ascending digest order");
    }
    b.index_.emplace(b.groups_[k].hash, static_cast<int>(k));
  }
  return b;
}

PredicateBank build_predicate_bank(const GraphDataset& train, const EncoderConfig& encoder,
                                   const BankParams& params) {
  if (train.size() == 0) throw InputError("empty training set");
  train.validate();
  encoder.hash.validate();
  if (encoder.hops < 1) throw InputError("hops must be >= 1");
  if (params.max_leaves_cap < 1) throw InputError("max leaves cap must be >= 1");

  std::vector<std::vector<EncodedNode>> encoded(train.size());
  parallel_for(train.size(), [&](std::size_t i) {
    encoded[i] = encode_graph(train.graphs[i], train.schema, encoder);
  });

  PredicateBank b;
  b.encoder_ = encoder;
  b.schema_ = train.schema;
  b.cap_ = params.max_leaves_cap;
  b.num_classes_ = train.num_classes();

  // First occurrence of each hash, then digest order.
  std::map<StructHash, std::pair<int, int>> first_seen;
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (std::size_t v = 0; v < encoded[i].size(); ++v) {
      first_seen.try_emplace(encoded[i][v].hash, static_cast<int>(i), static_cast<int>(v));
    }
  }
  for (const auto& [hash, where] : first_seen) {
    b.index_.emplace(hash, static_cast<int>(b.groups_.size()));
    HashGroup group;
    group.hash = hash;
    b.groups_.push_back(std::move(group));
  }
  const std::size_t K = b.groups_.size();
  parallel_for(K, [&](std::size_t k) {
    auto [gi, v] = first_seen.at(b.groups_[k].hash);
    describe_group(b.groups_[k], ego_subgraph(train.graphs[gi], v, encoder.hops), train.schema,
                   encoder);
  });

  b.features_.resize(K);
  std::vector<std::vector<int>> targets(K);
  b.train_rows_.resize(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (EncodedNode& node : encoded[i]) {
      const int k = b.index_.at(node.hash);
      Matrix& X = b.features_[k];
      if (X.rows() == 0) X = Matrix(0, node.features.size());
      SYMGRAPH_CHECK(X.cols() == node.features.size(), "hash group with two feature widths");
      b.train_rows_[i].emplace_back(k, static_cast<int>(X.rows()));
      X.append_row(node.features);
      targets[k].push_back(train.labels[i]);
    }
  }

  b.tables_.resize(K);
  parallel_for(K, [&](std::size_t k) {
    HashGroup& group = b.groups_[k];
    group.support = targets[k].size();
    group.master = fit_master(b.features_[k], targets[k], b.num_classes_, params, k);
    b.tables_[k] = build_lookup_table(group.master, b.features_[k], b.cap_);
  });
  return b;
}

std::uint64_t local_tree_fit_count() { return g_local_fits.load(); }

Vocabulary build_vocabulary(const PredicateBank& bank, const Genome& genome) {
  if (genome.size() != bank.group_count()) {
    throw InputError("genome length " + std::to_string(genome.size()) + " does not match " +
                     std::to_string(bank.group_count()) + " hash groups");
  }
  Vocabulary v;
  v.offsets_.reserve(genome.size());
  v.sizes_.reserve(genome.size());
  for (std::size_t k = 0; k < genome.size(); ++k) {
    if (genome[k] < 1 || genome[k] > bank.max_leaves_cap()) {
      throw InputError("genome entry outside 1.." + std::to_string(bank.max_leaves_cap()));
    }
    const int leaves = bank.effective_leaves(static_cast<int>(k), genome[k]);
    v.genome_.push_back(leaves);
    v.offsets_.push_back(static_cast<int>(v.predicates_.size()));
    v.sizes_.push_back(leaves);
    for (int q = 0; q < leaves; ++q) {
      v.predicates_.push_back({bank.groups()[k].hash, static_cast<int>(k), q});
    }
  }
  return v;
}

std::vector<DecisionTree> active_trees(const PredicateBank& bank, const Genome& genome) {
  Vocabulary vocab = build_vocabulary(bank, genome);
  std::vector<DecisionTree> trees(bank.group_count());
  parallel_for(trees.size(), [&](std::size_t k) {
    trees[k] = prune_to_leaves(bank.groups()[k].master, vocab.genome()[k]);
  });
  return trees;
}

int eval_predicate(const NodeContext& v, const Predicate& p) {
  return v.hash == p.hash && v.state == p.state ? 1 : 0;
}

CountVector count_vector_cached(const PredicateBank& bank, const Vocabulary& vocab,
                                std::size_t graph) {
  if (graph >= bank.train_graph_count()) throw InputError("training graph index out of range");
  CountVector out;
  out.counts.assign(vocab.size(), 0);
  const auto& rows = bank.train_rows(graph);
  out.total_nodes = static_cast<int>(rows.size());
  out.fired.reserve(rows.size());
  for (auto [k, row] : rows) {
    const int j = vocab.index(k, bank.table(k).at(row, vocab.genome()[k]));
    ++out.counts[j];
    out.fired.push_back(j);
  }
  return out;
}

CountVector count_vector_live(const PredicateBank& bank, const Vocabulary& vocab,
                              const std::vector<DecisionTree>& trees, const Graph& g) {
  SYMGRAPH_CHECK(trees.size() == bank.group_count(), "one active tree per hash group");
  CountVector out;
  out.counts.assign(vocab.size(), 0);
  out.total_nodes = g.node_count();
  out.fired.reserve(g.node_count());
  for (const EncodedNode& node : encode_graph(g, bank.schema(), bank.encoder())) {
    std::optional<int> k = bank.find(node.hash);
    if (!k) {
      ++out.unseen_nodes;
      out.fired.push_back(-1);
      continue;
    }
    const DecisionTree& tree = trees[*k];
    SYMGRAPH_CHECK(static_cast<std::size_t>(tree.num_features()) == node.features.size(),
                   "feature width differs from the hash group's tree");
    const int j = vocab.index(*k, tree.leaf_of(node.features));
    ++out.counts[j];
    out.fired.push_back(j);
  }
  return out;
}

Matrix count_matrix_cached(const PredicateBank& bank, const Vocabulary& vocab) {
  Matrix m(bank.train_graph_count(), vocab.size());
  parallel_for(m.rows(), [&](std::size_t i) {
    const auto& rows = bank.train_rows(i);
    for (auto [k, row] : rows) {
      m.at(i, vocab.index(k, bank.table(k).at(row, vocab.genome()[k]))) += 1.0;
    }
  });
  return m;
}

Matrix count_matrix_live(const PredicateBank& bank, const Vocabulary& vocab,
                         const std::vector<DecisionTree>& trees, const GraphDataset& data,
                         int* unseen, int* total) {
  Matrix m(data.size(), vocab.size());
  std::vector<int> unseen_per(data.size(), 0);
  parallel_for(data.size(), [&](std::size_t i) {
    CountVector c = count_vector_live(bank, vocab, trees, data.graphs[i]);
    for (std::size_t j = 0; j < c.counts.size(); ++j) m.at(i, j) = c.counts[j];
    unseen_per[i] = c.unseen_nodes;
  });
  if (unseen) {
    for (int u : unseen_per) *unseen += u;
  }
  if (total) {
    for (const Graph& g : data.graphs) *total += g.node_count();
  }
  return m;
}

std::vector<int> binarize(const std::vector<int>& counts) {
  std::vector<int> out(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) out[j] = counts[j] > 0 ? 1 : 0;
  return out;
}

Matrix binarize(const Matrix& counts) {
  Matrix out(counts.rows(), counts.cols());
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    for (std::size_t j = 0; j < counts.cols(); ++j) out.at(i, j) = counts.at(i, j) > 0 ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace symgraph
