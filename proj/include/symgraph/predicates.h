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

// Structure-aware predicates and predicate count vectors.
//
// Every node is summarized by the hash of its L-hop ego subgraph and the
// orbit feature vector Z_v of that subgraph. Nodes sharing a hash form a
// hash group with one master tree, fitted on Z_v with each node inheriting
// its graph's label, and a lookup table of leaf states at every pruning
// level. A genome picks an active leaf count per group; the predicates are
// the (hash, leaf) pairs of the pruned trees.
//
// Hash groups are ordered by digest once, when the bank is built. Predicate
// indices run over groups in that order and over leaf ids inside a group.

#ifndef SYMGRAPH_PREDICATES_H_
#define SYMGRAPH_PREDICATES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symgraph/graph.h"
#include "symgraph/hashing.h"
#include "symgraph/orbits.h"
#include "symgraph/tree.h"

namespace symgraph {

// Active leaf count per hash group, each in 1..max_leaves_cap.
using Genome = std::vector<int>;

enum class LocalEncoding { kOrbits, kHopShells };

const char* local_encoding_name(LocalEncoding e);
LocalEncoding local_encoding_from_name(std::string_view name);

struct EncoderConfig {
  int hops = 1;
  HashConfig hash;
  LocalEncoding encoding = LocalEncoding::kOrbits;

  nlohmann::json to_json() const;
  static EncoderConfig from_json(const nlohmann::json& j);
};

struct EncodedNode {
  StructHash hash;
  std::vector<double> features;  // Z_v
};

EncodedNode encode_node(const Graph& g, NodeId v, const FeatureSchema& schema,
                        const EncoderConfig& config);
std::vector<EncodedNode> encode_graph(const Graph& g, const FeatureSchema& schema,
                                      const EncoderConfig& config);

// One ego subgraph of a hash, kept for rendering: local edges and the group
// (orbit or hop shell) of every local node and edge, -1 when none.
struct Representative {
  int node_count = 0;
  std::vector<Edge> edges;
  std::vector<int> node_group;
  std::vector<int> edge_group;

  nlohmann::json to_json() const;
  static Representative from_json(const nlohmann::json& j);
};

struct HashGroup {
  StructHash hash;
  std::string layout;                   // layout signature of the local encoding
  std::vector<std::string> slot_names;  // one per Z_v slot
  Representative representative;
  DecisionTree master;
  std::size_t support = 0;              // training nodes carrying this hash
};

struct BankParams {
  int max_leaves_cap = 16;  // Lambda_max
  double ccp_alpha = 0.0;   // applied to every master tree after growth
  std::uint64_t seed = 0;
};

// Hash groups of a training set with per-node cached leaf states.
class PredicateBank {
 public:
  const EncoderConfig& encoder() const { return encoder_; }
  const FeatureSchema& schema() const { return schema_; }
  int max_leaves_cap() const { return cap_; }
  int num_classes() const { return num_classes_; }
  const std::vector<HashGroup>& groups() const { return groups_; }
  std::size_t group_count() const { return groups_.size(); }
  std::optional<int> find(const StructHash& hash) const;

  // Training access. Rows of a group are its nodes in (graph, node) order.
  std::size_t train_graph_count() const { return train_rows_.size(); }
  const std::vector<std::pair<int, int>>& train_rows(std::size_t graph) const {
    return train_rows_[graph];
  }
  const LookupTable& table(int group) const { return tables_[group]; }
  const Matrix& features(int group) const { return features_[group]; }

  // Master leaf count capped by lambda.
  int effective_leaves(int group, int lambda) const;

  // A bank without training caches, e.g. one loaded from a model file.
  static PredicateBank from_groups(EncoderConfig encoder, FeatureSchema schema, int cap,
                                   int num_classes, std::vector<HashGroup> groups);

  friend PredicateBank build_predicate_bank(const GraphDataset& train,
                                            const EncoderConfig& encoder,
                                            const BankParams& params);

 private:
  EncoderConfig encoder_;
  FeatureSchema schema_;
  int cap_ = 1;
  int num_classes_ = 0;
  std::vector<HashGroup> groups_;
  std::map<StructHash, int> index_;
  std::vector<std::vector<std::pair<int, int>>> train_rows_;  // (group, row) per node
  std::vector<LookupTable> tables_;
  std::vector<Matrix> features_;
};

// Encodes every node, groups by hash, fits one master tree per group and
// caches its lookup table. Throws InputError on an empty or invalid dataset.
PredicateBank build_predicate_bank(const GraphDataset& train, const EncoderConfig& encoder,
                                   const BankParams& params);

// Number of master (local) tree fits performed by this process.
std::uint64_t local_tree_fit_count();

struct Predicate {
  StructHash hash;
  int group = 0;
  int state = 0;  // leaf id in the group's active tree
  bool operator==(const Predicate&) const = default;
};

class Vocabulary {
 public:
  const Genome& genome() const { return genome_; }
  const std::vector<Predicate>& predicates() const { return predicates_; }
  std::size_t size() const { return predicates_.size(); }
  int group_offset(int group) const { return offsets_[group]; }
  int group_size(int group) const { return sizes_[group]; }
  int index(int group, int state) const { return offsets_[group] + state; }

  friend Vocabulary build_vocabulary(const PredicateBank& bank, const Genome& genome);

 private:
  Genome genome_;  // effective leaf counts
  std::vector<Predicate> predicates_;
  std::vector<int> offsets_;
  std::vector<int> sizes_;
};

// Throws InputError when the genome length differs from the group count or
// an entry is outside 1..cap.
Vocabulary build_vocabulary(const PredicateBank& bank, const Genome& genome);

// Master trees pruned to the genome, one per group.
std::vector<DecisionTree> active_trees(const PredicateBank& bank, const Genome& genome);

struct NodeContext {
  StructHash hash;
  int state = -1;  // leaf of Z_v in the active tree of that hash
};

int eval_predicate(const NodeContext& v, const Predicate& p);

struct CountVector {
  std::vector<int> counts;
  int unseen_nodes = 0;  // nodes whose hash is not in the vocabulary
  int total_nodes = 0;
  // Predicate index per node, -1 for unseen hashes.
  std::vector<int> fired;
};

// Training graph i, by table lookup only.
CountVector count_vector_cached(const PredicateBank& bank, const Vocabulary& vocab,
                                std::size_t graph);

// Any graph, by encoding its nodes and evaluating the active trees.
CountVector count_vector_live(const PredicateBank& bank, const Vocabulary& vocab,
                              const std::vector<DecisionTree>& trees, const Graph& g);

// Rows = training graphs, built purely from lookup tables.
Matrix count_matrix_cached(const PredicateBank& bank, const Vocabulary& vocab);

// Rows = graphs of `data`, by live evaluation. Adds the unseen node total to
// *unseen and the node total to *total when given.
Matrix count_matrix_live(const PredicateBank& bank, const Vocabulary& vocab,
                         const std::vector<DecisionTree>& trees, const GraphDataset& data,
                         int* unseen = nullptr, int* total = nullptr);

std::vector<int> binarize(const std::vector<int>& counts);
Matrix binarize(const Matrix& counts);

}  // namespace symgraph

#endif  // SYMGRAPH_PREDICATES_H_
