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

// End-to-end graph and node classification, rule extraction, predicate
// grounding, ablations and the model file format.
//
// Graph pipeline: hash every node's ego subgraph, fit one master tree per
// hash on Z_v with graph labels, cache lookup tables, pick per-hash leaf
// counts (genetic search or the cap), build predicate count vectors and fit
// the global classifier on them.

#ifndef SYMGRAPH_PIPELINE_H_
#define SYMGRAPH_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symgraph/evolution.h"
#include "symgraph/graph.h"
#include "symgraph/orbits.h"
#include "symgraph/predicates.h"
#include "symgraph/rules.h"
#include "symgraph/tree.h"

namespace symgraph {

enum class ClassifierKind { kTree, kForest };

const char* classifier_name(ClassifierKind kind);  // "dt" or "rf"
ClassifierKind classifier_from_name(std::string_view name);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::kTree;
  int max_leaves = 48;
  double ccp_alpha = 0.001;
  int n_trees = 100;
  // Per-split feature fraction for forests; <= 0 means 1/sqrt(features).
  double feature_fraction = 0.0;
};

// A fitted tree or forest behind one predict().
class Classifier {
 public:
  ClassifierKind kind() const { return kind_; }
  const DecisionTree& tree() const { return tree_; }
  const RandomForest& forest() const { return forest_; }
  int num_features() const;

  int predict(std::span<const double> x) const;
  // Normalized split gain per input.
  std::vector<double> importance() const;

  nlohmann::json to_json() const;
  static Classifier from_json(const nlohmann::json& j);

  static Classifier fit(const Matrix& X, std::span<const int> y, int num_classes,
                        const ClassifierConfig& config, std::uint64_t seed);

 private:
  ClassifierKind kind_ = ClassifierKind::kTree;
  DecisionTree tree_;
  RandomForest forest_;
};

nlohmann::json schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Graph classification.

struct GraphTrainConfig {
  EncoderConfig encoder;
  int max_leaves_cap = 16;
  double master_ccp_alpha = 0.0;
  bool use_ga = true;
  GaParams ga;
  FitnessParams fitness;
  ClassifierConfig classifier;
  bool binary_counts = false;  // classify on presence instead of counts
  std::uint64_t seed = 0;      // every stage derives its stream from this
};

struct GraphPrediction {
  int label = 0;
  CountVector evidence;
  bool fallback = false;  // no known structure, majority class returned
};

class GraphModel {
 public:
  GraphModel(PredicateBank bank, Genome genome, Classifier classifier, bool binary_counts,
             int majority_class);

  const PredicateBank& bank() const { return bank_; }
  const Genome& genome() const { return genome_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<DecisionTree>& active_trees() const { return trees_; }
  const Classifier& classifier() const { return classifier_; }
  bool binary_counts() const { return binary_counts_; }
  int majority_class() const { return majority_; }

  GraphPrediction predict(const Graph& g) const;
  // Classifier inputs for a count vector (binarized when configured).
  std::vector<double> inputs(const CountVector& c) const;

  nlohmann::json to_json() const;
  static GraphModel from_json(const nlohmann::json& j);

 private:
  PredicateBank bank_;
  Genome genome_;
  Vocabulary vocab_;
  std::vector<DecisionTree> trees_;
  Classifier classifier_;
  bool binary_counts_ = false;
  int majority_ = 0;
};

struct GraphTrainResult {
  GraphModel model;
  std::optional<EvolutionResult> search;
  double train_accuracy = 0.0;
};

// Throws InputError on an empty or single-class training set.
GraphTrainResult train_graph_classifier(const GraphDataset& train, const GraphTrainConfig& config);

struct EvalMetrics {
  double accuracy = 0.0;
  double unseen_rate = 0.0;  // share of nodes whose hash is unknown
  std::size_t items = 0;
};

EvalMetrics evaluate(const GraphModel& model, const GraphDataset& data);

// Q-DNF over predicate counts. Throws InputError for forest models.
QdnfRuleSet extract_global_rules(const GraphModel& model);

// Top-n predicates by forest (or tree) importance; ties to the lower index.
std::vector<std::pair<int, double>> top_predicates(const GraphModel& model, int n);

// Short display name of predicate j: "p<j>".
std::string predicate_name(int j);

// One condition on a Z_v slot. Histogram slots use integer bounds (>=, <,
// =); mean slots keep real thresholds (>, <=).
struct SlotLiteral {
  int slot = 0;
  std::string op;
  double value = 0.0;

  bool holds(double x) const;
};

struct GroundedPredicate {
  int index = 0;
  int group = 0;
  int state = 0;
  StructHash hash;
  std::string layout;
  std::vector<std::string> slot_names;
  std::vector<SlotLiteral> literals;
  Representative representative;
  std::string text;  // e.g. "Orbit 0: #0 >= 1 AND Orbit 1: #(0-0) >= 2"

  bool accepts(std::span<const double> z) const;
  nlohmann::json to_json() const;
  // Graphviz drawing of the representative ego, nodes and edges colored by
  // orbit.
  std::string dot() const;
};

GroundedPredicate ground_predicate(const GraphModel& model, int j);

// ---------------------------------------------------------------------------
// Ablations.

enum class AblationVariant { kNoOrbits, kNoCounts, kNoGa };

const char* ablation_name(AblationVariant v);  // "no-orbits", ...
AblationVariant ablation_from_name(std::string_view name);

GraphTrainConfig ablated_config(AblationVariant v, const GraphTrainConfig& config);

struct AblationResult {
  AblationVariant variant = AblationVariant::kNoGa;
  double full_accuracy = 0.0;
  double ablated_accuracy = 0.0;
  std::size_t full_predicates = 0;
  std::size_t ablated_predicates = 0;
};

AblationResult run_ablation(AblationVariant v, const GraphDataset& train,
                            const GraphDataset& test, const GraphTrainConfig& config);

// ---------------------------------------------------------------------------
// Node classification.

struct NodeTrainConfig {
  int hops = 2;
  HashConfig hash;
  ClassifierConfig classifier;
  std::uint64_t seed = 0;
};

class NodeModel {
 public:
  NodeModel(FeatureSchema schema, int hops, HashConfig hash, NodeEncodingRegistry registry,
            Classifier classifier);

  const NodeEncodingRegistry& registry() const { return registry_; }
  const Classifier& classifier() const { return classifier_; }
  int hops() const { return hops_; }

  SparseVector encode(const Graph& g, NodeId v) const;
  int predict(const Graph& g, NodeId v) const;

  nlohmann::json to_json() const;
  static NodeModel from_json(const nlohmann::json& j);

 private:
  FeatureSchema schema_;
  int hops_ = 2;
  HashConfig hash_;
  NodeEncodingRegistry registry_;
  Classifier classifier_;
};

struct NodeTrainResult {
  NodeModel model;
  double train_accuracy = 0.0;
};

NodeTrainResult train_node_classifier(const NodeTask& task, const NodeTrainConfig& config);

EvalMetrics evaluate_nodes(const NodeModel& model, const NodeTask& task,
                           std::span<const int> nodes);

// ---------------------------------------------------------------------------
// Model files: {"format": "symgraph-model", "version": 1, "task": ...}.

nlohmann::json model_container(const std::string& task, nlohmann::json body,
                               nlohmann::json metadata);
// Returns the task ("graph" or "node"); throws InputError on a bad container.
std::string model_task(const nlohmann::json& container);

}  // namespace symgraph

#endif  // SYMGRAPH_PIPELINE_H_
