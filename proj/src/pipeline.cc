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

#include "symgraph/pipeline.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace symgraph {

namespace {

constexpr int kModelVersion = 1;

int majority_of(std::span<const int> labels, int num_classes) {
  std::vector<int> counts(num_classes, 0);
  for (int l : labels) ++counts[l];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

nlohmann::json hash_to_json(const StructHash& h) {
  return {{"digest", h.hex()}, {"mode", hash_mode_name(h.mode)}};
}

StructHash hash_from_json(const nlohmann::json& j) {
  StructHash h;
  h.digest = Digest128::from_hex(j.at("digest").get<std::string>());
  h.mode = hash_mode_from_name(j.at("mode").get<std::string>());
  return h;
}

nlohmann::json hash_config_to_json(const HashConfig& c) {
  EncoderConfig e;
  e.hash = c;
  nlohmann::json j = e.to_json();
  j.erase("hops");
  j.erase("encoding");
  return j;
}

HashConfig hash_config_from_json(nlohmann::json j) {
  j["hops"] = 1;
  j["encoding"] = "orbits";
  return EncoderConfig::from_json(j).hash;
}

// Histogram slots hold integer counts; their names read "<orbit>: #...".
bool integer_slot(const std::string& name) {
  auto pos = name.find(": ");
  return pos != std::string::npos && pos + 2 < name.size() && name[pos + 2] == '#';
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

const char* const kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

}  // namespace

const char* classifier_name(ClassifierKind kind) {
  return kind == ClassifierKind::kTree ? "dt" : "rf";
}

ClassifierKind classifier_from_name(std::string_view name) {
  if (name == "dt") return ClassifierKind::kTree;
  if (name == "rf") return ClassifierKind::kForest;
  throw InputError("unknown classifier: " + std::string(name));
}

int Classifier::num_features() const {
  if (kind_ == ClassifierKind::kTree) return tree_.num_features();
  return forest_.trees().empty() ? 0 : forest_.trees().front().num_features();
}

int Classifier::predict(std::span<const double> x) const {
  return kind_ == ClassifierKind::kTree ? tree_.predict(x) : forest_.predict(x);
}

std::vector<double> Classifier::importance() const {
  return kind_ == ClassifierKind::kTree ? feature_importance(tree_) : feature_importance(forest_);
}

nlohmann::json Classifier::to_json() const {
  nlohmann::json j = {{"kind", classifier_name(kind_)}};
  if (kind_ == ClassifierKind::kTree) {
    j["tree"] = tree_.to_json();
  } else {
    j["forest"] = forest_.to_json();
  }
  return j;
}

Classifier Classifier::from_json(const nlohmann::json& j) {
  Classifier c;
  c.kind_ = classifier_from_name(j.at("kind").get<std::string>());
  if (c.kind_ == ClassifierKind::kTree) {
    c.tree_ = DecisionTree::from_json(j.at("tree"));
  } else {
    c.forest_ = RandomForest::from_json(j.at("forest"));
  }
  return c;
}

Classifier Classifier::fit(const Matrix& X, std::span<const int> y, int num_classes,
                           const ClassifierConfig& config, std::uint64_t seed) {
  Classifier c;
  c.kind_ = config.kind;
  if (config.kind == ClassifierKind::kTree) {
    TreeParams tp;
    tp.max_leaves = config.max_leaves;
    tp.ccp_alpha = config.ccp_alpha;
    tp.seed = seed;
    c.tree_ = fit_tree_leafwise(X, y, num_classes, tp);
    return c;
  }
  ForestParams fp;
  fp.n_trees = config.n_trees;
  fp.max_leaves = config.max_leaves;
  fp.ccp_alpha = config.ccp_alpha;
  fp.feature_fraction = config.feature_fraction > 0
                            ? config.feature_fraction
                            : 1.0 / std::sqrt(std::max<double>(1.0, static_cast<double>(X.cols())));
  fp.seed = seed;
  c.forest_ = fit_forest(X, y, num_classes, fp);
  return c;
}

nlohmann::json schema_to_json(const FeatureSchema& schema) {
  return {{"discrete_arities", schema.discrete_arities},
          {"continuous_count", schema.continuous_count},
          {"edge_label_arity", schema.edge_label_arity}};
}

FeatureSchema schema_from_json(const nlohmann::json& j) {
  FeatureSchema s;
  s.discrete_arities = j.at("discrete_arities").get<std::vector<int>>();
  s.continuous_count = j.at("continuous_count").get<int>();
  s.edge_label_arity = j.at("edge_label_arity").get<int>();
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------

GraphModel::GraphModel(PredicateBank bank, Genome genome, Classifier classifier,
                       bool binary_counts, int majority_class)
    : bank_(std::move(bank)),
      genome_(std::move(genome)),
      vocab_(build_vocabulary(bank_, genome_)),
      trees_(symgraph::active_trees(bank_, genome_)),
      classifier_(std::move(classifier)),
      binary_counts_(binary_counts),
      majority_(majority_class) {
  if (classifier_.num_features() != static_cast<int>(vocab_.size())) {
    throw InputError("classifier inputs do not match the predicate vocabulary");
  }
  if (majority_ < 0 || majority_ >= bank_.num_classes()) {
    throw InputError("majority class out of range");
  }
}

std::vector<double> GraphModel::inputs(const CountVector& c) const {
  std::vector<double> x(c.counts.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = binary_counts_ ? (c.counts[j] > 0 ? 1.0 : 0.0) : c.counts[j];
  }
  return x;
}

GraphPrediction GraphModel::predict(const Graph& g) const {
  GraphPrediction p;
  p.evidence = count_vector_live(bank_, vocab_, trees_, g);
  if (p.evidence.unseen_nodes == p.evidence.total_nodes) {
    p.fallback = true;
    p.label = majority_;
    return p;
  }
  p.label = classifier_.predict(inputs(p.evidence));
  return p;
}

nlohmann::json GraphModel::to_json() const {
  nlohmann::json groups = nlohmann::json::array();
  for (const HashGroup& g : bank_.groups()) {
    groups.push_back({{"hash", hash_to_json(g.hash)},
                      {"layout", g.layout},
                      {"slot_names", g.slot_names},
                      {"representative", g.representative.to_json()},
                      {"support", g.support},
                      {"master", g.master.to_json()}});
  }
  return {{"encoder", bank_.encoder().to_json()},
          {"schema", schema_to_json(bank_.schema())},
          {"max_leaves_cap", bank_.max_leaves_cap()},
          {"num_classes", bank_.num_classes()},
          {"groups", groups},
          {"genome", genome_},
          {"binary_counts", binary_counts_},
          {"majority_class", majority_},
          {"classifier", classifier_.to_json()}};
}

GraphModel GraphModel::from_json(const nlohmann::json& j) {
  std::vector<HashGroup> groups;
  for (const auto& jg : j.at("groups")) {
    HashGroup g;
    g.hash = hash_from_json(jg.at("hash"));
    g.layout = jg.at("layout").get<std::string>();
    g.slot_names = jg.at("slot_names").get<std::vector<std::string>>();
    g.representative = Representative::from_json(jg.at("representative"));
    g.support = jg.at("support").get<std::size_t>();
    g.master = DecisionTree::from_json(jg.at("master"));
    if (static_cast<std::size_t>(g.master.num_features()) != g.slot_names.size()) {
      throw InputError("master tree width does not match its slot names");
    }
    groups.push_back(std::move(g));
  }
  PredicateBank bank = PredicateBank::from_groups(
      EncoderConfig::from_json(j.at("encoder")), schema_from_json(j.at("schema")),
      j.at("max_leaves_cap").get<int>(), j.at("num_classes").get<int>(), std::move(groups));
  return GraphModel(std::move(bank), j.at("genome").get<Genome>(),
                    Classifier::from_json(j.at("classifier")), j.at("binary_counts").get<bool>(),
                    j.at("majority_class").get<int>());
}

GraphTrainResult train_graph_classifier(const GraphDataset& train, const GraphTrainConfig& config) {
  if (train.size() == 0) throw InputError("empty training set");
  train.validate();
  BankParams bp;
  bp.max_leaves_cap = config.max_leaves_cap;
  bp.ccp_alpha = config.master_ccp_alpha;
  bp.seed = mix_seed(config.seed, 1);
  PredicateBank bank = build_predicate_bank(train, config.encoder, bp);

  std::optional<EvolutionResult> search;
  Genome genome(bank.group_count(), config.max_leaves_cap);
  if (config.use_ga) {
    GaParams ga = config.ga;
    ga.seed = mix_seed(config.seed, 2);
    FitnessParams fp = config.fitness;
    fp.seed = mix_seed(config.seed, 3);
    fp.binary_counts = config.binary_counts;
    search = evolve(bank, train.labels, ga, fp);
    genome = search->best;
  }

  Vocabulary vocab = build_vocabulary(bank, genome);
  Matrix V = count_matrix_cached(bank, vocab);
  if (config.binary_counts) V = binarize(V);
  const int C = train.num_classes();
  Classifier clf = Classifier::fit(V, train.labels, C, config.classifier, mix_seed(config.seed, 4));
  int correct = 0;
  for (std::size_t i = 0; i < V.rows(); ++i) correct += clf.predict(V.row(i)) == train.labels[i];
  const int majority = majority_of(train.labels, C);
  GraphModel model(std::move(bank), std::move(genome), std::move(clf), config.binary_counts,
                   majority);
  return {std::move(model), std::move(search),
          static_cast<double>(correct) / static_cast<double>(train.size())};
}

EvalMetrics evaluate(const GraphModel& model, const GraphDataset& data) {
  EvalMetrics m;
  m.items = data.size();
  if (data.size() == 0) return m;
  std::vector<int> hit(data.size(), 0), unseen(data.size(), 0);
  parallel_for(data.size(), [&](std::size_t i) {
    GraphPrediction p = model.predict(data.graphs[i]);
    hit[i] = p.label == data.labels[i];
    unseen[i] = p.evidence.unseen_nodes;
  });
  long nodes = 0, unseen_total = 0, correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    correct += hit[i];
    unseen_total += unseen[i];
    nodes += data.graphs[i].node_count();
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  m.unseen_rate = nodes > 0 ? static_cast<double>(unseen_total) / static_cast<double>(nodes) : 0.0;
  return m;
}

QdnfRuleSet extract_global_rules(const GraphModel& model) {
  if (model.classifier().kind() != ClassifierKind::kTree) {
    throw InputError("rule extraction needs a single tree; use feature importance for forests");
  }
  return rules_from_tree(model.classifier().tree());
}

std::vector<std::pair<int, double>> top_predicates(const GraphModel& model, int n) {
  std::vector<double> imp = model.classifier().importance();
  std::vector<std::pair<int, double>> ranked;
  for (std::size_t j = 0; j < imp.size(); ++j) {
    if (imp[j] > 0) ranked.emplace_back(static_cast<int>(j), imp[j]);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (n >= 0 && ranked.size() > static_cast<std::size_t>(n)) ranked.resize(n);
  return ranked;
}

std::string predicate_name(int j) { return "p" + std::to_string(j); }

// ---------------------------------------------------------------------------

bool SlotLiteral::holds(double x) const {
  if (op == ">=") return x >= value;
  if (op == "<") return x < value;
  if (op == "=") return x == value;
  if (op == ">") return x > value;
  if (op == "<=") return x <= value;
  throw InvariantError("unknown slot literal op " + op);
}

bool GroundedPredicate::accepts(std::span<const double> z) const {
  for (const SlotLiteral& l : literals) {
    if (!l.holds(z[l.slot])) return false;
  }
  return true;
}

nlohmann::json GroundedPredicate::to_json() const {
  nlohmann::json lits = nlohmann::json::array();
  for (const SlotLiteral& l : literals) {
    lits.push_back({{"slot", l.slot}, {"name", slot_names[l.slot]}, {"op", l.op}, {"value", l.value}});
  }
  return {{"predicate", index},
          {"name", predicate_name(index)},
          {"hash", hash_to_json(hash)},
          {"state", state},
          {"layout", layout},
          {"conjunction", lits},
          {"text", text},
          {"drawing", representative.to_json()}};
}

std::string GroundedPredicate::dot() const {
  const std::size_t colors = std::size(kPalette);
  auto color = [&](int group) {
    return group < 0 ? std::string("#ffffff") : std::string(kPalette[group % colors]);
  };
  std::string out = "graph " + predicate_name(index) + " {\n";
  out += "  label=\"" + predicate_name(index) + ": " + text + "\";\n";
  out += "  node [style=filled];\n";
  for (int v = 0; v < representative.node_count; ++v) {
    const int g = representative.node_group[v];
    out += "  n" + std::to_string(v) + " [label=\"" + std::to_string(v) +
           (g >= 0 ? "\\nOrbit " + std::to_string(g) : std::string()) + "\", fillcolor=\"" +
           color(g) + "\"" + (v == 0 ? ", shape=doublecircle" : "") + "];\n";
  }
  for (std::size_t e = 0; e < representative.edges.size(); ++e) {
    const Edge& ed = representative.edges[e];
    const int g = representative.edge_group[e];
    out += "  n" + std::to_string(ed.u) + " -- n" + std::to_string(ed.v);
    if (g >= 0) {
      out += " [color=\"" + color(g) + "\", penwidth=3, label=\"Orbit " + std::to_string(g) + "\"]";
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

GroundedPredicate ground_predicate(const GraphModel& model, int j) {
  const Vocabulary& vocab = model.vocabulary();
  if (j < 0 || static_cast<std::size_t>(j) >= vocab.size()) {
    throw InputError("predicate index " + std::to_string(j) + " out of range");
  }
  const Predicate& p = vocab.predicates()[j];
  const HashGroup& group = model.bank().groups()[p.group];
  GroundedPredicate gp;
  gp.index = j;
  gp.group = p.group;
  gp.state = p.state;
  gp.hash = p.hash;
  gp.layout = group.layout;
  gp.slot_names = group.slot_names;
  gp.representative = group.representative;

  const DecisionTree& tree = model.active_trees()[p.group];
  std::vector<PathLiteral> integer_part;
  std::map<int, std::pair<double, double>> real_bounds;  // (lower, upper]
  for (const LeafPath& path : extract_paths(tree)) {
    if (path.leaf_id != p.state) continue;
    for (const PathLiteral& l : path.literals) {
      if (integer_slot(group.slot_names[l.feature])) {
        integer_part.push_back(l);
        continue;
      }
      auto [it, fresh] = real_bounds.try_emplace(l.feature, -HUGE_VAL, HUGE_VAL);
      if (l.greater) {
        it->second.first = std::max(it->second.first, l.threshold);
      } else {
        it->second.second = std::min(it->second.second, l.threshold);
      }
    }
  }
  for (const CountLiteral& l : integer_literals(integer_part)) {
    gp.literals.push_back({l.input, count_op_symbol(l.op), static_cast<double>(l.kappa)});
  }
  for (auto [slot, b] : real_bounds) {
    if (b.first > -HUGE_VAL) gp.literals.push_back({slot, ">", b.first});
    if (b.second < HUGE_VAL) gp.literals.push_back({slot, "<=", b.second});
  }
  std::stable_sort(gp.literals.begin(), gp.literals.end(),
                   [](const SlotLiteral& a, const SlotLiteral& b) { return a.slot < b.slot; });

  if (gp.literals.empty()) {
    gp.text = "structure " + p.hash.short_hex() + " present";
  } else {
    for (const SlotLiteral& l : gp.literals) {
      if (!gp.text.empty()) gp.text += " AND ";
      const bool whole = integer_slot(group.slot_names[l.slot]);
      gp.text += group.slot_names[l.slot] + " " + l.op + " " +
                 (whole ? std::to_string(static_cast<long>(l.value)) : format_real(l.value));
    }
  }
  return gp;
}

// ---------------------------------------------------------------------------

const char* ablation_name(AblationVariant v) {
  switch (v) {
    case AblationVariant::kNoOrbits:
      return "no-orbits";
    case AblationVariant::kNoCounts:
      return "no-counts";
    case AblationVariant::kNoGa:
      return "no-ga";
  }
  return "?";
}

AblationVariant ablation_from_name(std::string_view name) {
  if (name == "no-orbits" || name == "no_orbits") return AblationVariant::kNoOrbits;
  if (name == "no-counts" || name == "no_counts") return AblationVariant::kNoCounts;
  if (name == "no-ga" || name == "no_ga") return AblationVariant::kNoGa;
  throw InputError("unknown ablation variant: " + std::string(name));
}

GraphTrainConfig ablated_config(AblationVariant v, const GraphTrainConfig& config) {
  GraphTrainConfig c = config;
  switch (v) {
    case AblationVariant::kNoOrbits:
      c.encoder.encoding = LocalEncoding::kHopShells;
      break;
    case AblationVariant::kNoCounts:
      c.binary_counts = true;
      break;
    case AblationVariant::kNoGa:
      c.use_ga = false;
      break;
  }
  return c;
}

AblationResult run_ablation(AblationVariant v, const GraphDataset& train,
                            const GraphDataset& test, const GraphTrainConfig& config) {
  AblationResult r;
  r.variant = v;
  GraphTrainResult full = train_graph_classifier(train, config);
  GraphTrainResult ablated = train_graph_classifier(train, ablated_config(v, config));
  r.full_accuracy = evaluate(full.model, test).accuracy;
  r.ablated_accuracy = evaluate(ablated.model, test).accuracy;
  r.full_predicates = full.model.vocabulary().size();
  r.ablated_predicates = ablated.model.vocabulary().size();
  return r;
}

// ---------------------------------------------------------------------------

NodeModel::NodeModel(FeatureSchema schema, int hops, HashConfig hash,
                     NodeEncodingRegistry registry, Classifier classifier)
    : schema_(std::move(schema)),
      hops_(hops),
      hash_(hash),
      registry_(std::move(registry)),
      classifier_(std::move(classifier)) {
  if (classifier_.num_features() != registry_.total_width()) {
    throw InputError("node classifier width does not match the encoding registry");
  }
}

SparseVector NodeModel::encode(const Graph& g, NodeId v) const {
  return node_global_encoding(v, g, schema_, hops_, registry_, hash_);
}

int NodeModel::predict(const Graph& g, NodeId v) const {
  return classifier_.predict(encode(g, v).dense());
}

nlohmann::json NodeModel::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const StructHash& h : registry_.hashes()) {
    entries.push_back({{"hash", hash_to_json(h)}, {"width", registry_.find(h)->width}});
  }
  return {{"schema", schema_to_json(schema_)},
          {"hops", hops_},
          {"hash", hash_config_to_json(hash_)},
          {"registry", entries},
          {"classifier", classifier_.to_json()}};
}

NodeModel NodeModel::from_json(const nlohmann::json& j) {
  NodeEncodingRegistry registry;
  for (const auto& e : j.at("registry")) {
    registry.observe(hash_from_json(e.at("hash")), e.at("width").get<int>());
  }
  registry.freeze();
  const int hops = j.at("hops").get<int>();
  if (hops < 1) throw InputError("hops must be >= 1");
  return NodeModel(schema_from_json(j.at("schema")), hops, hash_config_from_json(j.at("hash")),
                   std::move(registry), Classifier::from_json(j.at("classifier")));
}

NodeTrainResult train_node_classifier(const NodeTask& task, const NodeTrainConfig& config) {
  task.validate();
  config.hash.validate();
  if (config.hops < 1) throw InputError("hops must be >= 1");
  if (task.train_nodes.empty()) throw InputError("no training nodes");
  NodeEncodingRegistry registry =
      build_node_registry(task.graph, task.schema, task.train_nodes, config.hops, config.hash);
  Matrix X(task.train_nodes.size(), registry.total_width());
  std::vector<int> y(task.train_nodes.size());
  parallel_for(task.train_nodes.size(), [&](std::size_t i) {
    const NodeId v = task.train_nodes[i];
    SparseVector s = node_global_encoding(v, task.graph, task.schema, config.hops, registry,
                                          config.hash);
    for (auto [idx, value] : s.entries) X.at(i, idx) = value;
    y[i] = task.node_labels[v];
  });
  Classifier clf = Classifier::fit(X, y, task.num_classes(), config.classifier,
                                   mix_seed(config.seed, 4));
  int correct = 0;
  for (std::size_t i = 0; i < X.rows(); ++i) correct += clf.predict(X.row(i)) == y[i];
  NodeModel model(task.schema, config.hops, config.hash, std::move(registry), std::move(clf));
  return {std::move(model), static_cast<double>(correct) / static_cast<double>(X.rows())};
}

EvalMetrics evaluate_nodes(const NodeModel& model, const NodeTask& task,
                           std::span<const int> nodes) {
  EvalMetrics m;
  m.items = nodes.size();
  if (nodes.empty()) return m;
  std::vector<int> hit(nodes.size(), 0), unseen(nodes.size(), 0);
  const int flag = model.registry().unknown_slot();
  parallel_for(nodes.size(), [&](std::size_t i) {
    SparseVector s = model.encode(task.graph, nodes[i]);
    for (auto [idx, value] : s.entries) unseen[i] |= idx == flag && value != 0.0;
    hit[i] = model.classifier().predict(s.dense()) == task.node_labels[nodes[i]];
  });
  long correct = 0, missing = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    correct += hit[i];
    missing += unseen[i];
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(nodes.size());
  m.unseen_rate = static_cast<double>(missing) / static_cast<double>(nodes.size());
  return m;
}

// ---------------------------------------------------------------------------

nlohmann::json model_container(const std::string& task, nlohmann::json body,
                               nlohmann::json metadata) {
  return {{"format", "symgraph-model"},
          {"version", kModelVersion},
          {"task", task},
          {"metadata", std::move(metadata)},
          {"model", std::move(body)}};
}

std::string model_task(const nlohmann::json& container) {
  if (!container.is_object() || container.value("format", "") != "symgraph-model") {
    throw InputError("not a symgraph model file");
  }
  if (container.value("version", 0) != kModelVersion) {
    throw InputError("unsupported model version");
  }
  std::string task = container.value("task", "");
  if (task != "graph" && task != "node") throw InputError("unknown model task: " + task);
  return task;
}

}  // namespace symgraph
