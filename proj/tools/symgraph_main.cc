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

// symgraph command line: gen-data, train, eval, explain, ablate.
//
// Exit codes: 0 success, 2 bad input (arguments, files, model JSON),
// 3 internal invariant violation.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symgraph/pipeline.h"
#include "symgraph/synthetic.h"
#include "symgraph/tu_format.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace symgraph {
namespace {

constexpr double kDefaultTrainFraction = 0.8;

struct DatasetArgs {
  std::string dir;
  std::string name;  // defaults to the directory's last component
};

struct TrainArgs {
  DatasetArgs data;
  int k_hops = 0;  // 0: per-dataset default
  std::string hash_mode = "canonical";
  int max_leaves_cap = 16;
  std::string classifier = "dt";
  int n_trees = 100;
  bool use_ga = true;
  int pop = 100;
  int gens = 5;
  double gamma = 1e-4;
  double mu = 0.1;
  int judge_max_leaves = 48;
  double judge_ccp_alpha = 0.001;
  double train_fraction = kDefaultTrainFraction;
  std::uint64_t seed = 0;
  std::string model_out;
  std::string metrics_out;
  std::string trace_out;
};

std::string dataset_name(const DatasetArgs& a) {
  if (!a.name.empty()) return a.name;
  fs::path p = fs::path(a.dir).lexically_normal();
  if (p.filename().empty()) p = p.parent_path();
  return p.filename().string();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return json::parse(buf.str());
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

int hops_for(const TrainArgs& a, const std::string& name) {
  if (a.k_hops > 0) return a.k_hops;
  return default_hops(name);
}

HashConfig hash_config(const TrainArgs& a) {
  HashConfig h;
  h.mode = hash_mode_from_name(a.hash_mode);
  h.validate();
  return h;
}

ClassifierConfig classifier_config(const TrainArgs& a) {
  ClassifierConfig c;
  c.kind = classifier_from_name(a.classifier);
  c.max_leaves = a.judge_max_leaves;
  c.ccp_alpha = a.judge_ccp_alpha;
  c.n_trees = a.n_trees;
  return c;
}

GraphTrainConfig graph_config(const TrainArgs& a, const std::string& name) {
  GraphTrainConfig c;
  c.encoder.hops = hops_for(a, name);
  c.encoder.hash = hash_config(a);
  c.max_leaves_cap = a.max_leaves_cap;
  c.use_ga = a.use_ga;
  c.ga.population = a.pop;
  c.ga.generations = a.gens;
  c.ga.mutation_rate = a.mu;
  c.fitness.gamma = a.gamma;
  c.fitness.judge_max_leaves = a.judge_max_leaves;
  c.fitness.judge_ccp_alpha = a.judge_ccp_alpha;
  c.classifier = classifier_config(a);
  c.seed = a.seed;
  if (c.max_leaves_cap < 1) throw InputError("--max-leaves-cap must be >= 1");
  if (c.encoder.hops < 1) throw InputError("--k-hops must be >= 1");
  if (a.use_ga) {
    c.ga.validate();
    c.fitness.validate();
  }
  return c;
}

std::uint64_t split_seed(std::uint64_t seed) { return mix_seed(seed, 5); }

// ---------------------------------------------------------------------------
// gen-data

int run_gen_data(const std::string& name, std::uint64_t seed, std::string out) {
  const auto names = synthetic_dataset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw InputError("unknown dataset " + name + " (choose from " + all + ")");
  }
  if (out.empty()) out = "data/" + name;
  fs::create_directories(out);
  if (is_node_dataset(name)) {
    NodeTask task = name == "BaShapes" ? gen_bashapes(seed) : gen_treegrid(seed);
    write_node_task(task, out);
    std::cout << "wrote " << name << " (" << task.graph.node_count() << " nodes, "
              << task.graph.edge_count() << " edges) to " << out << "\n";
  } else {
    PlantedGraphs p = name == "Ba2Motifs" ? gen_ba2motifs(seed) : gen_bamultishapes(seed);
    write_tu_dataset(p.data, out);
    std::cout << "wrote " << name << " (" << p.data.size() << " graphs) to " << out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// train

int train_graphs(const TrainArgs& a, const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  GraphDataset data = load_tu_dataset(a.data.dir, name);
  const GraphTrainConfig config = graph_config(a, name);
  SplitIndices split = stratified_split(data.labels, a.train_fraction, split_seed(a.seed));
  GraphDataset train = data.subset(split.train), test = data.subset(split.test);
  GraphTrainResult r = train_graph_classifier(train, config);
  const EvalMetrics m = evaluate(r.model, test);

  json metadata = {{"dataset", name},
                   {"seed", a.seed},
                   {"train_fraction", a.train_fraction},
                   {"split_seed", split_seed(a.seed)},
                   {"test_indices", split.test},
                   {"train_accuracy", r.train_accuracy},
                   {"test_accuracy", m.accuracy},
                   {"test_unseen_rate", m.unseen_rate}};
  if (!a.model_out.empty()) {
    write_json(a.model_out, model_container("graph", r.model.to_json(), metadata));
  }
  if (r.search && !a.trace_out.empty()) write_text(a.trace_out, trace_csv(r.search->trace));
  json metrics = {{"dataset", name},
                  {"train_accuracy", r.train_accuracy},
                  {"test_accuracy", m.accuracy},
                  {"test_unseen_rate", m.unseen_rate},
                  {"predicates", r.model.vocabulary().size()},
                  {"hash_groups", r.model.bank().group_count()}};
  write_json(a.metrics_out, metrics);
  std::cout << "dataset: " << name << " (" << train.size() << " train / " << test.size()
            << " test graphs)\n"
            << "hash_groups: " << r.model.bank().group_count() << "\n"
            << "predicates: " << r.model.vocabulary().size() << "\n"
            << "train_accuracy: " << fixed(r.train_accuracy) << "\n"
            << "test_accuracy: " << fixed(m.accuracy) << "\n"
            << "test_unseen_hash_rate: " << fixed(m.unseen_rate) << "\n"
            << "wall_time_s: " << fixed(seconds_since(start)) << "\n";
  return 0;
}

int train_nodes(const TrainArgs& a, const std::string& name) {
  const auto start = std::chrono::steady_clock::now();
  NodeTask task = load_node_task(a.data.dir, name);
  NodeTrainConfig config;
  config.hops = hops_for(a, name);
  config.hash = hash_config(a);
  config.classifier = classifier_config(a);
  config.seed = a.seed;
  NodeTrainResult r = train_node_classifier(task, config);
  const EvalMetrics m = evaluate_nodes(r.model, task, task.test_nodes);
  json metadata = {{"dataset", name},
                   {"seed", a.seed},
                   {"train_accuracy", r.train_accuracy},
                   {"test_accuracy", m.accuracy},
                   {"test_unseen_rate", m.unseen_rate}};
  if (!a.model_out.empty()) {
    write_json(a.model_out, model_container("node", r.model.to_json(), metadata));
  }
  write_json(a.metrics_out, {{"dataset", name},
                             {"train_accuracy", r.train_accuracy},
                             {"test_accuracy", m.accuracy},
                             {"test_unseen_rate", m.unseen_rate},
                             {"hash_groups", r.model.registry().hash_count()}});
  std::cout << "dataset: " << name << " (" << task.train_nodes.size() << " train / "
            << task.test_nodes.size() << " test nodes)\n"
            << "hash_groups: " << r.model.registry().hash_count() << "\n"
            << "train_accuracy: " << fixed(r.train_accuracy) << "\n"
            << "test_accuracy: " << fixed(m.accuracy) << "\n"
            << "test_unseen_hash_rate: " << fixed(m.unseen_rate) << "\n"
            << "wall_time_s: " << fixed(seconds_since(start)) << "\n";
  return 0;
}

int run_train(const TrainArgs& a) {
  const std::string name = dataset_name(a.data);
  if (is_node_task_directory(a.data.dir, name)) return train_nodes(a, name);
  return train_graphs(a, name);
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string model;
  DatasetArgs data;
  std::string split = "all";
  std::string metrics_out;
};

int run_eval(const EvalArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const json container = read_json(a.model);
  const std::string task_kind = model_task(container);
  const std::string name = dataset_name(a.data);
  EvalMetrics m;
  if (task_kind == "graph") {
    if (is_node_task_directory(a.data.dir, name)) {
      throw InputError("graph model given a node-task directory");
    }
    GraphModel model = GraphModel::from_json(container.at("model"));
    GraphDataset data = load_tu_dataset(a.data.dir, name);
    if (a.split == "test") {
      const json& md = container.at("metadata");
      if (!md.contains("test_indices")) throw InputError("model file records no test split");
      const auto idx = md.at("test_indices").get<std::vector<int>>();
      for (int i : idx) {
        if (i < 0 || static_cast<std::size_t>(i) >= data.size()) {
          throw InputError("recorded test split does not fit this dataset");
        }
      }
      data = data.subset(idx);
    } else if (a.split != "all") {
      throw InputError("graph models support --split all or test");
    }
    m = evaluate(model, data);
  } else {
    NodeModel model = NodeModel::from_json(container.at("model"));
    NodeTask task = load_node_task(a.data.dir, name);
    std::vector<int> nodes;
    if (a.split == "test") {
      nodes = task.test_nodes;
    } else if (a.split == "train") {
      nodes = task.train_nodes;
    } else {
      nodes.resize(task.graph.node_count());
      std::iota(nodes.begin(), nodes.end(), 0);
    }
    m = evaluate_nodes(model, task, nodes);
  }
  write_json(a.metrics_out, {{"dataset", name},
                             {"split", a.split},
                             {"items", m.items},
                             {"accuracy", m.accuracy},
                             {"unseen_rate", m.unseen_rate}});
  std::cout << "items: " << m.items << "\n"
            << "accuracy: " << fixed(m.accuracy) << "\n"
            << "unseen_hash_rate: " << fixed(m.unseen_rate) << "\n"
            << "wall_time_s: " << fixed(seconds_since(start)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// explain

struct ExplainArgs {
  std::string model;
  std::string format = "text";
  int graph_index = -1;
  DatasetArgs data;
  int top = 10;
};

std::string rules_text(const QdnfRuleSet& rules) {
  return rules.to_text([](int j) { return predicate_name(j); });
}

void explain_graph_instance(const GraphModel& model, const ExplainArgs& a, json& out,
                            std::ostream& text) {
  if (a.data.dir.empty()) throw InputError("--graph-index needs --dataset-dir");
  GraphDataset data = load_tu_dataset(a.data.dir, dataset_name(a.data));
  if (a.graph_index < 0 || static_cast<std::size_t>(a.graph_index) >= data.size()) {
    throw InputError("--graph-index out of range");
  }
  const GraphPrediction p = model.predict(data.graphs[a.graph_index]);
  json counts = json::object();
  for (std::size_t j = 0; j < p.evidence.counts.size(); ++j) {
    if (p.evidence.counts[j] > 0) counts[predicate_name(static_cast<int>(j))] = p.evidence.counts[j];
  }
  json fired = json::array();
  for (int f : p.evidence.fired) fired.push_back(f < 0 ? json(nullptr) : json(predicate_name(f)));
  out["instance"] = {{"graph_index", a.graph_index},
                     {"label", data.labels[a.graph_index]},
                     {"predicted", p.label},
                     {"fallback", p.fallback},
                     {"unseen_nodes", p.evidence.unseen_nodes},
                     {"counts", counts},
                     {"fired_per_node", fired}};
  text << "graph " << a.graph_index << ": predicted class " << p.label << ", label "
       << data.labels[a.graph_index] << (p.fallback ? " (no known structure, majority class)" : "")
       << "\n  unseen nodes: " << p.evidence.unseen_nodes << " of " << p.evidence.total_nodes
       << "\n  counts:";
  for (auto& [k, v] : counts.items()) text << " " << k << "=" << v.get<int>();
  text << "\n";
  if (!p.fallback && model.classifier().kind() == ClassifierKind::kTree) {
    const QdnfRuleSet rules = extract_global_rules(model);
    const std::vector<double> x = model.inputs(p.evidence);
    for (int c = 0; c < rules.num_classes; ++c) {
      for (const Conjunction& conj : rules.by_class[c]) {
        if (!conj.holds(x)) continue;
        QdnfRuleSet one;
        one.num_classes = rules.num_classes;
        one.by_class.resize(rules.num_classes);
        one.by_class[c].push_back(conj);
        const std::string rule = rules_text(one);
        out["instance"]["rule"] = rule.substr(0, rule.size() - 1);
        text << "  rule: " << rule;
      }
    }
  }
}

int explain_graph(const GraphModel& model, const ExplainArgs& a) {
  std::vector<int> shown;
  json out = {{"task", "graph"}, {"classifier", classifier_name(model.classifier().kind())},
              {"predicates", model.vocabulary().size()}};
  std::ostringstream text;
  if (model.classifier().kind() == ClassifierKind::kTree) {
    const QdnfRuleSet rules = extract_global_rules(model);
    shown = rules.inputs();
    out["rules"] = rules.to_json();
    out["rules_text"] = rules_text(rules);
    text << "rules:\n" << rules_text(rules);
  } else {
    json ranked = json::array();
    text << "top predicates by importance:\n";
    for (auto [j, imp] : top_predicates(model, a.top)) {
      shown.push_back(j);
      ranked.push_back({{"predicate", predicate_name(j)}, {"importance", imp}});
      text << "  " << predicate_name(j) << " " << fixed(imp) << "\n";
    }
    out["importance"] = ranked;
  }
  json grounded = json::array();
  std::string dot;
  if (!shown.empty()) text << "predicates:\n";
  for (int j : shown) {
    GroundedPredicate gp = ground_predicate(model, j);
    grounded.push_back(gp.to_json());
    dot += gp.dot();
    text << "  " << predicate_name(j) << " [structure " << gp.hash.short_hex() << ", state "
         << gp.state << "]: " << gp.text << "\n";
  }
  out["grounded"] = grounded;
  if (a.graph_index >= 0) explain_graph_instance(model, a, out, text);

  if (a.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (a.format == "dot") {
    std::cout << dot;
  } else {
    std::cout << text.str();
  }
  return 0;
}

int explain_node(const NodeModel& model, const ExplainArgs& a) {
  if (a.format == "dot") throw InputError("dot output is available for graph models only");
  const NodeEncodingRegistry& reg = model.registry();
  std::vector<double> imp = model.classifier().importance();
  auto owner = [&](int slot) -> std::pair<std::string, int> {
    if (slot == reg.unknown_slot()) return {"unknown", 0};
    for (const StructHash& h : reg.hashes()) {
      SlotRange r = *reg.find(h);
      if (slot >= r.offset && slot < r.offset + r.width) return {h.short_hex(), slot - r.offset};
    }
    return {"?", slot};
  };
  std::vector<std::pair<int, double>> ranked;
  for (std::size_t j = 0; j < imp.size(); ++j) {
    if (imp[j] > 0) ranked.emplace_back(static_cast<int>(j), imp[j]);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  if (ranked.size() > static_cast<std::size_t>(std::max(0, a.top))) ranked.resize(a.top);
  json out = {{"task", "node"}, {"hash_groups", reg.hash_count()}};
  json items = json::array();
  std::ostringstream text;
  text << "top encoding slots by importance:\n";
  for (auto [slot, v] : ranked) {
    auto [hash, offset] = owner(slot);
    items.push_back({{"slot", slot}, {"structure", hash}, {"offset", offset}, {"importance", v}});
    text << "  slot " << slot << " [structure " << hash << ", offset " << offset << "] "
         << fixed(v) << "\n";
  }
  out["importance"] = items;
  if (model.classifier().kind() == ClassifierKind::kTree) {
    QdnfRuleSet rules = rules_from_tree(model.classifier().tree());
    out["tree_paths"] = rules.conjunction_count();
  }
  if (a.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return 0;
}

int run_explain(const ExplainArgs& a) {
  const json container = read_json(a.model);
  if (model_task(container) == "graph") {
    return explain_graph(GraphModel::from_json(container.at("model")), a);
  }
  return explain_node(NodeModel::from_json(container.at("model")), a);
}

// ---------------------------------------------------------------------------
// ablate

int run_ablate(const TrainArgs& a, const std::string& variant_name) {
  const AblationVariant v = ablation_from_name(variant_name);
  const std::string name = dataset_name(a.data);
  if (is_node_task_directory(a.data.dir, name)) {
    throw InputError("ablations apply to graph classification datasets");
  }
  GraphDataset data = load_tu_dataset(a.data.dir, name);
  SplitIndices split = stratified_split(data.labels, a.train_fraction, split_seed(a.seed));
  AblationResult r =
      run_ablation(v, data.subset(split.train), data.subset(split.test), graph_config(a, name));
  write_json(a.metrics_out, {{"dataset", name},
                             {"variant", ablation_name(v)},
                             {"full_accuracy", r.full_accuracy},
                             {"ablated_accuracy", r.ablated_accuracy},
                             {"full_predicates", r.full_predicates},
                             {"ablated_predicates", r.ablated_predicates}});
  std::cout << "variant: " << ablation_name(v) << "\n"
            << "full_test_accuracy: " << fixed(r.full_accuracy) << "\n"
            << "ablated_test_accuracy: " << fixed(r.ablated_accuracy) << "\n"
            << "full_predicates: " << r.full_predicates << "\n"
            << "ablated_predicates: " << r.ablated_predicates << "\n";
  return 0;
}

void add_dataset_options(CLI::App* cmd, DatasetArgs& d, bool required) {
  auto* opt = cmd->add_option("--dataset-dir", d.dir, "Directory holding <name>_A.txt etc.");
  if (required) opt->required();
  cmd->add_option("--name", d.name, "File prefix inside the directory (default: directory name)");
}

void add_train_options(CLI::App* cmd, TrainArgs& t) {
  add_dataset_options(cmd, t.data, true);
  cmd->add_option("--k-hops", t.k_hops, "Ego radius (default: 2 for TreeGrid, else 1)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--hash", t.hash_mode, "Structural hash")
      ->check(CLI::IsMember({"canonical", "wl"}))
      ->capture_default_str();
  cmd->add_option("--max-leaves-cap", t.max_leaves_cap, "Per-hash leaf cap")->capture_default_str();
  cmd->add_option("--classifier", t.classifier, "Global classifier")
      ->check(CLI::IsMember({"dt", "rf"}))
      ->capture_default_str();
  cmd->add_option("--n-trees", t.n_trees, "Forest size")->capture_default_str();
  cmd->add_flag("--ga,!--no-ga", t.use_ga, "Search per-hash leaf counts (default on)");
  cmd->add_option("--pop", t.pop, "Population size")->capture_default_str();
  cmd->add_option("--gens", t.gens, "Generations")->capture_default_str();
  cmd->add_option("--gamma", t.gamma, "Penalty per active leaf")->capture_default_str();
  cmd->add_option("--mu", t.mu, "Per-gene mutation rate")->capture_default_str();
  cmd->add_option("--judge-max-leaves", t.judge_max_leaves, "Leaves of the judge and global tree")
      ->capture_default_str();
  cmd->add_option("--judge-ccp-alpha", t.judge_ccp_alpha, "Pruning of the judge and global tree")
      ->capture_default_str();
  cmd->add_option("--train-fraction", t.train_fraction, "Stratified train share for graph data")
      ->capture_default_str();
  cmd->add_option("--seed", t.seed, "Master seed")->capture_default_str();
  cmd->add_option("--metrics-out", t.metrics_out, "Write deterministic metrics JSON");
}

int run(int argc, char** argv) {
  CLI::App app{"symgraph: symbolic graph and node classification with readable rules"};
  app.require_subcommand(1);

  std::string gen_name, gen_out;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen-data", "Write a synthetic benchmark in TU format");
  gen->add_option("name", gen_name, "Ba2Motifs, BAMultiShapes, BaShapes or TreeGrid")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory (default: data/<name>)");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a graph or node classifier");
  add_train_options(train, train_args);
  train->add_option("--model-out", train_args.model_out, "Model file to write");
  train->add_option("--trace-out", train_args.trace_out, "Search trace CSV");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a model on a dataset");
  eval->add_option("--model", eval_args.model, "Model file")->required();
  add_dataset_options(eval, eval_args.data, true);
  eval->add_option("--split", eval_args.split, "all, test (recorded split) or train (node tasks)")
      ->check(CLI::IsMember({"all", "test", "train"}))
      ->capture_default_str();
  eval->add_option("--metrics-out", eval_args.metrics_out, "Write metrics JSON");

  ExplainArgs explain_args;
  auto* explain = app.add_subcommand("explain", "Print rules and grounded predicates");
  explain->add_option("--model", explain_args.model, "Model file")->required();
  explain->add_option("--format", explain_args.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  explain->add_option("--graph-index", explain_args.graph_index, "Explain one graph's prediction");
  add_dataset_options(explain, explain_args.data, false);
  explain->add_option("--top", explain_args.top, "Predicates listed for forests")
      ->capture_default_str();

  TrainArgs ablate_args;
  std::string variant;
  auto* ablate = app.add_subcommand("ablate", "Compare the full model with one component removed");
  ablate->add_option("--variant", variant, "Removed component")
      ->required()
      ->check(CLI::IsMember({"no-orbits", "no-counts", "no-ga", "no_orbits", "no_counts", "no_ga"}));
  add_train_options(ablate, ablate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (gen->parsed()) return run_gen_data(gen_name, gen_seed, gen_out);
  if (train->parsed()) return run_train(train_args);
  if (eval->parsed()) return run_eval(eval_args);
  if (explain->parsed()) return run_explain(explain_args);
  if (ablate->parsed()) return run_ablate(ablate_args, variant);
  return 2;
}

}  // namespace
}  // namespace symgraph

int main(int argc, char** argv) {
  try {
    return symgraph::run(argc, argv);
  } catch (const symgraph::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed model file: " << e.what() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const symgraph::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
