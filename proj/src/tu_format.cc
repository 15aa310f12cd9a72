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

#include "symgraph/tu_format.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace symgraph {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long long parse_int(std::string_view token, const fs::path& file, int line_no) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw InputError(file.string() + ":" + std::to_string(line_no) +
                     ": expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

double parse_real(std::string_view token, const fs::path& file, int line_no) {
  std::string s(token);
  char* end = nullptr;
  double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw InputError(file.string() + ":" + std::to_string(line_no) +
                     ": expected a number, got '" + s + "'");
  }
  return value;
}

// Non-empty lines of a file; nullopt when it does not exist.
std::optional<std::vector<std::string>> read_lines(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> require_lines(const fs::path& file) {
  auto lines = read_lines(file);
  if (!lines) throw InputError("missing required file " + file.string());
  return *lines;
}

std::vector<long long> read_int_column(const fs::path& file,
                                       const std::vector<std::string>& lines) {
  std::vector<long long> values;
  values.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    values.push_back(parse_int(trim(lines[i]), file, static_cast<int>(i + 1)));
  }
  return values;
}

fs::path file_for(const fs::path& dir, const std::string& name, const char* suffix) {
  return dir / (name + suffix);
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write " + file.string());
  return out;
}

}  // namespace

namespace {

// Parses the TU files without dataset-level validation (a node task is a
// single graph with one label).
GraphDataset load_tu_raw(const fs::path& directory, const std::string& name) {
  const fs::path a_file = file_for(directory, name, "_A.txt");
  const fs::path ind_file = file_for(directory, name, "_graph_indicator.txt");
  const fs::path lab_file = file_for(directory, name, "_graph_labels.txt");
  const auto a_lines = require_lines(a_file);
  const auto indicator = read_int_column(ind_file, require_lines(ind_file));
  const auto graph_labels = read_int_column(lab_file, require_lines(lab_file));

  const std::size_t total_nodes = indicator.size();
  // Graph ids in ascending order become graph indices.
  std::set<long long> graph_ids(indicator.begin(), indicator.end());
  if (graph_ids.size() != graph_labels.size()) {
    throw InputError("graph_labels has " + std::to_string(graph_labels.size()) +
                     " lines but graph_indicator names " +
                     std::to_string(graph_ids.size()) + " graphs");
  }
  std::map<long long, int> graph_index;
  for (long long id : graph_ids) {
    graph_index.emplace(id, static_cast<int>(graph_index.size()));
  }
  const int num_graphs = static_cast<int>(graph_ids.size());
  std::vector<int> node_graph(total_nodes);
  std::vector<int> node_local(total_nodes);
  std::vector<int> graph_sizes(num_graphs, 0);
  for (std::size_t v = 0; v < total_nodes; ++v) {
    const int gi = graph_index.at(indicator[v]);
    node_graph[v] = gi;
    node_local[v] = graph_sizes[gi]++;
  }

  // Optional per-node and per-edge files.
  const fs::path nl_file = file_for(directory, name, "_node_labels.txt");
  const fs::path el_file = file_for(directory, name, "_edge_labels.txt");
  const fs::path na_file = file_for(directory, name, "_node_attributes.txt");
  std::vector<long long> node_labels;
  if (auto lines = read_lines(nl_file)) {
    node_labels = read_int_column(nl_file, *lines);
    if (node_labels.size() != total_nodes) {
      throw InputError("node_labels count does not match graph_indicator");
    }
    for (long long x : node_labels) {
      if (x < 0) throw InputError("negative node label in " + nl_file.string());
    }
  }
  std::vector<long long> edge_labels;
  if (auto lines = read_lines(el_file)) {
    edge_labels = read_int_column(el_file, *lines);
    if (edge_labels.size() != a_lines.size()) {
      throw InputError("edge_labels count does not match _A.txt");
    }
    for (long long x : edge_labels) {
      if (x < 0) throw InputError("negative edge label in " + el_file.string());
    }
  }
  int continuous_width = 0;
  std::vector<std::vector<double>> attributes;
  if (auto lines = read_lines(na_file)) {
    if (lines->size() != total_nodes) {
      throw InputError("node_attributes count does not match graph_indicator");
    }
    for (std::size_t i = 0; i < lines->size(); ++i) {
      std::vector<double> row;
      for (auto tok : split_commas((*lines)[i])) {
        row.push_back(parse_real(tok, na_file, static_cast<int>(i + 1)));
      }
      if (i == 0) continuous_width = static_cast<int>(row.size());
      if (static_cast<int>(row.size()) != continuous_width) {
        throw InputError(na_file.string() + ": inconsistent attribute count");
      }
      attributes.push_back(std::move(row));
    }
  }

  // Collect undirected edges per graph; first occurrence wins.
  std::vector<std::map<Edge, int>> graph_edges(num_graphs);
  for (std::size_t i = 0; i < a_lines.size(); ++i) {
    const int line_no = static_cast<int>(i + 1);
    auto parts = split_commas(a_lines[i]);
    if (parts.size() != 2) {
      throw InputError(a_file.string() + ":" + std::to_string(line_no) +
                       ": expected two comma separated node ids");
    }
    const long long a = parse_int(parts[0], a_file, line_no) - 1;
    const long long b = parse_int(parts[1], a_file, line_no) - 1;
    if (a < 0 || b < 0 || a >= static_cast<long long>(total_nodes) ||
        b >= static_cast<long long>(total_nodes)) {
      throw InputError(a_file.string() + ":" + std::to_string(line_no) +
                       ": node id out of range");
    }
    if (a == b) continue;  // self loops are not representable
    const int gi = node_graph[a];
    if (node_graph[b] != gi) {
      throw InputError(a_file.string() + ":" + std::to_string(line_no) +
                       ": edge crosses graphs");
    }
    Edge e{node_local[a], node_local[b]};
    if (e.u > e.v) std::swap(e.u, e.v);
    graph_edges[gi].emplace(e, edge_labels.empty() ? 0 : static_cast<int>(edge_labels[i]));
  }

  GraphDataset data;
  data.name = name;
  if (!node_labels.empty()) {
    data.schema.discrete_arities = {
        static_cast<int>(*std::max_element(node_labels.begin(), node_labels.end()) + 1)};
  }
  data.schema.continuous_count = continuous_width;
  if (!edge_labels.empty()) {
    data.schema.edge_label_arity =
        static_cast<int>(*std::max_element(edge_labels.begin(), edge_labels.end()) + 1);
  }
  const int dw = data.schema.discrete_count();

  std::vector<std::vector<int>> discrete(num_graphs);
  std::vector<std::vector<double>> continuous(num_graphs);
  for (std::size_t v = 0; v < total_nodes; ++v) {
    const int gi = node_graph[v];
    if (dw > 0) discrete[gi].push_back(static_cast<int>(node_labels[v]));
    if (continuous_width > 0) {
      continuous[gi].insert(continuous[gi].end(), attributes[v].begin(),
                            attributes[v].end());
    }
  }

  std::vector<long long> distinct_labels(graph_labels.begin(), graph_labels.end());
  std::sort(distinct_labels.begin(), distinct_labels.end());
  distinct_labels.erase(std::unique(distinct_labels.begin(), distinct_labels.end()),
                        distinct_labels.end());

  for (int gi = 0; gi < num_graphs; ++gi) {
    std::vector<Edge> edges;
    std::vector<int> labels;
    for (const auto& [e, label] : graph_edges[gi]) {
      edges.push_back(e);
      if (!edge_labels.empty()) labels.push_back(label);
    }
    data.graphs.emplace_back(graph_sizes[gi], std::move(edges), dw,
                             std::move(discrete[gi]), continuous_width,
                             std::move(continuous[gi]), std::move(labels));
    const auto it = std::lower_bound(distinct_labels.begin(), distinct_labels.end(),
                                     graph_labels[gi]);
    data.labels.push_back(static_cast<int>(it - distinct_labels.begin()));
  }
  return data;
}

}  // namespace

GraphDataset load_tu_dataset(const fs::path& directory, const std::string& name) {
  GraphDataset data = load_tu_raw(directory, name);
  data.validate();
  return data;
}

namespace {

// Writes the graphs as one TU block; returns nothing, shared by dataset and
// node task writers.
void write_graphs(const std::string& name, const FeatureSchema& schema,
                  const std::vector<const Graph*>& graphs,
                  const std::vector<int>& graph_labels, const fs::path& directory) {
  if (schema.discrete_count() > 1) {
    throw InputError("TU format stores at most one discrete node column");
  }
  fs::create_directories(directory);
  auto a_out = open_out(file_for(directory, name, "_A.txt"));
  auto ind_out = open_out(file_for(directory, name, "_graph_indicator.txt"));
  auto lab_out = open_out(file_for(directory, name, "_graph_labels.txt"));
  std::optional<std::ofstream> nl_out, el_out, na_out;
  if (schema.discrete_count() == 1) nl_out = open_out(file_for(directory, name, "_node_labels.txt"));
  if (schema.has_edge_labels()) el_out = open_out(file_for(directory, name, "_edge_labels.txt"));
  if (schema.continuous_count > 0) na_out = open_out(file_for(directory, name, "_node_attributes.txt"));

  long long offset = 1;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = *graphs[gi];
    for (int v = 0; v < g.node_count(); ++v) {
      ind_out << gi + 1 << '\n';
      if (nl_out) *nl_out << g.discrete(v)[0] << '\n';
      if (na_out) {
        auto c = g.continuous(v);
        for (std::size_t k = 0; k < c.size(); ++k) {
          *na_out << (k ? ", " : "") << format_real(c[k]);
        }
        *na_out << '\n';
      }
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges()[e];
      a_out << ed.u + offset << ", " << ed.v + offset << '\n';
      a_out << ed.v + offset << ", " << ed.u + offset << '\n';
      if (el_out) *el_out << g.edge_label(e) << '\n' << g.edge_label(e) << '\n';
    }
    lab_out << graph_labels[gi] << '\n';
    offset += g.node_count();
  }
}

}  // namespace

void write_tu_dataset(const GraphDataset& data, const fs::path& directory) {
  std::vector<const Graph*> graphs;
  for (const auto& g : data.graphs) graphs.push_back(&g);
  write_graphs(data.name, data.schema, graphs, data.labels, directory);
}

bool is_node_task_directory(const fs::path& directory, const std::string& name) {
  return fs::exists(file_for(directory, name, "_node_targets.txt"));
}

NodeTask load_node_task(const fs::path& directory, const std::string& name) {
  GraphDataset raw = load_tu_raw(directory, name);
  if (raw.graphs.size() != 1) {
    throw InputError("a node task directory must hold exactly one graph");
  }
  NodeTask task;
  task.name = name;
  task.schema = raw.schema;
  task.graph = std::move(raw.graphs[0]);
  const fs::path t_file = file_for(directory, name, "_node_targets.txt");
  const fs::path s_file = file_for(directory, name, "_node_split.txt");
  for (long long y : read_int_column(t_file, require_lines(t_file))) {
    if (y < 0) throw InputError("negative node target in " + t_file.string());
    task.node_labels.push_back(static_cast<int>(y));
  }
  const auto split = read_int_column(s_file, require_lines(s_file));
  if (static_cast<int>(split.size()) != task.graph.node_count()) {
    throw InputError("node_split count does not match node count");
  }
  for (int v = 0; v < static_cast<int>(split.size()); ++v) {
    if (split[v] == 0) {
      task.train_nodes.push_back(v);
    } else if (split[v] == 1) {
      task.test_nodes.push_back(v);
    } else if (split[v] != -1) {
      throw InputError(s_file.string() + ": split values must be 0, 1 or -1");
    }
  }
  task.validate();
  return task;
}

void write_node_task(const NodeTask& task, const fs::path& directory) {
  write_graphs(task.name, task.schema, {&task.graph}, {0}, directory);
  auto t_out = open_out(file_for(directory, task.name, "_node_targets.txt"));
  for (int y : task.node_labels) t_out << y << '\n';
  std::vector<int> split(task.graph.node_count(), -1);
  for (int v : task.train_nodes) split[v] = 0;
  for (int v : task.test_nodes) split[v] = 1;
  auto s_out = open_out(file_for(directory, task.name, "_node_split.txt"));
  for (int s : split) s_out << s << '\n';
}

}  // namespace symgraph
