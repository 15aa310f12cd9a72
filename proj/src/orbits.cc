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

#include "symgraph/orbits.h"

#include <algorithm>
#include <set>

namespace symgraph {

namespace {

void check_schema(const Graph& g, const FeatureSchema& schema) {
  if (g.discrete_width() != schema.discrete_count() ||
      g.continuous_width() != schema.continuous_count) {
    throw InputError("subgraph feature widths do not match the schema");
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto d = g.discrete(v);
    for (int j = 0; j < schema.discrete_count(); ++j) {
      if (d[j] < 0 || d[j] >= schema.discrete_arities[j]) {
        throw InputError("discrete value " + std::to_string(d[j]) + " outside schema arity");
      }
    }
  }
  if (schema.has_edge_labels()) {
    for (int e = 0; e < g.edge_count(); ++e) {
      int l = g.edge_label(e);
      if (l < 0 || l >= schema.edge_label_arity) {
        throw InputError("edge label " + std::to_string(l) + " outside schema arity");
      }
    }
  }
}

// Histogram over each discrete column followed by continuous means.
void append_node_group(const Graph& g, std::span<const NodeId> nodes,
                       const FeatureSchema& schema, std::vector<double>& out) {
  for (int j = 0; j < schema.discrete_count(); ++j) {
    std::size_t base = out.size();
    out.resize(base + schema.discrete_arities[j], 0.0);
    for (NodeId v : nodes) out[base + g.discrete(v)[j]] += 1.0;
  }
  for (int j = 0; j < schema.continuous_count; ++j) {
    double sum = 0;
    for (NodeId v : nodes) sum += g.continuous(v)[j];
    out.push_back(nodes.empty() ? 0.0 : sum / static_cast<double>(nodes.size()));
  }
}

void append_edge_group(const Graph& g, std::span<const int> edges,
                       const FeatureSchema& schema, std::vector<double>& out) {
  for (int j = 0; j < schema.discrete_count(); ++j) {
    const int a = schema.discrete_arities[j];
    std::size_t base = out.size();
    out.resize(base + static_cast<std::size_t>(a) * (a + 1) / 2, 0.0);
    for (int e : edges) {
      const Edge& ed = g.edges()[e];
      out[base + unordered_pair_index(g.discrete(ed.u)[j], g.discrete(ed.v)[j], a)] += 1.0;
    }
  }
  if (schema.has_edge_labels()) {
    std::size_t base = out.size();
    out.resize(base + schema.edge_label_arity, 0.0);
    for (int e : edges) out[base + g.edge_label(e)] += 1.0;
  }
  for (int j = 0; j < schema.continuous_count; ++j) {
    double sum = 0;
    for (int e : edges) {
      const Edge& ed = g.edges()[e];
      sum += g.continuous(ed.u)[j] + g.continuous(ed.v)[j];
    }
    out.push_back(edges.empty() ? 0.0 : sum / (2.0 * static_cast<double>(edges.size())));
  }
}

std::vector<NodeId> edge_orbit_nodes(const Graph& g, std::span<const int> edges) {
  std::set<NodeId> nodes;
  for (int e : edges) {
    nodes.insert(g.edges()[e].u);
    nodes.insert(g.edges()[e].v);
  }
  return {nodes.begin(), nodes.end()};
}

// One-hot means over discrete columns, then continuous means.
void append_mean_features(const Graph& g, std::span<const NodeId> nodes,
                          const FeatureSchema& schema, std::vector<double>& out) {
  std::size_t before = out.size();
  append_node_group(g, nodes, schema, out);
  if (nodes.empty()) return;
  std::size_t hist_end = before;
  for (int a : schema.discrete_arities) hist_end += a;
  for (std::size_t i = before; i < hist_end; ++i) out[i] /= static_cast<double>(nodes.size());
}

}  // namespace

std::string OrbitDecomposition::layout_signature() const {
  std::string s = "P:";
  for (const auto& sig : partition.signatures) {
    s += sig;
    s += ',';
  }
  s += ";N:";
  for (int c : node_orbits) s += std::to_string(c) + ',';
  s += ";E:";
  for (auto [a, b] : edge_keys) s += std::to_string(a) + '-' + std::to_string(b) + ',';
  return s;
}

OrbitDecomposition stable_orbit_decomposition(const Subgraph& s, const HashConfig& config) {
  OrbitDecomposition d;
  WlOptions opts;
  opts.iterations = 0;
  opts.root_flag = config.rooted;
  opts.node_features = config.node_features;
  opts.edge_labels = config.edge_labels;
  d.partition = wl_refine(s, opts);

  const Graph& g = s.local;
  std::map<std::pair<int, int>, std::vector<int>> groups;
  std::vector<bool> consumed(g.node_count(), false);
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edges()[e];
    int a = d.partition.color[ed.u], b = d.partition.color[ed.v];
    groups[{std::min(a, b), std::max(a, b)}].push_back(e);
    consumed[ed.u] = consumed[ed.v] = true;
  }
  for (auto& [key, edges] : groups) {
    d.edge_keys.push_back(key);
    d.edge_orbits.push_back(std::move(edges));
  }
  for (std::size_t c = 0; c < d.partition.classes.size(); ++c) {
    const auto& members = d.partition.classes[c];
    bool contained = std::all_of(members.begin(), members.end(),
                                 [&](NodeId v) { return consumed[v]; });
    if (!contained) d.node_orbits.push_back(static_cast<int>(c));
  }
  return d;
}

std::string FeatureNames::discrete(const FeatureSchema& schema, int column, int value) const {
  if (column < static_cast<int>(discrete_values.size()) &&
      value < static_cast<int>(discrete_values[column].size())) {
    return discrete_values[column][value];
  }
  if (schema.discrete_count() == 1) return std::to_string(value);
  return "d" + std::to_string(column) + "=" + std::to_string(value);
}

std::string FeatureNames::continuous_name(int column) const {
  if (column < static_cast<int>(continuous.size())) return continuous[column];
  return "x" + std::to_string(column);
}

std::string FeatureNames::edge_label(int label) const {
  if (label < static_cast<int>(edge_labels.size())) return edge_labels[label];
  return std::to_string(label);
}

int node_group_width(const FeatureSchema& schema) {
  int w = schema.continuous_count;
  for (int a : schema.discrete_arities) w += a;
  return w;
}

int edge_group_width(const FeatureSchema& schema) {
  int w = schema.continuous_count + schema.edge_label_arity;
  for (int a : schema.discrete_arities) w += a * (a + 1) / 2;
  return w;
}

int unordered_pair_index(int a, int b, int arity) {
  if (a > b) std::swap(a, b);
  return a * arity - a * (a - 1) / 2 + (b - a);
}

std::vector<double> orbit_feature_vector(const Subgraph& s, const OrbitDecomposition& d,
                                         const FeatureSchema& schema) {
  const Graph& g = s.local;
  check_schema(g, schema);
  SYMGRAPH_CHECK(d.partition.color.size() == static_cast<std::size_t>(g.node_count()),
                 "orbit decomposition does not belong to this subgraph");
  std::vector<double> out;
  out.reserve(d.node_orbits.size() * node_group_width(schema) +
              d.edge_orbits.size() * edge_group_width(schema));
  for (int c : d.node_orbits) append_node_group(g, d.partition.classes[c], schema, out);
  for (const auto& edges : d.edge_orbits) append_edge_group(g, edges, schema, out);
  return out;
}

std::vector<std::string> orbit_slot_names(const OrbitDecomposition& d,
                                          const FeatureSchema& schema,
                                          const FeatureNames& names) {
  std::vector<std::string> out;
  int k = 0;
  auto prefix = [&] { return "Orbit " + std::to_string(k) + ": "; };
  for (std::size_t i = 0; i < d.node_orbits.size(); ++i, ++k) {
    for (int j = 0; j < schema.discrete_count(); ++j) {
      for (int x = 0; x < schema.discrete_arities[j]; ++x) {
        out.push_back(prefix() + "#" + names.discrete(schema, j, x));
      }
    }
    for (int j = 0; j < schema.continuous_count; ++j) {
      out.push_back(prefix() + "mean(" + names.continuous_name(j) + ")");
    }
  }
  for (std::size_t i = 0; i < d.edge_orbits.size(); ++i, ++k) {
    for (int j = 0; j < schema.discrete_count(); ++j) {
      const int a = schema.discrete_arities[j];
      for (int x = 0; x < a; ++x) {
        for (int y = x; y < a; ++y) {
          out.push_back(prefix() + "#(" + names.discrete(schema, j, x) + "-" +
                        names.discrete(schema, j, y) + ")");
        }
      }
    }
    for (int l = 0; l < schema.edge_label_arity; ++l) {
      out.push_back(prefix() + "#label=" + names.edge_label(l));
    }
    for (int j = 0; j < schema.continuous_count; ++j) {
      out.push_back(prefix() + "mean(" + names.continuous_name(j) + ")");
    }
  }
  return out;
}

std::vector<double> hop_distance_feature_vector(const Subgraph& s, const FeatureSchema& schema) {
  const Graph& g = s.local;
  check_schema(g, schema);
  std::vector<int> dist = bfs_distances(g, s.root);
  int max_d = 0;
  for (int x : dist) max_d = std::max(max_d, x);
  std::vector<std::vector<NodeId>> shells(max_d + 1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (dist[v] >= 0) shells[dist[v]].push_back(v);
  }
  std::vector<double> out;
  for (const auto& shell : shells) append_node_group(g, shell, schema, out);
  return out;
}

std::vector<std::string> hop_slot_names(const Subgraph& s, const FeatureSchema& schema,
                                        const FeatureNames& names) {
  std::vector<int> dist = bfs_distances(s.local, s.root);
  const int max_d = dist.empty() ? 0 : *std::max_element(dist.begin(), dist.end());
  std::vector<std::string> out;
  for (int d = 0; d <= max_d; ++d) {
    const std::string prefix = "Hop " + std::to_string(d) + ": ";
    for (int j = 0; j < schema.discrete_count(); ++j) {
      for (int x = 0; x < schema.discrete_arities[j]; ++x) {
        out.push_back(prefix + "#" + names.discrete(schema, j, x));
      }
    }
    for (int j = 0; j < schema.continuous_count; ++j) {
      out.push_back(prefix + "mean(" + names.continuous_name(j) + ")");
    }
  }
  return out;
}

SlotRange NodeEncodingRegistry::observe(const StructHash& hash, int width) {
  auto it = ranges_.find(hash);
  if (it != ranges_.end()) {
    SYMGRAPH_CHECK(it->second.width == width, "hash observed with two different widths");
    return it->second;
  }
  SYMGRAPH_CHECK(!frozen_, "registry is frozen");
  SlotRange r{next_offset_, width};
  next_offset_ += width;
  ranges_.emplace(hash, r);
  order_.push_back(hash);
  return r;
}

std::optional<SlotRange> NodeEncodingRegistry::find(const StructHash& hash) const {
  auto it = ranges_.find(hash);
  if (it == ranges_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> SparseVector::dense() const {
  std::vector<double> out(dimension, 0.0);
  for (auto [i, x] : entries) out[i] = x;
  return out;
}

int node_descriptor_width(const FeatureSchema& schema) { return 2 + node_group_width(schema); }

std::vector<double> node_orbit_descriptor(const Subgraph& s, const OrbitDecomposition& d,
                                          const FeatureSchema& schema) {
  const Graph& g = s.local;
  check_schema(g, schema);
  std::vector<double> out;
  for (int c : d.node_orbits) {
    const auto& members = d.partition.classes[c];
    bool center = std::find(members.begin(), members.end(), s.root) != members.end();
    out.push_back(center ? 1.0 : 0.0);
    out.push_back(static_cast<double>(members.size()));
    append_mean_features(g, members, schema, out);
  }
  for (const auto& edges : d.edge_orbits) {
    std::vector<NodeId> nodes = edge_orbit_nodes(g, edges);
    bool center = std::binary_search(nodes.begin(), nodes.end(), s.root);
    out.push_back(center ? 1.0 : 0.0);
    out.push_back(static_cast<double>(edges.size()));
    append_mean_features(g, nodes, schema, out);
  }
  return out;
}

NodeEncodingRegistry build_node_registry(const Graph& g, const FeatureSchema& schema,
                                         std::span<const int> nodes, int hops,
                                         const HashConfig& config) {
  NodeEncodingRegistry registry;
  const int width_per_orbit = node_descriptor_width(schema);
  for (int v : nodes) {
    Subgraph s = ego_subgraph(g, v, hops);
    StructHash h = subgraph_hash(s, config);
    if (registry.find(h)) continue;
    OrbitDecomposition d = stable_orbit_decomposition(s, config);
    registry.observe(h, static_cast<int>(d.orbit_count()) * width_per_orbit);
  }
  registry.freeze();
  return registry;
}

SparseVector node_global_encoding(NodeId v, const Graph& g, const FeatureSchema& schema,
                                  int hops, const NodeEncodingRegistry& registry,
                                  const HashConfig& config) {
  SparseVector out;
  out.dimension = registry.total_width();
  Subgraph s = ego_subgraph(g, v, hops);
  StructHash h = subgraph_hash(s, config);
  auto range = registry.find(h);
  if (!range) {
    out.entries.emplace_back(registry.unknown_slot(), 1.0);
    return out;
  }
  OrbitDecomposition d = stable_orbit_decomposition(s, config);
  std::vector<double> desc = node_orbit_descriptor(s, d, schema);
  SYMGRAPH_CHECK(static_cast<int>(desc.size()) == range->width,
                 "descriptor width differs from the registered layout");
  for (std::size_t i = 0; i < desc.size(); ++i) {
    if (desc[i] != 0.0) out.entries.emplace_back(range->offset + static_cast<int>(i), desc[i]);
  }
  return out;
}

}  // namespace symgraph
