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

// Orbit decomposition of rooted subgraphs and the fixed-layout feature
// vectors built on top of it.
//
// Orbits are stable color-refinement classes, ordered by signature string.
// Each edge is keyed by the (min, max) rank of its endpoint classes, and
// edge groups are ordered by that key. Node classes whose members are all
// edge endpoints are dropped, so a connected subgraph with at least one edge
// is described by its edge orbits alone.
//
// Feature layout per orbit:
//   node orbit: count histogram per discrete column, then continuous means
//   edge orbit: unordered endpoint-value pair histogram per discrete column,
//               then an edge-label histogram (if the schema has labels),
//               then continuous means over endpoint occurrences

#ifndef SYMGRAPH_ORBITS_H_
#define SYMGRAPH_ORBITS_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symgraph/graph.h"
#include "symgraph/hashing.h"

namespace symgraph {

struct OrbitDecomposition {
  // Full stable partition; class index is the node rank.
  ColorPartition partition;
  // Surviving node orbits, as indices into partition.classes.
  std::vector<int> node_orbits;
  // Edge orbits: rank pair and member edge indices into local.edges().
  std::vector<std::pair<int, int>> edge_keys;
  std::vector<std::vector<int>> edge_orbits;

  std::size_t orbit_count() const { return node_orbits.size() + edge_orbits.size(); }
  // Text that identifies the layout; equal for any two subgraphs whose
  // vectors line up slot by slot.
  std::string layout_signature() const;
};

// Refinement uses the structural options of `config` (root flag, and node
// features or edge labels if the hash includes them) and always runs to a
// stable partition.
OrbitDecomposition stable_orbit_decomposition(const Subgraph& s,
                                              const HashConfig& config = {});

// Optional display names for feature values. Missing entries fall back to
// generic names ("3", "d1=3", "x0", "label=2").
struct FeatureNames {
  std::vector<std::vector<std::string>> discrete_values;  // [column][value]
  std::vector<std::string> continuous;
  std::vector<std::string> edge_labels;

  std::string discrete(const FeatureSchema& schema, int column, int value) const;
  std::string continuous_name(int column) const;
  std::string edge_label(int label) const;
};

int node_group_width(const FeatureSchema& schema);
int edge_group_width(const FeatureSchema& schema);

// Position of the unordered pair {a, b} among arity*(arity+1)/2 pairs.
int unordered_pair_index(int a, int b, int arity);

std::vector<double> orbit_feature_vector(const Subgraph& s, const OrbitDecomposition& d,
                                         const FeatureSchema& schema);

// Slot names for orbit_feature_vector, e.g. "Orbit 0: #(C-C)".
std::vector<std::string> orbit_slot_names(const OrbitDecomposition& d,
                                          const FeatureSchema& schema,
                                          const FeatureNames& names = {});

// Ablation encoder: node-group aggregation over hop shells 0..max distance
// from the root instead of over orbits.
std::vector<double> hop_distance_feature_vector(const Subgraph& s,
                                                const FeatureSchema& schema);
std::vector<std::string> hop_slot_names(const Subgraph& s, const FeatureSchema& schema,
                                        const FeatureNames& names = {});

// ---------------------------------------------------------------------------
// Node classification encoding.

struct SlotRange {
  int offset = 0;
  int width = 0;
};

class NodeEncodingRegistry {
 public:
  // Assigns the next free range to an unseen hash; returns its range.
  SlotRange observe(const StructHash& hash, int width);
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::optional<SlotRange> find(const StructHash& hash) const;
  // Width of the registered ranges plus one unknown-hash flag slot.
  int total_width() const { return next_offset_ + 1; }
  int unknown_slot() const { return next_offset_; }
  std::size_t hash_count() const { return order_.size(); }
  const std::vector<StructHash>& hashes() const { return order_; }

 private:
  std::map<StructHash, SlotRange> ranges_;
  std::vector<StructHash> order_;
  int next_offset_ = 0;
  bool frozen_ = false;
};

struct SparseVector {
  int dimension = 0;
  std::vector<std::pair<int, double>> entries;  // ascending index

  std::vector<double> dense() const;
};

// Per-orbit descriptor [center indicator, cardinality, mean features] with
// discrete columns one-hot encoded before averaging. Edge orbits count edges
// and average over their distinct endpoint nodes.
std::vector<double> node_orbit_descriptor(const Subgraph& s, const OrbitDecomposition& d,
                                          const FeatureSchema& schema);
int node_descriptor_width(const FeatureSchema& schema);

// First pass: registers the ego hash of every node in `nodes`, in order,
// then freezes.
NodeEncodingRegistry build_node_registry(const Graph& g, const FeatureSchema& schema,
                                         std::span<const int> nodes, int hops,
                                         const HashConfig& config = {});

SparseVector node_global_encoding(NodeId v, const Graph& g, const FeatureSchema& schema,
                                  int hops, const NodeEncodingRegistry& registry,
                                  const HashConfig& config = {});

}  // namespace symgraph

#endif  // SYMGRAPH_ORBITS_H_
