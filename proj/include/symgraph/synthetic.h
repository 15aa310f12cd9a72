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

// Seeded generators for the synthetic motif benchmarks.
//
// Barabasi-Albert bases start from a star on m + 1 nodes; every later node
// attaches to m distinct earlier nodes drawn with probability proportional
// to degree. Motifs attach through one bridge edge from their anchor node to
// a uniformly drawn base node. All node features are a single constant
// column unless noted.
//
//   Ba2Motifs      1000 graphs: 20-node BA (m = 1) plus a house (class 0) or
//                  a five-cycle (class 1), alternating.
//   BAMultiShapes  1000 graphs of 40 nodes: BA (m = 1) sized so that base
//                  plus motifs has 40 nodes. Class 0 cycles through no motif,
//                  house, wheel, grid; class 1 cycles through the pairs
//                  house+wheel, house+grid, wheel+grid.
//   BaShapes       BA(300, m = 5) with 80 houses and 70 extra random edges
//                  between base nodes. Labels: base 0, top 1, middle 2,
//                  bottom 3.
//   TreeGrid       Balanced binary tree of height 8 (511 nodes) with 80 3x3
//                  grids attached at a corner to distinct tree nodes.
//                  Labels: tree 0, grid corner 1, grid edge 2, grid center 3.
//
// Node tasks carry a stratified 80/20 train/test node split.

#ifndef SYMGRAPH_SYNTHETIC_H_
#define SYMGRAPH_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "symgraph/graph.h"

namespace symgraph {

enum class MotifKind { kHouse, kFiveCycle, kGrid3x3, kWheel };

const char* motif_name(MotifKind kind);

struct Motif {
  int node_count = 0;
  std::vector<Edge> edges;
  NodeId anchor = 0;  // endpoint of the bridge edge
};

// house: bottom 0-1, middle 2-3, roof 4. wheel: hub 0, rim 1..5.
// grid3x3: row-major 0..8.
Motif make_motif(MotifKind kind);

// Edges of a BA graph on nodes [0, n).
std::vector<Edge> barabasi_albert(int n, int m, Rng& rng);

// Graph datasets record which motifs were planted in each graph.
struct PlantedGraphs {
  GraphDataset data;
  std::vector<std::vector<MotifKind>> motifs;
};

PlantedGraphs gen_ba2motifs(std::uint64_t seed, int num_graphs = 1000);
PlantedGraphs gen_bamultishapes(std::uint64_t seed, int num_graphs = 1000);

NodeTask gen_bashapes(std::uint64_t seed);
NodeTask gen_treegrid(std::uint64_t seed);

// Ground-truth class for a set of planted multishape motifs.
int multishapes_rule(const std::vector<MotifKind>& motifs);

// Names accepted by gen-data.
std::vector<std::string> synthetic_dataset_names();
bool is_node_dataset(const std::string& name);
// Ego radius used for a synthetic dataset when none is given: 2 for
// TreeGrid, whose grid cells are invisible within one hop, otherwise 1.
int default_hops(const std::string& name);

}  // namespace symgraph

#endif  // SYMGRAPH_SYNTHETIC_H_
