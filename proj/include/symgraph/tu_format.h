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

// Reader and writer for the TUDataset text format.
//
//   <name>_A.txt                1-based "u, v" node pairs, one per line
//   <name>_graph_indicator.txt  1-based graph id, one line per node
//   <name>_graph_labels.txt     one integer per graph
//   <name>_node_labels.txt      optional, one integer per node
//   <name>_edge_labels.txt      optional, one integer per line of _A.txt
//   <name>_node_attributes.txt  optional, comma separated reals per node
//
// Node tasks add two files that are not part of the TU collection:
//
//   <name>_node_targets.txt     class index per node
//   <name>_node_split.txt       0 = train, 1 = test, -1 = unused, per node

#ifndef SYMGRAPH_TU_FORMAT_H_
#define SYMGRAPH_TU_FORMAT_H_

#include <filesystem>
#include <string>

#include "symgraph/graph.h"

namespace symgraph {

// Directed duplicates are merged into one undirected edge (the first
// occurrence's edge label wins). Graph labels are remapped to {0..C-1} in
// ascending order of the original values. Throws InputError on missing
// mandatory files, inconsistent counts, or unparsable numbers.
GraphDataset load_tu_dataset(const std::filesystem::path& directory,
                             const std::string& name);

// Writes each undirected edge in both directions, as the TU collection does.
void write_tu_dataset(const GraphDataset& data,
                      const std::filesystem::path& directory);

bool is_node_task_directory(const std::filesystem::path& directory,
                            const std::string& name);

NodeTask load_node_task(const std::filesystem::path& directory,
                        const std::string& name);
void write_node_task(const NodeTask& task, const std::filesystem::path& directory);

}  // namespace symgraph

#endif  // SYMGRAPH_TU_FORMAT_H_
