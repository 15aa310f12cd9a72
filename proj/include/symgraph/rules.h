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

// Quantitative DNF rules read off a tree over integer-valued inputs.
//
// A path literal x <= t becomes x < floor(t) + 1 and x > t becomes
// x >= floor(t) + 1, which is exact for integer x. Literals on the same
// input within one path are merged into the tightest bounds; a lower bound
// k with upper bound k + 1 is written x = k.

#ifndef SYMGRAPH_RULES_H_
#define SYMGRAPH_RULES_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "symgraph/tree.h"

namespace symgraph {

enum class CountOp { kGe, kLt, kEq };

const char* count_op_symbol(CountOp op);

struct CountLiteral {
  int input = 0;
  CountOp op = CountOp::kGe;
  int kappa = 0;
  bool operator==(const CountLiteral&) const = default;

  bool holds(double x) const;
};

struct Conjunction {
  std::vector<CountLiteral> literals;  // ascending input
  int leaf_id = 0;
  double support = 0.0;  // training rows in the leaf

  bool holds(std::span<const double> x) const;
};

struct QdnfRuleSet {
  int num_classes = 0;
  std::vector<std::vector<Conjunction>> by_class;

  // Class of the single conjunction that holds. Throws InvariantError if
  // none or several hold.
  int classify(std::span<const double> x) const;
  std::size_t conjunction_count() const;
  // Inputs mentioned by any literal, ascending.
  std::vector<int> inputs() const;

  std::string to_text(const std::function<std::string(int)>& input_name) const;
  nlohmann::json to_json() const;
};

// Every leaf becomes one conjunction of the class it predicts.
QdnfRuleSet rules_from_tree(const DecisionTree& t);

// Literals of one root-to-leaf path after integer rewriting and merging.
std::vector<CountLiteral> integer_literals(const std::vector<PathLiteral>& path);

}  // namespace symgraph

#endif  // SYMGRAPH_RULES_H_
