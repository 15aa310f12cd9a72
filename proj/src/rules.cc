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

#include "symgraph/rules.h"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <set>

namespace symgraph {

const char* count_op_symbol(CountOp op) {
  switch (op) {
    case CountOp::kGe:
      return ">=";
    case CountOp::kLt:
      return "<";
    case CountOp::kEq:
      return "=";
  }
  return "?";
}

bool CountLiteral::holds(double x) const {
  switch (op) {
    case CountOp::kGe:
      return x >= kappa;
    case CountOp::kLt:
      return x < kappa;
    case CountOp::kEq:
      return x == kappa;
  }
  return false;
}

bool Conjunction::holds(std::span<const double> x) const {
  for (const CountLiteral& l : literals) {
    if (!l.holds(x[l.input])) return false;
  }
  return true;
}

int QdnfRuleSet::classify(std::span<const double> x) const {
  int found = -1;
  for (int c = 0; c < num_classes; ++c) {
    for (const Conjunction& conj : by_class[c]) {
      if (!conj.holds(x)) continue;
      SYMGRAPH_CHECK(found < 0, "two rule conjunctions hold for one input");
      found = c;
    }
  }
  SYMGRAPH_CHECK(found >= 0, "no rule conjunction holds for the input");
  return found;
}

std::size_t QdnfRuleSet::conjunction_count() const {
  std::size_t n = 0;
  for (const auto& c : by_class) n += c.size();
  return n;
}

std::vector<int> QdnfRuleSet::inputs() const {
  std::set<int> seen;
  for (const auto& cls : by_class) {
    for (const auto& conj : cls) {
      for (const auto& l : conj.literals) seen.insert(l.input);
    }
  }
  return {seen.begin(), seen.end()};
}

std::string QdnfRuleSet::to_text(const std::function<std::string(int)>& input_name) const {
  std::string out;
  for (int c = 0; c < num_classes; ++c) {
    for (const Conjunction& conj : by_class[c]) {
      std::string body;
      for (const CountLiteral& l : conj.literals) {
        if (!body.empty()) body += " AND ";
        body += "(C[" + input_name(l.input) + "] " + count_op_symbol(l.op) + " " +
                std::to_string(l.kappa) + ")";
      }
      if (body.empty()) body = "TRUE";
      out += body + " => class " + std::to_string(c) + "\n";
    }
  }
  return out;
}

nlohmann::json QdnfRuleSet::to_json() const {
  nlohmann::json classes = nlohmann::json::array();
  for (int c = 0; c < num_classes; ++c) {
    nlohmann::json conjs = nlohmann::json::array();
    for (const Conjunction& conj : by_class[c]) {
      nlohmann::json lits = nlohmann::json::array();
      for (const CountLiteral& l : conj.literals) {
        lits.push_back({{"predicate", l.input}, {"op", count_op_symbol(l.op)}, {"kappa", l.kappa}});
      }
      conjs.push_back({{"leaf", conj.leaf_id}, {"support", conj.support}, {"literals", lits}});
    }
    classes.push_back({{"class", c}, {"conjunctions", conjs}});
  }
  return {{"num_classes", num_classes}, {"rules", classes}};
}

std::vector<CountLiteral> integer_literals(const std::vector<PathLiteral>& path) {
  // [lo, hi) per input over the integers.
  std::map<int, std::pair<long, long>> bounds;
  for (const PathLiteral& p : path) {
    const long cut = static_cast<long>(std::floor(p.threshold)) + 1;
    auto [it, fresh] = bounds.try_emplace(p.feature, LONG_MIN, LONG_MAX);
    if (p.greater) {
      it->second.first = std::max(it->second.first, cut);
    } else {
      it->second.second = std::min(it->second.second, cut);
    }
  }
  std::vector<CountLiteral> out;
  for (auto [input, b] : bounds) {
    auto [lo, hi] = b;
    if (lo != LONG_MIN && hi != LONG_MAX && hi == lo + 1) {
      out.push_back({input, CountOp::kEq, static_cast<int>(lo)});
      continue;
    }
    if (lo != LONG_MIN) out.push_back({input, CountOp::kGe, static_cast<int>(lo)});
    if (hi != LONG_MAX) out.push_back({input, CountOp::kLt, static_cast<int>(hi)});
  }
  return out;
}

QdnfRuleSet rules_from_tree(const DecisionTree& t) {
  QdnfRuleSet rules;
  rules.num_classes = t.num_classes();
  rules.by_class.resize(t.num_classes());
  for (const LeafPath& path : extract_paths(t)) {
    Conjunction conj;
    conj.literals = integer_literals(path.literals);
    conj.leaf_id = path.leaf_id;
    for (double c : path.class_counts) conj.support += c;
    rules.by_class[path.predicted_class].push_back(std::move(conj));
  }
  return rules;
}

}  // namespace symgraph
