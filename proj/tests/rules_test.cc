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

#include <gtest/gtest.h>

#include "symgraph/rules.h"

namespace symgraph {
namespace {

using Lits = std::vector<CountLiteral>;

TEST(IntegerLiterals, SingleBounds) {
  EXPECT_EQ(integer_literals({{0, false, 2.5}}), (Lits{{0, CountOp::kLt, 3}}));
  EXPECT_EQ(integer_literals({{0, true, 2.5}}), (Lits{{0, CountOp::kGe, 3}}));
  EXPECT_EQ(integer_literals({{1, true, 0.5}}), (Lits{{1, CountOp::kGe, 1}}));
  EXPECT_EQ(integer_literals({{1, false, 0.5}}), (Lits{{1, CountOp::kLt, 1}}));
  // Thresholds on an integer are rewritten the same way.
  EXPECT_EQ(integer_literals({{0, false, 2.0}}), (Lits{{0, CountOp::kLt, 3}}));
  EXPECT_EQ(integer_literals({{0, true, 2.0}}), (Lits{{0, CountOp::kGe, 3}}));
}

TEST(IntegerLiterals, MergesPerInput) {
  EXPECT_EQ(integer_literals({{0, true, 0.5}, {0, true, 1.5}}), (Lits{{0, CountOp::kGe, 2}}));
  EXPECT_EQ(integer_literals({{0, false, 4.5}, {0, false, 2.5}}), (Lits{{0, CountOp::kLt, 3}}));
  EXPECT_EQ(integer_literals({{0, true, 0.5}, {0, false, 3.5}}),
            (Lits{{0, CountOp::kGe, 1}, {0, CountOp::kLt, 4}}));
  EXPECT_EQ(integer_literals({{0, true, 0.5}, {0, false, 1.5}}), (Lits{{0, CountOp::kEq, 1}}));
  EXPECT_EQ(integer_literals({{2, true, 0.5}, {0, false, 0.5}}),
            (Lits{{0, CountOp::kLt, 1}, {2, CountOp::kGe, 1}}));
}

TEST(IntegerLiterals, ExactOnIntegers) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<PathLiteral> path;
    const int n = 1 + static_cast<int>(rng.below(4));
    for (int i = 0; i < n; ++i) {
      path.push_back({static_cast<int>(rng.below(2)), rng.bernoulli(0.5),
                      static_cast<double>(rng.below(8)) + (rng.bernoulli(0.5) ? 0.5 : 0.0)});
    }
    Lits lits = integer_literals(path);
    for (int a = 0; a < 10; ++a) {
      for (int b = 0; b < 10; ++b) {
        const double x[2] = {static_cast<double>(a), static_cast<double>(b)};
        bool raw = true;
        for (const auto& p : path) raw &= p.greater ? x[p.feature] > p.threshold
                                                    : x[p.feature] <= p.threshold;
        bool merged = true;
        for (const auto& l : lits) merged &= l.holds(x[l.input]);
        ASSERT_EQ(raw, merged);
      }
    }
  }
}

TEST(RulesFromTree, ExactlyOneConjunctionAgreesWithTree) {
  Rng rng(11);
  Matrix X(300, 4);
  std::vector<int> y(300);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    for (std::size_t c = 0; c < X.cols(); ++c) X.at(i, c) = static_cast<double>(rng.below(5));
    y[i] = (X.at(i, 0) >= 2 && X.at(i, 1) < 3) || X.at(i, 3) == 4 ? 1 : 0;
    if (rng.bernoulli(0.05)) y[i] = 2;
  }
  DecisionTree t = fit_tree_leafwise(X, y, 3, {.max_leaves = 20});
  QdnfRuleSet rules = rules_from_tree(t);
  EXPECT_EQ(rules.conjunction_count(), static_cast<std::size_t>(t.leaf_count()));
  double support = 0;
  for (const auto& cls : rules.by_class) {
    for (const auto& conj : cls) support += conj.support;
  }
  EXPECT_EQ(support, 300.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = static_cast<double>(rng.below(7));
    ASSERT_EQ(rules.classify(x), t.predict(x));
  }
}

TEST(RulesFromTree, RootOnlyTreeIsOneEmptyConjunction) {
  Matrix X(4, 1, 1.0);
  std::vector<int> y = {1, 1, 0, 1};
  QdnfRuleSet rules = rules_from_tree(fit_tree_leafwise(X, y, 2, {}));
  ASSERT_EQ(rules.conjunction_count(), 1u);
  EXPECT_TRUE(rules.by_class[1].front().literals.empty());
  EXPECT_EQ(rules.to_text([](int j) { return std::to_string(j); }), "TRUE => class 1\n");
  const double x[1] = {7};
  EXPECT_EQ(rules.classify(x), 1);
}

TEST(RulesText, Format) {
  QdnfRuleSet rules;
  rules.num_classes = 2;
  rules.by_class.resize(2);
  rules.by_class[0].push_back({{{0, CountOp::kLt, 1}}, 1, 5});
  rules.by_class[1].push_back({{{0, CountOp::kGe, 1}, {3, CountOp::kEq, 2}}, 2, 5});
  auto name = [](int j) { return "p" + std::to_string(j); };
  EXPECT_EQ(rules.to_text(name),
            "(C[p0] < 1) => class 0\n(C[p0] >= 1) AND (C[p3] = 2) => class 1\n");
  EXPECT_EQ(rules.inputs(), (std::vector<int>{0, 3}));
  nlohmann::json j = rules.to_json();
  EXPECT_EQ(j["rules"][1]["conjunctions"][0]["literals"][1]["op"], "=");
}

TEST(RulesClassify, OverlapAndGapAreInvariantErrors) {
  QdnfRuleSet rules;
  rules.num_classes = 2;
  rules.by_class.resize(2);
  rules.by_class[0].push_back({{{0, CountOp::kLt, 2}}, 1, 1});
  rules.by_class[1].push_back({{{0, CountOp::kGe, 1}, {0, CountOp::kLt, 3}}, 2, 1});
  const double overlap[1] = {1}, gap[1] = {5};
  EXPECT_THROW(rules.classify(overlap), InvariantError);
  EXPECT_THROW(rules.classify(gap), InvariantError);
}

}  // namespace
}  // namespace symgraph
