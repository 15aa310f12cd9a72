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

#include "symgraph/evolution.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

namespace symgraph {

void FitnessParams::validate() const {
  if (gamma < 0) throw InputError("gamma must be >= 0");
  if (judge_max_leaves < 1) throw InputError("judge max leaves must be >= 1");
  if (judge_ccp_alpha < 0) throw InputError("judge ccp alpha must be >= 0");
  if (!(validation_fraction > 0 && validation_fraction < 1)) {
    throw InputError("validation fraction must be in (0, 1)");
  }
}

void GaParams::validate() const {
  if (population < 1) throw InputError("population must be >= 1");
  if (generations < 0) throw InputError("generations must be >= 0");
  if (!(crossover_probability >= 0 && crossover_probability <= 1)) {
    throw InputError("crossover probability must be in [0, 1]");
  }
  if (elite < 0 || elite > population) throw InputError("elite count must be in [0, population]");
  if (tournament_size < 1) throw InputError("tournament size must be >= 1");
  if (!(mutation_rate >= 0 && mutation_rate <= 1)) {
    throw InputError("mutation rate must be in [0, 1]");
  }
}

double penalized_fitness(double accuracy, double gamma, const Genome& genome) {
  long l1 = std::accumulate(genome.begin(), genome.end(), 0L);
  return accuracy - gamma * static_cast<double>(l1);
}

FitnessResult fitness(const Genome& genome, const PredicateBank& bank,
                      std::span<const int> labels, const FitnessParams& params) {
  if (labels.size() != bank.train_graph_count()) {
    throw InputError("label count does not match the training graphs");
  }
  Vocabulary vocab = build_vocabulary(bank, genome);
  Matrix V = count_matrix_cached(bank, vocab);
  if (params.binary_counts) V = binarize(V);
  SplitIndices fold =
      stratified_split(labels, 1.0 - params.validation_fraction, mix_seed(params.seed, 0xF17));
  TreeParams tp;
  tp.max_leaves = params.judge_max_leaves;
  tp.ccp_alpha = params.judge_ccp_alpha;
  tp.seed = params.seed;
  DecisionTree judge = fit_tree_on_rows(V, labels, bank.num_classes(), fold.train, tp);
  int correct = 0;
  for (int i : fold.test) correct += judge.predict(V.row(i)) == labels[i];
  FitnessResult r;
  r.accuracy = static_cast<double>(correct) / static_cast<double>(fold.test.size());
  r.value = penalized_fitness(r.accuracy, params.gamma, genome);
  return r;
}

std::vector<Genome> init_population(int size, std::size_t genes, int max_leaves,
                                    std::uint64_t seed) {
  if (size < 1) throw InputError("population must be >= 1");
  if (max_leaves < 1) throw InputError("max leaves must be >= 1");
  Rng rng(seed);
  std::vector<Genome> pop;
  pop.push_back(Genome(genes, 1));
  while (static_cast<int>(pop.size()) < size) {
    Genome g(genes);
    for (int& x : g) x = static_cast<int>(rng.uniform_int(1, max_leaves));
    pop.push_back(std::move(g));
  }
  return pop;
}

const Genome& tournament_select(const std::vector<Genome>& population,
                                const std::vector<double>& scores, int size, Rng& rng) {
  SYMGRAPH_CHECK(!population.empty() && population.size() == scores.size(),
                 "tournament needs one score per member");
  std::size_t best = rng.below(population.size());
  for (int t = 1; t < size; ++t) {
    std::size_t c = rng.below(population.size());
    if (scores[c] > scores[best] || (scores[c] == scores[best] && c < best)) best = c;
  }
  return population[best];
}

Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng) {
  SYMGRAPH_CHECK(a.size() == b.size(), "crossover parents differ in length");
  Genome child(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) child[k] = rng.bernoulli(0.5) ? a[k] : b[k];
  return child;
}

Genome creep_mutate(const Genome& g, double mu, int max_leaves, Rng& rng) {
  Genome out = g;
  for (int& x : out) {
    if (!rng.bernoulli(mu)) continue;
    x += rng.bernoulli(0.5) ? 1 : -1;
    x = std::clamp(x, 1, max_leaves);
  }
  return out;
}

EvolutionResult evolve(const PredicateBank& bank, std::span<const int> labels,
                       const GaParams& ga, const FitnessParams& fp) {
  ga.validate();
  fp.validate();
  const int cap = bank.max_leaves_cap();
  std::map<Genome, double> cache;
  EvolutionResult result;

  auto score = [&](const std::vector<Genome>& pop) {
    std::vector<Genome> fresh;
    for (const Genome& g : pop) {
      if (!cache.count(g) && std::find(fresh.begin(), fresh.end(), g) == fresh.end()) {
        fresh.push_back(g);
      }
    }
    std::vector<double> values(fresh.size());
    parallel_for(fresh.size(), [&](std::size_t i) {
      values[i] = fitness(fresh[i], bank, labels, fp).value;
    });
    for (std::size_t i = 0; i < fresh.size(); ++i) cache.emplace(fresh[i], values[i]);
    result.evaluations += fresh.size();
    std::vector<double> scores;
    for (const Genome& g : pop) scores.push_back(cache.at(g));
    return scores;
  };
  auto record = [&](int gen, const std::vector<Genome>& pop, const std::vector<double>& scores) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
      if (scores[i] > scores[arg]) arg = i;
    }
    if (gen == 0 || scores[arg] > result.best_fitness) {
      result.best = pop[arg];
      result.best_fitness = scores[arg];
    }
    GenerationStats s;
    s.generation = gen;
    s.best = result.best_fitness;
    s.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    s.best_l1 = std::accumulate(result.best.begin(), result.best.end(), 0L);
    result.trace.push_back(s);
  };

  std::vector<Genome> pop = init_population(ga.population, bank.group_count(), cap, ga.seed);
  std::vector<double> scores = score(pop);
  record(0, pop, scores);

  for (int gen = 1; gen <= ga.generations; ++gen) {
    Rng rng(mix_seed(ga.seed, static_cast<std::uint64_t>(gen)));
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<Genome> next;
    for (int e = 0; e < ga.elite; ++e) next.push_back(pop[order[e]]);
    while (static_cast<int>(next.size()) < ga.population) {
      Genome child = tournament_select(pop, scores, ga.tournament_size, rng);
      if (rng.bernoulli(ga.crossover_probability)) {
        const Genome& other = tournament_select(pop, scores, ga.tournament_size, rng);
        child = uniform_crossover(child, other, rng);
      }
      next.push_back(creep_mutate(child, ga.mutation_rate, cap, rng));
    }
    pop = std::move(next);
    scores = score(pop);
    record(gen, pop, scores);
  }
  return result;
}

std::string trace_csv(const std::vector<GenerationStats>& trace) {
  std::string out = "generation,best,mean,l1\n";
  char line[128];
  for (const auto& s : trace) {
    std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%ld\n", s.generation, s.best, s.mean,
                  s.best_l1);
    out += line;
  }
  return out;
}

}  // namespace symgraph
