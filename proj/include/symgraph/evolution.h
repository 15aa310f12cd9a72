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

// Genetic search over per-hash leaf counts. Fitness is judge-tree accuracy
// on a held-out fold of the training graphs minus gamma * sum(lambda), with
// count matrices built only from cached lookup tables.

#ifndef SYMGRAPH_EVOLUTION_H_
#define SYMGRAPH_EVOLUTION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symgraph/predicates.h"

namespace symgraph {

struct FitnessParams {
  double gamma = 1e-4;
  int judge_max_leaves = 48;
  double judge_ccp_alpha = 0.001;
  double validation_fraction = 0.25;
  std::uint64_t seed = 0;
  bool binary_counts = false;  // score on binarized count vectors

  void validate() const;
};

struct GaParams {
  int population = 100;
  int generations = 5;
  double crossover_probability = 0.7;
  int elite = 2;
  int tournament_size = 3;
  double mutation_rate = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

double penalized_fitness(double accuracy, double gamma, const Genome& genome);

struct FitnessResult {
  double accuracy = 0.0;
  double value = 0.0;
};

// `labels` are the training graph labels, in bank order.
FitnessResult fitness(const Genome& genome, const PredicateBank& bank,
                      std::span<const int> labels, const FitnessParams& params);

// Member 0 is all ones; the rest are uniform in 1..max_leaves.
std::vector<Genome> init_population(int size, std::size_t genes, int max_leaves,
                                    std::uint64_t seed);

// Best of `size` uniform draws (with replacement); ties go to the lower index.
const Genome& tournament_select(const std::vector<Genome>& population,
                                const std::vector<double>& scores, int size, Rng& rng);

Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng);

// Each gene moves by +1 or -1 with probability mu, clamped to 1..max_leaves.
Genome creep_mutate(const Genome& g, double mu, int max_leaves, Rng& rng);

struct GenerationStats {
  int generation = 0;
  double best = 0.0;  // best fitness seen so far
  double mean = 0.0;  // population mean this generation
  long best_l1 = 0;   // sum of the best-so-far genome
};

struct EvolutionResult {
  Genome best;
  double best_fitness = 0.0;
  std::vector<GenerationStats> trace;  // generation 0 is the initial population
  std::size_t evaluations = 0;         // distinct genomes scored
};

EvolutionResult evolve(const PredicateBank& bank, std::span<const int> labels,
                       const GaParams& ga, const FitnessParams& fp);

// "generation,best,mean,l1" header plus one row per generation.
std::string trace_csv(const std::vector<GenerationStats>& trace);

}  // namespace symgraph

#endif  // SYMGRAPH_EVOLUTION_H_
