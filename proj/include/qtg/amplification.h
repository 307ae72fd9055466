// Copyright 2026 The QTG Knapsack Authors
//
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

#ifndef QTG_AMPLIFICATION_H_
#define QTG_AMPLIFICATION_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "qtg/instance.h"
#include "qtg/qtg_sampler.h"
#include "qtg/resources.h"
#include "qtg/trace.h"

namespace qtg {

// sin^2((2j + 1) * asin(sqrt(p))): probability that measuring after j
// Grover iterations hits the marked set of initial mass p.
double grover_success_probability(double p, std::uint64_t j);

// How the bias of each round's tree model is chosen.
struct BiasPolicy {
  enum class Kind { kFixed, kDistance, kFollowIncumbent };
  Kind kind = Kind::kDistance;
  double fixed_value = 0.0;  // kFixed
  int distance = 4;          // kDistance: b = n / distance

  static BiasPolicy fixed(double b) { return {Kind::kFixed, b, 4}; }
  static BiasPolicy targeting(int delta) { return {Kind::kDistance, 0.0, delta}; }
  static BiasPolicy follow() { return {Kind::kFollowIncumbent, 0.0, 4}; }

  Bias bias_for(int n) const;
};

// Cycles charged per search round: one state preparation, j iterations and
// one measurement.
struct CycleCosts {
  std::uint64_t preparation = 0;
  std::uint64_t iteration = 0;
  std::uint64_t measurement = 1;
};

CycleCosts cycle_costs_from(const ResourceEstimate& estimate, const CostModel& cost);

struct AmplificationConfig {
  // Grover iterations allowed per search call; 0 selects n^2.
  std::uint64_t max_grover_iterations = 0;
  // Optional cap on iterations summed over a whole maximum-finding run.
  std::optional<std::uint64_t> global_iteration_cap;
  double growth = 6.0 / 5.0;
  std::uint64_t seed = 0;
  // Distinguishes independent runs that share a seed.
  std::uint64_t run_id = 0;
  BiasPolicy bias = BiasPolicy::targeting(4);
  // Rebuild the tree model around each new incumbent (otherwise the model
  // stays centred on the initial incumbent while the threshold rises).
  bool rebuild_model_each_round = true;
  CycleCosts cycles;
  SuccessMassOptions mass;
  // Below this success mass, conditional outcomes come from exact
  // enumeration (when n <= mass.exact_limit) instead of rejection sampling.
  double rejection_fallback_p = 1e-6;

  // Throws InputError when growth <= 1.
  void validate() const;
  std::uint64_t iterations_for(int n) const;
};

struct QSearchOutcome {
  std::optional<Path> path;  // empty when the budget ran out
  std::uint64_t iterations = 0;
  std::uint64_t cycles = 0;
  std::uint64_t attempts = 0;
  SuccessMass mass;
};

// Amplitude amplification with unknown success probability, emulated through
// measurement statistics. Draws j uniformly below ceil(m) with m growing by
// `growth` after each failure (capped at sqrt(2^n)), charges j iterations,
// and succeeds with grover_success_probability(p, j). A success returns a
// path drawn from the tree distribution conditioned on profit > threshold.
// Never charges more than `budget` iterations.
QSearchOutcome qsearch(const QtgModel& model, std::int64_t threshold,
                       const AmplificationConfig& config, std::uint64_t budget,
                       RandomStream& rng);

struct RoundRecord {
  std::int64_t threshold = 0;
  double success_mass = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t cycles = 0;
  std::optional<Path> outcome;
};

struct QuantumRunRecord {
  std::vector<RoundRecord> rounds;
  std::uint64_t cumulative_cycles = 0;
  std::uint64_t total_iterations = 0;
  Path final_incumbent;
  std::uint64_t max_grover_iterations = 0;
};

struct QMaxSearchResult {
  SearchTrace trace;
  QuantumRunRecord record;
};

// Maximum finding: starts at the greedy incumbent (time 0) and repeats
// qsearch with threshold = incumbent profit until one call exhausts its
// budget. Every improvement is logged with its cumulative cycle count.
QMaxSearchResult qmaxsearch(const KnapsackInstance& instance,
                            const AmplificationConfig& config);

// cycles * cycle_time_ns * 1e-9. Throws InputError for negative inputs.
double cycles_to_runtime(double cycles, double cycle_time_ns = 1.0);

}  // namespace qtg

#endif  // QTG_AMPLIFICATION_H_
