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

#include "qtg/amplification.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qtg/classical.h"
#include "qtg/errors.h"

namespace qtg {
namespace {

struct WeightedPath {
  double cumulative;
  Bits bits;
};

Path draw_by_enumeration(const QtgModel& model, std::int64_t threshold,
                         RandomStream& rng) {
  std::vector<WeightedPath> marked;
  double total = 0.0;
  model.enumerate([&](const Bits& bits, std::int64_t profit, double prob) {
    if (profit > threshold && prob > 0.0) {
      total += prob;
      marked.push_back({total, bits});
    }
  });
  if (marked.empty()) throw Error("no path above the threshold to draw from");
  const double u = rng.uniform() * total;
  auto it = std::upper_bound(marked.begin(), marked.end(), u,
                             [](double value, const WeightedPath& w) {
                               return value < w.cumulative;
                             });
  if (it == marked.end()) --it;
  return make_path(model.instance(), it->bits);
}

Path draw_by_rejection(const QtgModel& model, std::int64_t threshold, double p,
                       RandomStream& rng) {
  const double limit = 1e6 + 100.0 / std::max(p, 1e-12);
  Path path;
  for (double draws = 0; draws < limit; draws += 1.0) {
    model.sample_into(rng, path);
    if (path.profit > threshold) return path;
  }
  throw Error("rejection sampling found no path above threshold " +
              std::to_string(threshold));
}

}  // namespace

double grover_success_probability(double p, std::uint64_t j) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InputError("success probability must lie in [0, 1]");
  }
  if (j == 0) return p;
  const double theta = std::asin(std::sqrt(p));
  const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
  return std::clamp(s * s, 0.0, 1.0);
}

Bias BiasPolicy::bias_for(int n) const {
  switch (kind) {
    case Kind::kFixed:
      return Bias::finite(fixed_value);
    case Kind::kDistance:
      return Bias::finite(bias_for_distance(n, distance));
    case Kind::kFollowIncumbent:
      return Bias::follow_incumbent();
  }
  throw InputError("unknown bias policy");
}

CycleCosts cycle_costs_from(const ResourceEstimate& estimate, const CostModel& cost) {
  return CycleCosts{estimate.qtg_depth_cycles, estimate.grover_iteration_cycles,
                    cost.measurement_cycles};
}

void AmplificationConfig::validate() const {
  if (!(growth > 1.0)) throw InputError("growth factor must exceed 1");
  if (!(rejection_fallback_p >= 0.0)) {
    throw InputError("rejection fallback threshold must be nonnegative");
  }
}

std::uint64_t AmplificationConfig::iterations_for(int n) const {
  if (max_grover_iterations > 0) return max_grover_iterations;
  const auto nn = static_cast<std::uint64_t>(n);
  return std::max<std::uint64_t>(1, nn * nn);
}

QSearchOutcome qsearch(const QtgModel& model, std::int64_t threshold,
                       const AmplificationConfig& config, std::uint64_t budget,
                       RandomStream& rng) {
  config.validate();
  QSearchOutcome out;
  out.mass = success_mass(model, threshold, config.mass, rng);
  const double p = out.mass.p;
  const double cap =
      std::max(1.0, std::pow(2.0, static_cast<double>(model.instance().n()) / 2.0));
  double bound = 1.0;
  while (out.iterations < budget) {
    ++out.attempts;
    const auto slots = static_cast<std::uint64_t>(std::ceil(bound));
    std::uint64_t j = rng.below(std::max<std::uint64_t>(slots, 1));
    j = std::min(j, budget - out.iterations);
    out.iterations += j;
    out.cycles += config.cycles.preparation + j * config.cycles.iteration +
                  config.cycles.measurement;
    if (rng.uniform() < grover_success_probability(p, j)) {
      const bool enumerate = p < config.rejection_fallback_p &&
                             model.instance().n() <= config.mass.exact_limit;
      out.path = enumerate ? draw_by_enumeration(model, threshold, rng)
                           : draw_by_rejection(model, threshold, p, rng);
      return out;
    }
    bound = std::min(config.growth * bound, cap);
  }
  return out;
}

QMaxSearchResult qmaxsearch(const KnapsackInstance& instance,
                            const AmplificationConfig& config) {
  config.validate();
  const std::uint64_t per_call = config.iterations_for(instance.n());
  const Bias bias = config.bias.bias_for(instance.n());

  Path incumbent = greedy_incumbent(instance);
  const Bits initial = incumbent.bits;
  QMaxSearchResult result{SearchTrace(TraceSource::kQuantumEmulated, instance.name()),
                          QuantumRunRecord{}};
  QuantumRunRecord& record = result.record;
  record.max_grover_iterations = per_call;
  result.trace.append({0.0, incumbent.profit, incumbent.bits, std::nullopt, true});

  for (std::uint64_t round = 0;; ++round) {
    std::uint64_t budget = per_call;
    if (config.global_iteration_cap) {
      const std::uint64_t left = *config.global_iteration_cap -
                                 std::min(*config.global_iteration_cap,
                                          record.total_iterations);
      if (left == 0) break;
      budget = std::min(budget, left);
    }
    const QtgModel model(instance,
                         config.rebuild_model_each_round ? incumbent.bits : initial,
                         bias);
    RandomStream rng(config.seed, {config.run_id, round});
    QSearchOutcome outcome = qsearch(model, incumbent.profit, config, budget, rng);
    record.cumulative_cycles += outcome.cycles;
    record.total_iterations += outcome.iterations;
    record.rounds.push_back({incumbent.profit, outcome.mass.p, outcome.iterations,
                             outcome.cycles, outcome.path});
    if (!outcome.path) break;
    incumbent = std::move(*outcome.path);
    result.trace.append({static_cast<double>(record.cumulative_cycles),
                         incumbent.profit, incumbent.bits, std::nullopt, true});
  }
  record.final_incumbent = incumbent;
  return result;
}

double cycles_to_runtime(double cycles, double cycle_time_ns) {
  if (!(cycles >= 0.0)) throw InputError("cycle count must be nonnegative");
  if (!(cycle_time_ns >= 0.0)) throw InputError("cycle time must be nonnegative");
  return cycles * cycle_time_ns / 1e9;
}

}  // namespace qtg
