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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "qtg/amplification.h"
#include "qtg/classical.h"
#include "qtg/errors.h"
#include "qtg/qtg_sampler.h"
#include "qtg/rng.h"
#include "testing/oracles.h"

namespace qtg {
namespace {

KnapsackInstance two_heavy() { return KnapsackInstance::qkp("h", {5, 5}, 7, {10, 0, 0, 9}); }

TEST(GroverProbability, Examples) {
  EXPECT_NEAR(grover_success_probability(0.25, 1), 1.0, 1e-12);
  EXPECT_EQ(grover_success_probability(0.0, 7), 0.0);
  for (double p : {0.0, 1e-9, 0.1, 0.37, 1.0}) EXPECT_EQ(grover_success_probability(p, 0), p);
  EXPECT_THROW(grover_success_probability(-0.1, 1), InputError);
  EXPECT_THROW(grover_success_probability(1.1, 1), InputError);
}

TEST(GroverProbability, MatchesRotationFormula) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double p = unit(gen);
    const std::uint64_t j = k % 40;
    const double theta = std::asin(std::sqrt(p));
    const double expected = std::pow(std::sin((2.0 * j + 1.0) * theta), 2);
    const double got = grover_success_probability(p, j);
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
  }
}

TEST(CyclesToRuntime, Examples) {
  EXPECT_EQ(cycles_to_runtime(1e9, 1.0), 1.0);
  EXPECT_EQ(cycles_to_runtime(0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(cycles_to_runtime(500, 2.0), 1e-6);
  EXPECT_THROW(cycles_to_runtime(-1, 1.0), InputError);
}

TEST(BiasPolicy, Variants) {
  EXPECT_DOUBLE_EQ(BiasPolicy::targeting(4).bias_for(20).value(), 5.0);
  EXPECT_DOUBLE_EQ(BiasPolicy::fixed(2.5).bias_for(20).value(), 2.5);
  EXPECT_TRUE(BiasPolicy::follow().bias_for(20).follows_incumbent());
}

AmplificationConfig plain_config() {
  AmplificationConfig config;
  config.cycles = {10, 3, 1};
  return config;
}

TEST(QSearch, ZeroMassExhaustsBudgetExactly) {
  const auto inst = two_heavy();
  const QtgModel model(inst, bits_from_string("00"), Bias::finite(0));
  for (std::uint64_t budget : {0ULL, 1ULL, 5ULL, 37ULL}) {
    RandomStream rng(1, {budget});
    const auto out = qsearch(model, 10, plain_config(), budget, rng);
    EXPECT_FALSE(out.path.has_value());
    EXPECT_EQ(out.iterations, budget);
    EXPECT_EQ(out.mass.p, 0.0);
  }
}

TEST(QSearch, FullMassSucceedsWithoutIterations) {
  const auto inst = two_heavy();
  const QtgModel model(inst, bits_from_string("00"), Bias::finite(0));
  RandomStream rng(2, {0});
  const auto out = qsearch(model, -1, plain_config(), 10, rng);
  ASSERT_TRUE(out.path.has_value());
  EXPECT_EQ(out.iterations, 0U);
  EXPECT_EQ(out.attempts, 1U);
  EXPECT_EQ(out.cycles, 11U);
  EXPECT_TRUE(out.path->feasible());
}

TEST(QSearch, SingleMarkedPathIsAlwaysReturned) {
  const auto inst = two_heavy();
  const QtgModel model(inst, bits_from_string("00"), Bias::finite(0));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomStream rng(seed, {0});
    const auto out = qsearch(model, 9, plain_config(), 100, rng);
    ASSERT_TRUE(out.path.has_value());
    EXPECT_EQ(bits_to_string(out.path->bits), "10");
  }
}

TEST(QSearch, CyclesFollowAttempts) {
  std::mt19937_64 gen(5);
  testing::GeneratorOptions opt;
  opt.n = 10;
  const auto inst = testing::random_problem(gen, true, opt).build();
  const Path greedy = greedy_incumbent(inst);
  const QtgModel model(inst, greedy.bits, Bias::finite(2.5));
  const auto config = plain_config();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomStream rng(seed, {0});
    const auto out = qsearch(model, greedy.profit, config, 30, rng);
    EXPECT_LE(out.iterations, 30U);
    EXPECT_EQ(out.cycles, out.attempts * (config.cycles.preparation + config.cycles.measurement) +
                              out.iterations * config.cycles.iteration);
    if (out.path) EXPECT_GT(out.path->profit, greedy.profit);
  }
}

TEST(QSearch, OutcomesFollowConditionalDistribution) {
  std::mt19937_64 gen(7);
  testing::GeneratorOptions opt;
  opt.n = 8;
  opt.tightness = 0.4;
  const auto raw = testing::random_problem(gen, true, opt);
  const auto inst = raw.build();
  const Bits zeros(inst.n(), 0);
  const QtgModel model(inst, zeros, Bias::finite(0.5));
  const auto dist = testing::ref_distribution(raw, zeros, 0.5);
  const std::int64_t threshold = greedy_incumbent(inst).profit / 2;
  std::map<std::uint64_t, double> target;
  double mass = 0.0;
  for (const auto& [mask, q] : dist) {
    if (testing::ref_profit(raw, testing::bits_of(mask, raw.n)) > threshold) {
      target[mask] = q;
      mass += q;
    }
  }
  ASSERT_GT(mass, 0.0);
  std::map<std::uint64_t, double> seen;
  const int wanted = 10000;
  int successes = 0;
  for (std::uint64_t seed = 0; successes < wanted; ++seed) {
    RandomStream rng(seed, {11});
    const auto out = qsearch(model, threshold, plain_config(), 64, rng);
    if (!out.path) continue;
    ++successes;
    seen[testing::mask_of(out.path->bits)] += 1.0;
  }
  double tv = 0.0;
  for (const auto& [mask, q] : target) tv += std::abs(q / mass - seen[mask] / wanted);
  for (const auto& [mask, c] : seen) {
    if (!target.count(mask)) tv += c / wanted;
  }
  EXPECT_LE(tv / 2.0, 0.02);
}

TEST(QSearch, TinyMassUsesEnumeration) {
  std::mt19937_64 gen(9);
  testing::GeneratorOptions opt;
  opt.n = 14;
  // First generated instance on which greedy is not optimal.
  for (;;) {
    const auto inst = testing::random_problem(gen, false, opt).build();
    const ExactResult best = exact_optimum(inst);
    const Path greedy = greedy_incumbent(inst);
    if (best.best.profit == greedy.profit) continue;
    const QtgModel model(inst, greedy.bits, Bias::finite(200.0));
    auto config = plain_config();
    config.rejection_fallback_p = 0.5;  // force the enumeration path
    RandomStream rng(1, {0});
    const auto out = qsearch(model, best.best.profit - 1, config, 1 << 20, rng);
    ASSERT_TRUE(out.path.has_value());
    EXPECT_EQ(out.path->profit, best.best.profit);
    return;
  }
}

TEST(QMaxSearch, OptimalGreedyGivesSingleExhaustedRound) {
  const auto inst = two_heavy();
  auto config = plain_config();
  const auto result = qmaxsearch(inst, config);
  ASSERT_EQ(result.record.rounds.size(), 1U);
  EXPECT_FALSE(result.record.rounds[0].outcome.has_value());
  EXPECT_EQ(result.trace.entries().size(), 1U);
  EXPECT_EQ(result.trace.entries()[0].profit, 10);
  EXPECT_EQ(result.record.max_grover_iterations, 4U);
  EXPECT_EQ(result.record.total_iterations, 4U);
}

TEST(QMaxSearch, FollowIncumbentStopsAfterOneRound) {
  std::mt19937_64 gen(13);
  testing::GeneratorOptions opt;
  opt.n = 12;
  const auto inst = testing::random_problem(gen, true, opt).build();
  auto config = plain_config();
  config.bias = BiasPolicy::follow();
  const auto result = qmaxsearch(inst, config);
  ASSERT_EQ(result.record.rounds.size(), 1U);
  EXPECT_EQ(result.record.rounds[0].success_mass, 0.0);
  EXPECT_EQ(result.record.final_incumbent, greedy_incumbent(inst));
}

TEST(QMaxSearch, TraceInvariants) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 40; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 6 + trial % 10;
    opt.d = 1 + trial % 3;
    const auto raw = testing::random_problem(gen, trial % 2 == 0, opt);
    const auto inst = raw.build();
    auto config = plain_config();
    config.seed = trial;
    const auto result = qmaxsearch(inst, config);
    const auto& entries = result.trace.entries();
    EXPECT_EQ(entries.front().time, 0.0);
    EXPECT_EQ(entries.front().profit, greedy_incumbent(inst).profit);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      ASSERT_TRUE(entries[k].bits.has_value());
      EXPECT_TRUE(testing::ref_feasible(raw, *entries[k].bits));
      EXPECT_EQ(testing::ref_profit(raw, *entries[k].bits), entries[k].profit);
      if (k > 0) {
        EXPECT_GT(entries[k].time, entries[k - 1].time);
        EXPECT_GT(entries[k].profit, entries[k - 1].profit);
      }
    }
    const std::uint64_t m = static_cast<std::uint64_t>(opt.n * opt.n);
    for (const RoundRecord& r : result.record.rounds) EXPECT_LE(r.iterations, m);
    EXPECT_FALSE(result.record.rounds.back().outcome.has_value());
    EXPECT_EQ(result.record.final_incumbent.profit, entries.back().profit);
    EXPECT_EQ(result.trace.source(), TraceSource::kQuantumEmulated);
  }
}

TEST(QMaxSearch, ReproducibleFromSeed) {
  std::mt19937_64 gen(19);
  testing::GeneratorOptions opt;
  opt.n = 14;
  const auto inst = testing::random_problem(gen, true, opt).build();
  auto config = plain_config();
  config.seed = 99;
  const auto a = qmaxsearch(inst, config);
  const auto b = qmaxsearch(inst, config);
  ASSERT_EQ(a.trace.entries().size(), b.trace.entries().size());
  for (std::size_t k = 0; k < a.trace.entries().size(); ++k) {
    EXPECT_EQ(a.trace.entries()[k].time, b.trace.entries()[k].time);
    EXPECT_EQ(a.trace.entries()[k].bits, b.trace.entries()[k].bits);
  }
  EXPECT_EQ(a.record.cumulative_cycles, b.record.cumulative_cycles);
}

TEST(QMaxSearch, GlobalCapBoundsTotalIterations) {
  std::mt19937_64 gen(23);
  testing::GeneratorOptions opt;
  opt.n = 12;
  const auto inst = testing::random_problem(gen, false, opt).build();
  auto config = plain_config();
  config.global_iteration_cap = 7;
  const auto result = qmaxsearch(inst, config);
  EXPECT_LE(result.record.total_iterations, 7U);
}

TEST(AmplificationConfig, Validation) {
  AmplificationConfig config;
  config.growth = 1.0;
  EXPECT_THROW(config.validate(), InputError);
  EXPECT_EQ(AmplificationConfig{}.iterations_for(9), 81U);
}

}  // namespace
}  // namespace qtg
