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

#include <random>

#include "qtg/bits.h"
#include "qtg/classical.h"
#include "qtg/errors.h"
#include "qtg/resources.h"
#include "testing/oracles.h"

namespace qtg {
namespace {

using testing::RawProblem;

constexpr QtgVariant kVariants[] = {QtgVariant::kInterleaved, QtgVariant::kDeferred,
                                    QtgVariant::kParallelTree};

RawProblem dense_qkp(std::mt19937_64& gen, int n) {
  testing::GeneratorOptions opt;
  opt.n = n;
  opt.quadratic_density = 1.0;
  opt.max_profit = 100;
  opt.max_weight = 50;
  RawProblem raw = testing::random_problem(gen, true, opt);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) raw.matrix[a][b] = std::max<std::int64_t>(raw.matrix[a][b], 1);
  }
  return raw;
}

TEST(QubitCount, QuadraticExamples) {
  EXPECT_EQ(qubit_count_qkp(4, 10, 100), 22);
  EXPECT_EQ(qubit_count_qkp(8, 1, 1), 18);
  for (int k = 1; k < 20; ++k) {
    const std::int64_t top = (std::int64_t{1} << k) - 1;
    EXPECT_EQ(qubit_count_qkp(k, top, top), 4 * k);
  }
}

TEST(QubitCount, MultiDimensionalExamples) {
  const std::vector<std::int64_t> caps{10, 10};
  EXPECT_EQ(qubit_count_mdkp(4, caps, 100), 28);
  const std::vector<std::int64_t> one{10};
  EXPECT_EQ(qubit_count_mdkp(4, one, 100), 22);
  const std::vector<std::int64_t> tiny{1, 1};
  EXPECT_EQ(qubit_count_mdkp(32, tiny, 1), 32 + 2 + 1 + 32);
  EXPECT_THROW(qubit_count_mdkp(4, std::vector<std::int64_t>{}, 1), InputError);
}

TEST(QubitCount, MatchesReferenceOnRandomTuples) {
  std::mt19937_64 gen(61);
  std::uniform_int_distribution<std::int64_t> n_dist(1, 500), c_dist(1, 1LL << 40),
      d_dist(1, 8);
  for (int k = 0; k < 1000; ++k) {
    const std::int64_t n = n_dist(gen);
    std::vector<std::int64_t> caps(d_dist(gen));
    for (auto& c : caps) c = c_dist(gen) >> (k % 40);
    for (auto& c : caps) c = std::max<std::int64_t>(c, 1);
    const std::int64_t bound = std::max<std::int64_t>(1, c_dist(gen) >> (k % 37));
    EXPECT_EQ(qubit_count_qkp(n, caps[0], bound), testing::ref_qubits_qkp(n, caps[0], bound));
    EXPECT_EQ(qubit_count_mdkp(n, caps, bound), testing::ref_qubits_mdkp(n, caps, bound));
  }
}

TEST(BreakItem, Examples) {
  const auto a = KnapsackInstance::qkp("a", {3, 4, 5}, 7, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const std::vector<int> identity{0, 1, 2};
  EXPECT_EQ(break_item(a, identity), 3);
  const auto b = KnapsackInstance::qkp("b", {4, 4}, 7, {1, 0, 0, 1});
  EXPECT_EQ(break_item(b, std::vector<int>{0, 1}), 2);
  const auto one = KnapsackInstance::qkp("one", {3}, 5, {1});
  EXPECT_EQ(break_item(one, std::vector<int>{0}), 2);
  const auto md = KnapsackInstance::mdkp("md", {{3, 4}, {4, 1}}, {5, 4}, {1, 1});
  EXPECT_THROW(break_item(md, std::vector<int>{0, 1}), InputError);
  EXPECT_EQ(break_items(md, std::vector<int>{0, 1}), (std::vector<int>{2, 2}));
  EXPECT_EQ(break_items(md, std::vector<int>{1, 0}), (std::vector<int>{2, 1 + 1}));
}

TEST(BreakItem, PrefixAssignmentsAreFeasible) {
  std::mt19937_64 gen(67);
  for (int trial = 0; trial < 40; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 4 + trial % 13;
    opt.d = 1 + trial % 3;
    const RawProblem raw = testing::random_problem(gen, trial % 2 == 0, opt);
    const auto inst = raw.build();
    const auto order = density_order(inst);
    const auto breaks = break_items(inst, order);
    const int prefix = *std::min_element(breaks.begin(), breaks.end()) - 1;
    EXPECT_GE(prefix, 1);
    for (std::uint64_t mask = 0; mask < (1ULL << prefix); ++mask) {
      Bits x(raw.n, 0);
      for (int pos = 0; pos < prefix; ++pos) x[order[pos]] = (mask >> pos) & 1U;
      EXPECT_TRUE(testing::ref_feasible(raw, x));
    }
    // The break item itself overfills its dimension.
    Bits all(raw.n, 0);
    for (int pos = 0; pos <= prefix; ++pos) all[order[pos]] = 1;
    EXPECT_FALSE(testing::ref_feasible(raw, all));
  }
}

TEST(CostTable, Primitives) {
  const CostModel cost;
  for (int k = 1; k <= 40; ++k) {
    const auto kk = static_cast<std::uint64_t>(k);
    EXPECT_EQ(qft_cost(k, cost), (OpCost{kk * (kk + 1) / 2, 2 * kk - 1}));
    const std::uint64_t log2k = k == 1 ? 0 : std::bit_width(kk - 1);
    EXPECT_EQ(controlled_adder_cost(k, cost).depth, std::min(kk, 2 * log2k + 1));
    if (k > 1) {
      EXPECT_GE(controlled_adder_cost(k, cost).gates, controlled_adder_cost(k - 1, cost).gates);
    }
    EXPECT_GE(controlled_adder_cost(k, cost).gates, kk);
    const OpCost cc = doubly_controlled_adder_cost(k, cost);
    EXPECT_EQ(cc.gates, controlled_adder_cost(k, cost).gates + 2);
    EXPECT_EQ(cc.depth, controlled_adder_cost(k, cost).depth + 2);
    EXPECT_GE(comparator_cost(k, cost, false).gates, comparator_cost(k, cost, false).depth);
    EXPECT_LE(comparator_cost(k, cost, true).depth, comparator_cost(k, cost, false).depth);
  }
  CostModel sequential = cost;
  sequential.fan_out = false;
  EXPECT_EQ(controlled_adder_cost(16, sequential), (OpCost{16, 16}));
  EXPECT_EQ(qft_cost(0, cost), OpCost{});
}

TEST(CostModel, ParseKeyValueTable) {
  const CostModel model = parse_cost_model(
      "# timing\ntoffoli_cycles = 3\n\nfan_out = false  # no ancilla fan-out\n"
      "qft_depth_slope=1\nqft_depth_offset = 0\n");
  EXPECT_EQ(model.toffoli_cycles, 3U);
  EXPECT_FALSE(model.fan_out);
  EXPECT_EQ(model.qft_depth_slope, 1);
  EXPECT_EQ(model.single_qubit_cycles, 1U);
  EXPECT_THROW(parse_cost_model("warp_speed = 9\n"), ParseError);
  EXPECT_THROW(parse_cost_model("toffoli_cycles = fast\n"), ParseError);
  EXPECT_THROW(parse_cost_model("toffoli_cycles = 0\n"), ParseError);
  EXPECT_THROW(parse_cost_model("fan_out = maybe\n"), ParseError);
  EXPECT_THROW(parse_cost_model("toffoli_cycles\n"), ParseError);
}

TEST(CostModel, ShippedDefaultMatchesBuiltIn) {
  const CostModel shipped = load_cost_model(QTG_COST_MODEL_PATH);
  const CostModel builtin;
  EXPECT_EQ(shipped.single_qubit_cycles, builtin.single_qubit_cycles);
  EXPECT_EQ(shipped.controlled_rotation_cycles, builtin.controlled_rotation_cycles);
  EXPECT_EQ(shipped.toffoli_cycles, builtin.toffoli_cycles);
  EXPECT_EQ(shipped.measurement_cycles, builtin.measurement_cycles);
  EXPECT_EQ(shipped.qft_depth_slope, builtin.qft_depth_slope);
  EXPECT_EQ(shipped.qft_depth_offset, builtin.qft_depth_offset);
  EXPECT_EQ(shipped.fan_out, builtin.fan_out);
  EXPECT_EQ(shipped.parallel_comparisons, builtin.parallel_comparisons);
  EXPECT_EQ(shipped.pairwise_tree, builtin.pairwise_tree);
}

TEST(Variant, Names) {
  for (QtgVariant v : kVariants) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("serial"), InputError);
}

TEST(Estimate, VariantsShareGateCountAndOrderDepth) {
  std::mt19937_64 gen(71);
  const CostModel cost;
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = dense_qkp(gen, 8 + trial % 25).build();
    const auto inter = estimate_qtg(inst, cost, QtgVariant::kInterleaved);
    const auto deferred = estimate_qtg(inst, cost, QtgVariant::kDeferred);
    const auto tree = estimate_qtg(inst, cost, QtgVariant::kParallelTree);
    EXPECT_EQ(inter.gates, deferred.gates);
    EXPECT_EQ(inter.layers, deferred.layers);
    EXPECT_LE(deferred.qtg_depth_cycles, inter.qtg_depth_cycles);
    EXPECT_LE(tree.qtg_depth_cycles, deferred.qtg_depth_cycles);
    EXPECT_EQ(inter.qubits, tree.qubits);
    EXPECT_EQ(tree.comparisons_skipped, tree.break_position - 1);
    EXPECT_EQ(inter.gates, inter.layers.branching.gates + inter.layers.capacity_update.gates +
                               inter.layers.profit_update.gates);
  }
}

TEST(Estimate, QuadraticDeltaIsDoublyControlledAdders) {
  std::mt19937_64 gen(73);
  const CostModel cost;
  for (int trial = 0; trial < 30; ++trial) {
    const RawProblem raw = dense_qkp(gen, 6 + trial % 20);
    RawProblem linear = raw;
    std::int64_t pairs = 0;
    for (int a = 0; a < raw.n; ++a) {
      for (int b = 0; b < raw.n; ++b) {
        if (a == b) continue;
        linear.matrix[a][b] = 0;
        if (a > b && raw.matrix[a][b] > 0) ++pairs;
      }
    }
    const auto qkp = raw.build();
    const auto kp = linear.build();
    const auto order = density_order(qkp);
    const ProfitBound bound = profit_upper_bound(qkp);
    for (QtgVariant v : {QtgVariant::kInterleaved, QtgVariant::kDeferred}) {
      const auto with = estimate_qtg(qkp, cost, v, bound, order);
      const auto without = estimate_qtg(kp, cost, v, bound, order);
      const int kp_bits = num_bits(static_cast<std::uint64_t>(bound.value));
      EXPECT_EQ(with.gates - without.gates,
                static_cast<std::uint64_t>(pairs) *
                    doubly_controlled_adder_cost(kp_bits, cost).gates);
      EXPECT_EQ(with.quadratic_adders, pairs);
      EXPECT_EQ(without.quadratic_adders, 0);
    }
  }
}

TEST(Estimate, ZeroPairProfitsAddNoAdders) {
  const auto sparse = KnapsackInstance::qkp("s", {2, 3, 4}, 6, {5, 0, 2, 0, 6, 0, 2, 0, 7});
  EXPECT_EQ(estimate_qtg(sparse, CostModel{}, QtgVariant::kDeferred).quadratic_adders, 1);
}

TEST(Estimate, DisablingOptimizationsNeverHelpsDepth) {
  std::mt19937_64 gen(79);
  for (int trial = 0; trial < 30; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 6 + trial % 30;
    opt.d = 1 + trial % 4;
    const auto inst = testing::random_problem(gen, trial % 2 == 0, opt).build();
    const CostModel all;
    const auto base = estimate_qtg(inst, all, QtgVariant::kParallelTree);
    for (int flag = 0; flag < 3; ++flag) {
      CostModel off = all;
      if (flag == 0) off.fan_out = false;
      if (flag == 1) off.parallel_comparisons = false;
      if (flag == 2) off.pairwise_tree = false;
      EXPECT_GE(estimate_qtg(inst, off, QtgVariant::kParallelTree).qtg_depth_cycles,
                base.qtg_depth_cycles)
          << "flag " << flag;
    }
  }
}

TEST(Estimate, SingleDimensionSelfConsistency) {
  std::mt19937_64 gen(83);
  for (int trial = 0; trial < 20; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 4 + trial;
    opt.d = 1;
    const RawProblem md = testing::random_problem(gen, false, opt);
    RawProblem quad = md;
    quad.quadratic = true;
    quad.matrix.assign(md.n, std::vector<std::int64_t>(md.n, 0));
    for (int m = 0; m < md.n; ++m) quad.matrix[m][m] = md.profits[m];
    const auto a = md.build();
    const auto b = quad.build();
    for (QtgVariant v : kVariants) {
      const auto ea = estimate_qtg(a, CostModel{}, v);
      const auto eb = estimate_qtg(b, CostModel{}, v);
      EXPECT_EQ(ea.gates, eb.gates);
      EXPECT_EQ(ea.qtg_depth_cycles, eb.qtg_depth_cycles);
      EXPECT_EQ(ea.layers, eb.layers);
      EXPECT_EQ(ea.break_position, eb.break_position);
      // The two closed forms differ only in the "+1" inside the max term.
      EXPECT_LE(ea.qubits - eb.qubits, 1);
      EXPECT_GE(ea.qubits - eb.qubits, 0);
    }
  }
}

TEST(Estimate, AddingAnItemNeverDecreasesCounts) {
  std::mt19937_64 gen(89);
  const CostModel cost;
  for (int trial = 0; trial < 300; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 5 + trial % 15;
    opt.d = 1 + trial % 3;
    const bool quadratic = trial % 2 == 0;
    const RawProblem raw = testing::random_problem(gen, quadratic, opt);
    RawProblem grown = raw;
    ++grown.n;
    std::uniform_int_distribution<std::int64_t> val(0, 30);
    for (std::size_t i = 0; i < grown.weights.size(); ++i) {
      grown.weights[i].push_back(1 + val(gen) % raw.capacities[i]);
    }
    if (quadratic) {
      for (auto& row : grown.matrix) row.push_back(0);
      grown.matrix.emplace_back(grown.n, 0);
      for (int m = 0; m < grown.n; ++m) {
        const std::int64_t v = val(gen);
        grown.matrix[m][grown.n - 1] = v;
        grown.matrix[grown.n - 1][m] = v;
      }
    } else {
      grown.profits.push_back(val(gen));
    }
    for (QtgVariant v : kVariants) {
      const auto before = estimate_qtg(raw.build(), cost, v);
      const auto after = estimate_qtg(grown.build(), cost, v);
      EXPECT_GE(after.qubits, before.qubits);
      EXPECT_GE(after.gates, before.gates) << to_string(v);
      EXPECT_GE(after.qtg_depth_cycles, before.qtg_depth_cycles) << to_string(v);
    }
  }
}

TEST(Estimate, AddingAPairProfitNeverDecreasesGates) {
  std::mt19937_64 gen(97);
  const CostModel cost;
  for (int trial = 0; trial < 300; ++trial) {
    testing::GeneratorOptions opt;
    opt.n = 5 + trial % 15;
    opt.quadratic_density = 0.3;
    RawProblem raw = testing::random_problem(gen, true, opt);
    RawProblem more = raw;
    bool added = false;
    for (int a = 0; a < raw.n && !added; ++a) {
      for (int b = a + 1; b < raw.n && !added; ++b) {
        if (raw.matrix[a][b] == 0) {
          more.matrix[a][b] = more.matrix[b][a] = 1 + trial;
          added = true;
        }
      }
    }
    if (!added) continue;
    const auto x = raw.build();
    const auto y = more.build();
    const auto order = density_order(x);
    for (QtgVariant v : kVariants) {
      EXPECT_GE(estimate_qtg(y, cost, v, std::nullopt, order).gates,
                estimate_qtg(x, cost, v, std::nullopt, order).gates)
          << to_string(v);
    }
  }
}

TEST(GroverIteration, CostStructure) {
  std::mt19937_64 gen(101);
  const CostModel cost;
  const auto inst = dense_qkp(gen, 12).build();
  auto est = estimate_qtg(inst, cost, QtgVariant::kInterleaved);
  const int kp_bits = num_bits(static_cast<std::uint64_t>(est.profit_bound));
  EXPECT_EQ(est.profit_register_bits, kp_bits);
  EXPECT_EQ(est.oracle, comparator_cost(kp_bits, cost, false));
  const std::uint64_t base = grover_iteration_cost(est, cost);
  EXPECT_EQ(base, est.grover_iteration_cycles);
  EXPECT_GT(base, est.qtg_depth_cycles);
  const std::uint64_t delta = est.qtg_depth_cycles;
  est.qtg_depth_cycles *= 2;
  EXPECT_EQ(grover_iteration_cost(est, cost) - base, 2 * delta);
}

TEST(Estimate, Deterministic) {
  std::mt19937_64 gen(103);
  testing::GeneratorOptions opt;
  opt.n = 20;
  opt.d = 3;
  const auto inst = testing::random_problem(gen, false, opt).build();
  for (QtgVariant v : kVariants) {
    EXPECT_EQ(estimate_to_json(estimate_qtg(inst, CostModel{}, v), "x"),
              estimate_to_json(estimate_qtg(inst, CostModel{}, v), "x"));
  }
}

TEST(Estimate, SingleItemInstance) {
  const auto one = KnapsackInstance::qkp("one", {3}, 5, {4});
  const auto est = estimate_qtg(one, CostModel{}, QtgVariant::kParallelTree);
  EXPECT_EQ(est.break_position, 2);
  EXPECT_EQ(est.comparisons_skipped, 1);
  EXPECT_GT(est.qtg_depth_cycles, 0U);
}

}  // namespace
}  // namespace qtg
