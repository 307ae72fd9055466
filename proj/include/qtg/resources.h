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

#ifndef QTG_RESOURCES_H_
#define QTG_RESOURCES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtg/instance.h"

namespace qtg {

// Cycle costs of the primitive gate classes and the formulas for the
// arithmetic building blocks. Every primitive costs one cycle by default and
// disjoint gates share a cycle.
struct CostModel {
  std::uint64_t single_qubit_cycles = 1;
  std::uint64_t controlled_rotation_cycles = 1;  // includes CNOT
  std::uint64_t toffoli_cycles = 1;
  std::uint64_t measurement_cycles = 1;

  // QFT on k qubits: k(k+1)/2 gates, depth slope*k + offset layers.
  std::int64_t qft_depth_slope = 2;
  std::int64_t qft_depth_offset = -1;

  // Fan the control of a constant adder out to ancillas so its k rotations
  // run in parallel (used only where it shortens the adder).
  bool fan_out = true;
  // Copy capacity registers to evaluate comparisons in logarithmic depth
  // (parallel-tree variant only).
  bool parallel_comparisons = true;
  // Pairwise addition trees for profits and for the capacity consumed before
  // the break item (parallel-tree variant only).
  bool pairwise_tree = true;

  // Throws InputError for non-positive costs.
  void validate() const;
};

// Parses `key = value` lines ('#' starts a comment). Unknown keys and
// malformed values throw ParseError.
CostModel parse_cost_model(std::string_view text);
CostModel load_cost_model(const std::filesystem::path& path);

enum class QtgVariant { kInterleaved, kDeferred, kParallelTree };

QtgVariant parse_variant(std::string_view name);
const char* to_string(QtgVariant variant);

struct OpCost {
  std::uint64_t gates = 0;
  std::uint64_t depth = 0;

  OpCost& operator+=(const OpCost& other) {
    gates += other.gates;
    depth += other.depth;
    return *this;
  }
  friend OpCost operator+(OpCost a, const OpCost& b) { return a += b; }
  friend bool operator==(const OpCost&, const OpCost&) = default;
};

// Building blocks, exposed for tests and for custom accounting.
OpCost qft_cost(int k, const CostModel& cost);
// Controlled addition of a classical constant in Fourier space.
OpCost controlled_adder_cost(int k, const CostModel& cost);
// Same with two controls (an AND into an ancilla, computed and uncomputed).
OpCost doubly_controlled_adder_cost(int k, const CostModel& cost);
// Controlled subtraction of a constant from a computational-basis register.
OpCost controlled_subtractor_cost(int k, const CostModel& cost);
// In-place addition of one k-qubit register into another.
OpCost register_adder_cost(int k, const CostModel& cost);
// Full comparison of a k-qubit register with a classical constant: compute
// the sign, one check gate, uncompute. `parallel` selects the fan-out
// construction with k^2 ancillas when that is shallower.
OpCost comparator_cost(int k, const CostModel& cost, bool parallel);

// Qubits of the QKP circuit: n + bits(c) + bits(P) + max(n, bits(c), bits(P)).
std::int64_t qubit_count_qkp(std::int64_t n, std::int64_t capacity,
                             std::int64_t profit_bound);
// MDKP: n + sum bits(c_i) + bits(P) + max(n, sum bits(c_i) + 1, bits(P)).
std::int64_t qubit_count_mdkp(std::int64_t n,
                              std::span<const std::int64_t> capacities,
                              std::int64_t profit_bound);

// 1-based position (in `order`) of the first item whose cumulative weight
// exceeds the capacity, or n + 1 if none does (single-item instances). Every
// assignment of the items before it is feasible.
// QKP only; throws InputError for MDKP instances.
int break_item(const KnapsackInstance& instance, std::span<const int> order);
// One break position per dimension (works for both kinds).
std::vector<int> break_items(const KnapsackInstance& instance,
                             std::span<const int> order);

struct LayerBreakdown {
  OpCost branching;        // comparisons and biased rotations
  OpCost capacity_update;  // controlled subtractions
  OpCost profit_update;    // linear and quadratic profit additions
  friend bool operator==(const LayerBreakdown&, const LayerBreakdown&) = default;
};

struct ResourceEstimate {
  QtgVariant variant = QtgVariant::kParallelTree;
  std::int64_t qubits = 0;  // closed-form register count
  // Ancillas beyond the closed form (parallel comparisons, addition trees).
  std::int64_t ancilla_qubits = 0;
  std::uint64_t gates = 0;
  std::uint64_t qtg_depth_cycles = 0;
  std::uint64_t grover_iteration_cycles = 0;
  LayerBreakdown layers;

  int profit_register_bits = 0;
  std::vector<int> capacity_register_bits;
  std::int64_t profit_bound = 0;
  int break_position = 0;         // joint break item (min over dimensions)
  int comparisons_skipped = 0;
  std::int64_t quadratic_adders = 0;  // nonzero pair profits
  OpCost oracle;
  OpCost reflection;
};

// Gate and cycle counts of one QTG circuit. `profit_bound` defaults to
// profit_upper_bound(instance), `order` to density_order(instance).
ResourceEstimate estimate_qtg(const KnapsackInstance& instance,
                              const CostModel& cost, QtgVariant variant,
                              std::optional<ProfitBound> profit_bound = std::nullopt,
                              std::span<const int> order = {});

// 2 x QTG depth + profit oracle + reflection about the all-zero state.
std::uint64_t grover_iteration_cost(const ResourceEstimate& estimate,
                                    const CostModel& cost);

std::string estimate_to_json(const ResourceEstimate& estimate,
                             const std::string& instance_name);

}  // namespace qtg

#endif  // QTG_RESOURCES_H_
