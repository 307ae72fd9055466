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

#include "qtg/resources.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qtg/bits.h"
#include "qtg/classical.h"
#include "qtg/errors.h"

namespace qtg {
namespace {

std::uint64_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(x - 1));
}

std::uint64_t popcount(std::int64_t v) {
  return static_cast<std::uint64_t>(std::popcount(static_cast<std::uint64_t>(v)));
}

OpCost shallower(const OpCost& a, const OpCost& b) {
  return b.depth < a.depth ? b : a;
}

// Operations on disjoint registers run side by side.
OpCost in_parallel(const std::vector<OpCost>& ops) {
  OpCost out;
  for (const OpCost& op : ops) {
    out.gates += op.gates;
    out.depth = std::max(out.depth, op.depth);
  }
  return out;
}

OpCost uncontrolled_adder_cost(int k, const CostModel& cost) {
  if (k <= 0) return {};
  return {static_cast<std::uint64_t>(k), cost.single_qubit_cycles};
}

// Half of a comparison: computes the sign of (register - w) into an ancilla.
OpCost comparator_half(int k, const CostModel& cost, bool parallel) {
  OpCost standard = qft_cost(k + 1, cost) + uncontrolled_adder_cost(k + 1, cost) +
                    qft_cost(k + 1, cost);
  if (!parallel || k < 2) return standard;
  const std::uint64_t kk = static_cast<std::uint64_t>(k);
  const std::uint64_t levels = ceil_log2(kk);
  const OpCost fanned{kk * (kk - 1)          // register copies
                          + kk * (kk - 1) / 2  // prefix comparison terms
                          + (kk - 1),          // OR of the terms
                      levels * cost.controlled_rotation_cycles +
                          2 * levels * cost.toffoli_cycles};
  return shallower(standard, fanned);
}

bool uses_parallel_half(int k, const CostModel& cost) {
  return comparator_half(k, cost, true).depth <
         comparator_half(k, cost, false).depth;
}

OpCost conjunction_cost(std::size_t terms, const CostModel& cost) {
  if (terms <= 1) return {};
  return {2 * (terms - 1), 2 * ceil_log2(terms) * cost.toffoli_cycles};
}

struct ItemOps {
  OpCost branching;
  OpCost capacity;
  std::vector<OpCost> profit;  // linear first, then quadratic terms
  std::vector<std::int64_t> profit_values;
};

class Estimator {
 public:
  Estimator(const KnapsackInstance& inst, const CostModel& cost,
            QtgVariant variant, ProfitBound bound, std::vector<int> order)
      : inst_(inst), cost_(cost), variant_(variant), order_(std::move(order)) {
    est_.variant = variant;
    est_.profit_bound = bound.value;
    kp_ = num_bits(static_cast<std::uint64_t>(bound.value));
    est_.profit_register_bits = kp_;
    for (int i = 0; i < inst.d(); ++i) {
      kc_.push_back(num_bits(static_cast<std::uint64_t>(inst.capacity(i))));
    }
    est_.capacity_register_bits = kc_;
    est_.qubits = inst.is_qkp()
                      ? qubit_count_qkp(inst.n(), inst.capacity(0), bound.value)
                      : qubit_count_mdkp(inst.n(), inst.capacities(), bound.value);
    const std::vector<int> breaks = break_items(inst, order_);
    est_.break_position = *std::min_element(breaks.begin(), breaks.end());
  }

  ResourceEstimate run() {
    const bool parallel = variant_ == QtgVariant::kParallelTree;
    std::vector<ItemOps> items;
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      items.push_back(item_ops(static_cast<int>(pos),
                               parallel && cost_.parallel_comparisons));
    }
    switch (variant_) {
      case QtgVariant::kInterleaved:
        interleaved(items);
        break;
      case QtgVariant::kDeferred:
        deferred(items);
        break;
      case QtgVariant::kParallelTree:
        parallel_tree(items);
        break;
    }
    const bool parallel_oracle = parallel && cost_.parallel_comparisons;
    est_.oracle = comparator_cost(kp_, cost_, parallel_oracle);
    if (parallel_oracle && uses_parallel_half(kp_, cost_)) {
      est_.ancilla_qubits = std::max<std::int64_t>(est_.ancilla_qubits,
                                                   std::int64_t{kp_} * kp_);
    }
    const auto n_reflect = static_cast<std::uint64_t>(est_.qubits);
    est_.reflection = {2 * (n_reflect - 1) + 1,
                       2 * ceil_log2(n_reflect) * cost_.toffoli_cycles +
                           cost_.controlled_rotation_cycles};
    est_.grover_iteration_cycles = grover_iteration_cost(est_, cost_);
    return est_;
  }

 private:
  ItemOps item_ops(int pos, bool parallel_compare) {
    const int m = order_[pos];
    ItemOps ops;
    std::vector<OpCost> halves;
    std::vector<OpCost> subs;
    for (int i = 0; i < inst_.d(); ++i) {
      if (inst_.weight(i, m) == 0) continue;
      halves.push_back(comparator_half(kc_[i], cost_, parallel_compare));
      subs.push_back(controlled_subtractor_cost(kc_[i], cost_));
      if (parallel_compare && uses_parallel_half(kc_[i], cost_)) {
        compare_ancillas_ = std::max<std::int64_t>(
            compare_ancillas_, std::int64_t{kc_[i]} * kc_[i]);
      }
    }
    if (halves.empty()) {
      ops.branching = {1, cost_.single_qubit_cycles};
    } else {
      const OpCost half = in_parallel(halves);
      const OpCost conj = conjunction_cost(halves.size(), cost_);
      ops.branching = {2 * half.gates + conj.gates + 1,
                       2 * half.depth + conj.depth +
                           cost_.controlled_rotation_cycles};
    }
    ops.capacity = in_parallel(subs);
    if (inst_.linear_profit(m) > 0) {
      ops.profit.push_back(controlled_adder_cost(kp_, cost_));
      ops.profit_values.push_back(inst_.linear_profit(m));
    }
    if (inst_.is_qkp()) {
      for (int prev = 0; prev < pos; ++prev) {
        const std::int64_t value = inst_.pair_profit(m, order_[prev]);
        if (value > 0) {
          ops.profit.push_back(doubly_controlled_adder_cost(kp_, cost_));
          ops.profit_values.push_back(value);
          ++est_.quadratic_adders;
        }
      }
    }
    return ops;
  }

  void tally(const ItemOps& ops, bool compared) {
    if (compared) {
      est_.layers.branching += ops.branching;
    } else {
      est_.layers.branching += OpCost{1, cost_.single_qubit_cycles};
    }
    est_.layers.capacity_update += ops.capacity;
  }

  void interleaved(const std::vector<ItemOps>& items) {
    const OpCost frame = qft_cost(kp_, cost_);
    std::uint64_t depth = frame.depth;
    for (const ItemOps& ops : items) {
      tally(ops, true);
      depth += ops.branching.depth + ops.capacity.depth;
      for (const OpCost& add : ops.profit) {
        est_.layers.profit_update += add;
        depth += add.depth;
      }
    }
    est_.layers.profit_update += frame + frame;
    depth += frame.depth;
    finish(depth);
  }

  // Profit additions run on their own register as soon as the controlling
  // items are branched; returns the time the last one ends.
  std::uint64_t profit_pipeline(const std::vector<ItemOps>& items,
                                const std::vector<std::uint64_t>& branched,
                                OpCost& total) {
    const OpCost frame = qft_cost(kp_, cost_);
    total = frame + frame;
    std::uint64_t free_at = frame.depth;
    for (std::size_t pos = 0; pos < items.size(); ++pos) {
      for (const OpCost& add : items[pos].profit) {
        free_at = std::max(free_at, branched[pos]) + add.depth;
        total.gates += add.gates;
        total.depth += add.depth;
      }
    }
    return free_at + frame.depth;
  }

  void deferred(const std::vector<ItemOps>& items) {
    std::vector<std::uint64_t> branched(items.size());
    std::uint64_t t = 0;
    for (std::size_t pos = 0; pos < items.size(); ++pos) {
      tally(items[pos], true);
      t += items[pos].branching.depth;
      branched[pos] = t;
      t += items[pos].capacity.depth;
    }
    OpCost profit;
    const std::uint64_t profit_end = profit_pipeline(items, branched, profit);
    est_.layers.profit_update += profit;
    finish(std::max(t, profit_end));
  }

  // Capacity consumed by the items before the break position, summed with a
  // pairwise tree per dimension and subtracted once.
  OpCost prefix_capacity_tree(int prefix, std::int64_t& ancillas) const {
    std::vector<OpCost> dims;
    ancillas = 0;
    for (int i = 0; i < inst_.d(); ++i) {
      std::uint64_t terms = 0;
      OpCost dim;
      for (int pos = 0; pos < prefix; ++pos) {
        const std::int64_t w = inst_.weight(i, order_[pos]);
        if (w == 0) continue;
        ++terms;
        dim.gates += popcount(w);
      }
      if (terms == 0) continue;
      dim.depth = cost_.controlled_rotation_cycles;
      const OpCost add = register_adder_cost(kc_[i], cost_);
      dim.gates += (terms - 1) * add.gates + add.gates;
      dim.depth += ceil_log2(terms) * add.depth + add.depth;
      ancillas += static_cast<std::int64_t>(terms) * kc_[i];
      dims.push_back(dim);
    }
    return in_parallel(dims);
  }

  void parallel_tree(const std::vector<ItemOps>& items) {
    const int prefix = est_.break_position - 1;
    est_.comparisons_skipped = prefix;
    std::vector<std::uint64_t> branched(items.size());

    // Prefix items branch unconditionally, all in one layer.
    std::uint64_t t = prefix > 0 ? cost_.single_qubit_cycles : 0;
    OpCost sequential_prefix;
    for (int pos = 0; pos < prefix; ++pos) {
      branched[pos] = t;
      sequential_prefix += items[pos].capacity;
      est_.layers.branching += OpCost{1, 0};
    }
    if (prefix > 0) est_.layers.branching.depth += cost_.single_qubit_cycles;
    OpCost prefix_capacity = sequential_prefix;
    if (cost_.pairwise_tree) {
      std::int64_t tree_ancillas = 0;
      const OpCost tree = prefix_capacity_tree(prefix, tree_ancillas);
      if (tree.depth < sequential_prefix.depth) {
        prefix_capacity = tree;
        extra_ancillas_ += tree_ancillas;
      }
    }
    est_.layers.capacity_update += prefix_capacity;
    t += prefix_capacity.depth;

    for (std::size_t pos = prefix; pos < items.size(); ++pos) {
      tally(items[pos], true);
      t += items[pos].branching.depth;
      branched[pos] = t;
      t += items[pos].capacity.depth;
    }

    OpCost pipeline;
    const std::uint64_t pipeline_end = profit_pipeline(items, branched, pipeline);
    OpCost profit = pipeline;
    std::uint64_t profit_end = pipeline_end;
    if (cost_.pairwise_tree) {
      std::uint64_t terms = 0;
      OpCost tree;
      for (const ItemOps& ops : items) {
        for (std::int64_t v : ops.profit_values) {
          ++terms;
          tree.gates += popcount(v);
        }
      }
      if (terms > 0) {
        const std::uint64_t last_branch =
            *std::max_element(branched.begin(), branched.end());
        const OpCost add = register_adder_cost(kp_, cost_);
        tree.depth = cost_.toffoli_cycles + ceil_log2(terms) * add.depth;
        tree.gates += (terms - 1) * add.gates;
        if (last_branch + tree.depth < pipeline_end) {
          profit = tree;
          profit_end = last_branch + tree.depth;
          extra_ancillas_ += static_cast<std::int64_t>(terms - 1) * kp_;
        }
      }
    }
    est_.layers.profit_update += profit;
    finish(std::max(t, profit_end));
  }

  void finish(std::uint64_t depth) {
    est_.qtg_depth_cycles = depth;
    est_.gates = est_.layers.branching.gates + est_.layers.capacity_update.gates +
                 est_.layers.profit_update.gates;
    est_.ancilla_qubits = compare_ancillas_ + extra_ancillas_;
  }

  const KnapsackInstance& inst_;
  const CostModel& cost_;
  QtgVariant variant_;
  std::vector<int> order_;
  int kp_ = 0;
  std::vector<int> kc_;
  std::int64_t compare_ancillas_ = 0;
  std::int64_t extra_ancillas_ = 0;
  ResourceEstimate est_;
};

}  // namespace

void CostModel::validate() const {
  if (single_qubit_cycles == 0 || controlled_rotation_cycles == 0 ||
      toffoli_cycles == 0 || measurement_cycles == 0) {
    throw InputError("cost model cycle costs must be positive");
  }
  if (qft_depth_slope < 1) throw InputError("qft_depth_slope must be >= 1");
}

CostModel parse_cost_model(std::string_view text) {
  CostModel model;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto as_int = [&]() {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError("expected integer for '" + key + "'", line_no);
      }
      return v;
    };
    auto as_count = [&]() {
      const std::int64_t v = as_int();
      if (v <= 0) throw ParseError("'" + key + "' must be positive", line_no);
      return static_cast<std::uint64_t>(v);
    };
    auto as_bool = [&]() {
      if (value == "true") return true;
      if (value == "false") return false;
      throw ParseError("expected true or false for '" + key + "'", line_no);
    };
    if (key == "single_qubit_cycles") model.single_qubit_cycles = as_count();
    else if (key == "controlled_rotation_cycles") model.controlled_rotation_cycles = as_count();
    else if (key == "toffoli_cycles") model.toffoli_cycles = as_count();
    else if (key == "measurement_cycles") model.measurement_cycles = as_count();
    else if (key == "qft_depth_slope") model.qft_depth_slope = as_int();
    else if (key == "qft_depth_offset") model.qft_depth_offset = as_int();
    else if (key == "fan_out") model.fan_out = as_bool();
    else if (key == "parallel_comparisons") model.parallel_comparisons = as_bool();
    else if (key == "pairwise_tree") model.pairwise_tree = as_bool();
    else throw ParseError("unknown cost model key '" + key + "'", line_no);
  }
  model.validate();
  return model;
}

CostModel load_cost_model(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot open cost model " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_cost_model(buffer.str());
}

QtgVariant parse_variant(std::string_view name) {
  if (name == "interleaved") return QtgVariant::kInterleaved;
  if (name == "deferred") return QtgVariant::kDeferred;
  if (name == "parallel-tree") return QtgVariant::kParallelTree;
  throw InputError("unknown QTG variant '" + std::string(name) +
                   "' (expected interleaved, deferred or parallel-tree)");
}

const char* to_string(QtgVariant variant) {
  switch (variant) {
    case QtgVariant::kInterleaved:
      return "interleaved";
    case QtgVariant::kDeferred:
      return "deferred";
    case QtgVariant::kParallelTree:
      return "parallel-tree";
  }
  return "unknown";
}

OpCost qft_cost(int k, const CostModel& cost) {
  if (k <= 0) return {};
  const auto kk = static_cast<std::uint64_t>(k);
  const std::int64_t layers =
      std::max<std::int64_t>(1, cost.qft_depth_slope * k + cost.qft_depth_offset);
  const std::uint64_t layer_cycles =
      std::max(cost.single_qubit_cycles, cost.controlled_rotation_cycles);
  return {kk * (kk + 1) / 2, static_cast<std::uint64_t>(layers) * layer_cycles};
}

OpCost controlled_adder_cost(int k, const CostModel& cost) {
  if (k <= 0) return {};
  const auto kk = static_cast<std::uint64_t>(k);
  const OpCost sequential{kk, kk * cost.controlled_rotation_cycles};
  if (!cost.fan_out) return sequential;
  const OpCost fanned{kk + 2 * (kk - 1),
                      (2 * ceil_log2(kk) + 1) * cost.controlled_rotation_cycles};
  // Ties go to the fanned form so the choice is a threshold in k and gate
  // counts stay monotone in the register width.
  return fanned.depth <= sequential.depth ? fanned : sequential;
}

OpCost doubly_controlled_adder_cost(int k, const CostModel& cost) {
  return controlled_adder_cost(k, cost) + OpCost{2, 2 * cost.toffoli_cycles};
}

OpCost controlled_subtractor_cost(int k, const CostModel& cost) {
  return qft_cost(k, cost) + controlled_adder_cost(k, cost) + qft_cost(k, cost);
}

OpCost register_adder_cost(int k, const CostModel& cost) {
  if (k <= 0) return {};
  const auto kk = static_cast<std::uint64_t>(k);
  return qft_cost(k, cost) +
         OpCost{kk * (kk + 1) / 2, kk * cost.controlled_rotation_cycles} +
         qft_cost(k, cost);
}

OpCost comparator_cost(int k, const CostModel& cost, bool parallel) {
  const OpCost half = comparator_half(k, cost, parallel);
  return {2 * half.gates + 1, 2 * half.depth + cost.controlled_rotation_cycles};
}

std::int64_t qubit_count_qkp(std::int64_t n, std::int64_t capacity,
                             std::int64_t profit_bound) {
  const std::int64_t bc = num_bits(static_cast<std::uint64_t>(capacity));
  const std::int64_t bp = num_bits(static_cast<std::uint64_t>(profit_bound));
  return n + bc + bp + std::max({n, bc, bp});
}

std::int64_t qubit_count_mdkp(std::int64_t n,
                              std::span<const std::int64_t> capacities,
                              std::int64_t profit_bound) {
  if (capacities.empty()) throw InputError("MDKP needs at least one capacity");
  std::int64_t bc = 0;
  for (auto c : capacities) bc += num_bits(static_cast<std::uint64_t>(c));
  const std::int64_t bp = num_bits(static_cast<std::uint64_t>(profit_bound));
  return n + bc + bp + std::max({n, bc + 1, bp});
}

std::vector<int> break_items(const KnapsackInstance& instance,
                             std::span<const int> order) {
  if (static_cast<int>(order.size()) != instance.n()) {
    throw InputError("item order must list every item");
  }
  std::vector<int> out;
  for (int i = 0; i < instance.d(); ++i) {
    std::int64_t prefix = 0;
    // A single item always fits; its break position lies past the end.
    int position = instance.n() + 1;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      prefix += instance.weight(i, order[pos]);
      if (prefix > instance.capacity(i)) {
        position = static_cast<int>(pos) + 1;
        break;
      }
    }
    out.push_back(position);
  }
  return out;
}

int break_item(const KnapsackInstance& instance, std::span<const int> order) {
  if (!instance.is_qkp()) {
    throw InputError("break_item is defined for single-constraint instances; "
                     "use break_items for per-dimension positions");
  }
  return break_items(instance, order).front();
}

ResourceEstimate estimate_qtg(const KnapsackInstance& instance,
                              const CostModel& cost, QtgVariant variant,
                              std::optional<ProfitBound> profit_bound,
                              std::span<const int> order) {
  cost.validate();
  std::vector<int> item_order(order.begin(), order.end());
  if (item_order.empty()) item_order = density_order(instance);
  if (static_cast<int>(item_order.size()) != instance.n()) {
    throw InputError("item order must list every item");
  }
  const ProfitBound bound = profit_bound.value_or(profit_upper_bound(instance));
  if (bound.value < 1) throw InputError("profit bound must be positive");
  return Estimator(instance, cost, variant, bound, std::move(item_order)).run();
}

std::uint64_t grover_iteration_cost(const ResourceEstimate& estimate,
                                    const CostModel& cost) {
  (void)cost;
  return 2 * estimate.qtg_depth_cycles + estimate.oracle.depth +
         estimate.reflection.depth;
}

std::string estimate_to_json(const ResourceEstimate& e,
                             const std::string& instance_name) {
  using nlohmann::json;
  auto op = [](const OpCost& c) { return json{{"gates", c.gates}, {"depth", c.depth}}; };
  json doc;
  doc["instance"] = instance_name;
  doc["variant"] = to_string(e.variant);
  doc["qubits"] = e.qubits;
  doc["ancilla_qubits"] = e.ancilla_qubits;
  doc["gates"] = e.gates;
  doc["qtg_depth_cycles"] = e.qtg_depth_cycles;
  doc["grover_iteration_cycles"] = e.grover_iteration_cycles;
  doc["profit_bound"] = e.profit_bound;
  doc["profit_register_bits"] = e.profit_register_bits;
  doc["capacity_register_bits"] = e.capacity_register_bits;
  doc["break_position"] = e.break_position;
  doc["comparisons_skipped"] = e.comparisons_skipped;
  doc["quadratic_adders"] = e.quadratic_adders;
  doc["layers"] = {{"branching", op(e.layers.branching)},
                   {"capacity_update", op(e.layers.capacity_update)},
                   {"profit_update", op(e.layers.profit_update)}};
  doc["oracle"] = op(e.oracle);
  doc["reflection"] = op(e.reflection);
  return doc.dump(2) + "\n";
}

}  // namespace qtg
