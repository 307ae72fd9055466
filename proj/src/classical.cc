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

#include "qtg/classical.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "qtg/errors.h"

namespace qtg {

std::vector<double> greedy_densities(const KnapsackInstance& instance) {
  const int n = instance.n();
  std::vector<double> density(n);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int m = 0; m < n; ++m) {
    if (instance.is_qkp()) {
      std::int64_t gain = 0;
      for (int m2 = 0; m2 < n; ++m2) gain += instance.profit_entry(m, m2);
      const std::int64_t w = instance.weight(0, m);
      density[m] = w == 0 ? kInf : static_cast<double>(gain) / static_cast<double>(w);
    } else {
      double load = 0.0;
      for (int i = 0; i < instance.d(); ++i) {
        load += static_cast<double>(instance.weight(i, m)) /
                static_cast<double>(instance.capacity(i));
      }
      density[m] = load == 0.0
                       ? kInf
                       : static_cast<double>(instance.linear_profit(m)) / load;
    }
  }
  return density;
}

std::vector<int> density_order(const KnapsackInstance& instance) {
  const std::vector<double> density = greedy_densities(instance);
  std::vector<int> order(instance.n());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return density[a] > density[b]; });
  return order;
}

Path greedy_incumbent(const KnapsackInstance& instance) {
  Bits bits(instance.n(), 0);
  std::vector<std::int64_t> residual(instance.capacities().begin(),
                                     instance.capacities().end());
  for (int m : density_order(instance)) {
    bool fits = true;
    for (int i = 0; i < instance.d(); ++i) {
      if (instance.weight(i, m) > residual[i]) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    bits[m] = 1;
    for (int i = 0; i < instance.d(); ++i) residual[i] -= instance.weight(i, m);
  }
  return make_path(instance, std::move(bits));
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const KnapsackInstance& instance, ExactResult& result)
      : inst_(instance),
        order_(density_order(instance)),
        result_(result),
        bits_(instance.n(), 0),
        residual_(instance.capacities().begin(), instance.capacities().end()) {
    selected_.reserve(instance.n());
  }

  void run() {
    result_.best = make_path(inst_, Bits(inst_.n(), 0));
    best_profit_ = result_.best.profit;
    result_.improvements.push_back({0, result_.best});
    visit(0, 0);
  }

 private:
  void visit(int depth, std::int64_t profit) {
    ++result_.nodes;
    if (depth == inst_.n()) {
      if (profit > best_profit_) {
        best_profit_ = profit;
        result_.best = make_path(inst_, bits_);
        result_.improvements.push_back({result_.nodes, result_.best});
      }
      return;
    }
    const int m = order_[depth];
    visit(depth + 1, profit);

    for (int i = 0; i < inst_.d(); ++i) {
      if (inst_.weight(i, m) > residual_[i]) return;
    }
    std::int64_t gain = inst_.linear_profit(m);
    if (inst_.is_qkp()) {
      for (int s : selected_) gain += inst_.pair_profit(m, s);
    }
    for (int i = 0; i < inst_.d(); ++i) residual_[i] -= inst_.weight(i, m);
    bits_[m] = 1;
    selected_.push_back(m);
    visit(depth + 1, profit + gain);
    selected_.pop_back();
    bits_[m] = 0;
    for (int i = 0; i < inst_.d(); ++i) residual_[i] += inst_.weight(i, m);
  }

  const KnapsackInstance& inst_;
  std::vector<int> order_;
  ExactResult& result_;
  Bits bits_;
  std::vector<std::int64_t> residual_;
  std::vector<int> selected_;
  std::int64_t best_profit_ = 0;
};

}  // namespace

ExactResult exact_optimum(const KnapsackInstance& instance, int limit_n) {
  if (instance.n() > limit_n) {
    throw RefusalError("exact enumeration refused: n = " +
                       std::to_string(instance.n()) + " exceeds limit " +
                       std::to_string(limit_n));
  }
  ExactResult result;
  ExactSearch(instance, result).run();
  return result;
}

}  // namespace qtg
