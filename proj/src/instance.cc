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

#include "qtg/instance.h"

#include <algorithm>
#include <string>
#include <utility>

#include "qtg/errors.h"

namespace qtg {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ValidationError(std::string(what) + " overflows int64");
  }
  return out;
}

void require_length(const KnapsackInstance& instance, const Bits& bits) {
  if (static_cast<int>(bits.size()) != instance.n()) {
    throw InputError("bit string has length " + std::to_string(bits.size()) +
                     " but the instance has n = " +
                     std::to_string(instance.n()));
  }
}

}  // namespace

const char* to_string(ProblemKind kind) {
  return kind == ProblemKind::kQkp ? "qkp" : "mdkp";
}

KnapsackInstance KnapsackInstance::qkp(std::string name,
                                       std::vector<std::int64_t> weights,
                                       std::int64_t capacity,
                                       std::vector<std::int64_t> profit_matrix) {
  KnapsackInstance inst;
  inst.kind_ = ProblemKind::kQkp;
  inst.name_ = std::move(name);
  inst.n_ = static_cast<int>(weights.size());
  inst.d_ = 1;
  if (profit_matrix.size() != weights.size() * weights.size()) {
    throw ValidationError("profit matrix must be n x n with n = " +
                          std::to_string(weights.size()));
  }
  inst.weights_ = std::move(weights);
  inst.capacities_ = {capacity};
  inst.matrix_ = std::move(profit_matrix);
  inst.linear_.resize(inst.n_);
  for (int m = 0; m < inst.n_; ++m) {
    inst.linear_[m] = inst.matrix_[static_cast<std::size_t>(m) * inst.n_ + m];
  }
  inst.validate();
  return inst;
}

KnapsackInstance KnapsackInstance::mdkp(
    std::string name, const std::vector<std::vector<std::int64_t>>& weights,
    std::vector<std::int64_t> capacities, std::vector<std::int64_t> profits) {
  KnapsackInstance inst;
  inst.kind_ = ProblemKind::kMdkp;
  inst.name_ = std::move(name);
  inst.n_ = static_cast<int>(profits.size());
  inst.d_ = static_cast<int>(weights.size());
  if (capacities.size() != weights.size()) {
    throw ValidationError("expected " + std::to_string(weights.size()) +
                          " capacities, got " +
                          std::to_string(capacities.size()));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].size() != profits.size()) {
      throw ValidationError("weight row " + std::to_string(i) + " has " +
                                std::to_string(weights[i].size()) +
                                " entries, expected n = " +
                                std::to_string(profits.size()),
                            static_cast<int>(i));
    }
    inst.weights_.insert(inst.weights_.end(), weights[i].begin(),
                         weights[i].end());
  }
  inst.capacities_ = std::move(capacities);
  inst.linear_ = std::move(profits);
  inst.validate();
  return inst;
}

void KnapsackInstance::validate() const {
  if (n_ < 1) throw ValidationError("instance must have at least one item");
  if (d_ < 1) throw ValidationError("instance must have at least one dimension");
  for (int i = 0; i < d_; ++i) {
    const std::int64_t c = capacities_[i];
    if (c <= 0) {
      throw ValidationError("capacity c[" + std::to_string(i) +
                                "] = " + std::to_string(c) + " is not positive",
                            i);
    }
    std::int64_t total = 0;
    for (int m = 0; m < n_; ++m) {
      const std::int64_t w = weight(i, m);
      if (w < 0) {
        throw ValidationError("weight w[" + std::to_string(i) + "][" +
                                  std::to_string(m) + "] is negative",
                              i, m);
      }
      if (w > c) {
        throw ValidationError("max_m w_im <= c_i violated: w[" +
                                  std::to_string(i) + "][" + std::to_string(m) +
                                  "] = " + std::to_string(w) + " exceeds c[" +
                                  std::to_string(i) + "] = " + std::to_string(c),
                              i, m);
      }
      total = checked_add(total, w, "weight sum");
    }
    // With one item the strict upper clause cannot hold together with w <= c.
    if (n_ > 1 && c >= total) {
      throw ValidationError("c_i < sum_m w_im violated in dimension " +
                                std::to_string(i) + ": capacity " +
                                std::to_string(c) + " admits every item (sum " +
                                std::to_string(total) + ")",
                            i);
    }
  }
  std::int64_t objective = 0;
  for (int m = 0; m < n_; ++m) {
    if (linear_[m] < 0) {
      throw ValidationError("profit p[" + std::to_string(m) + "] is negative",
                            -1, m);
    }
    objective = checked_add(objective, linear_[m], "profit sum");
  }
  if (kind_ == ProblemKind::kQkp) {
    for (int m = 0; m < n_; ++m) {
      for (int m2 = 0; m2 < n_; ++m2) {
        const std::int64_t v = matrix_[static_cast<std::size_t>(m) * n_ + m2];
        if (v < 0) {
          throw ValidationError("profit p[" + std::to_string(m) + "][" +
                                    std::to_string(m2) + "] is negative",
                                -1, m);
        }
        if (v != matrix_[static_cast<std::size_t>(m2) * n_ + m]) {
          throw ValidationError("profit matrix is not symmetric: p[" +
                                    std::to_string(m) + "][" +
                                    std::to_string(m2) + "] != p[" +
                                    std::to_string(m2) + "][" +
                                    std::to_string(m) + "]",
                                -1, m);
        }
        if (m != m2) objective = checked_add(objective, v, "profit sum");
      }
    }
  }
}

std::int64_t KnapsackInstance::profit_entry(int m, int m2) const {
  if (is_qkp()) return matrix_[static_cast<std::size_t>(m) * n_ + m2];
  return m == m2 ? linear_[m] : 0;
}

KnapsackInstance KnapsackInstance::with_known_optimum(
    std::optional<std::int64_t> value) const {
  KnapsackInstance copy = *this;
  copy.known_optimum_ = value;
  return copy;
}

KnapsackInstance KnapsackInstance::with_profit_scale(int scale) const {
  if (scale < 1) throw InputError("profit scale must be >= 1");
  KnapsackInstance copy = *this;
  copy.profit_scale_ = scale;
  return copy;
}

KnapsackInstance KnapsackInstance::with_name(std::string name) const {
  KnapsackInstance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool Path::feasible() const {
  return std::all_of(residuals.begin(), residuals.end(),
                     [](std::int64_t r) { return r >= 0; });
}

std::int64_t evaluate_profit(const KnapsackInstance& instance, const Bits& bits) {
  require_length(instance, bits);
  const int n = instance.n();
  std::int64_t profit = 0;
  for (int m = 0; m < n; ++m) {
    if (!bits[m]) continue;
    profit += instance.linear_profit(m);
    if (instance.is_qkp()) {
      for (int m2 = 0; m2 < n; ++m2) {
        if (m2 != m && bits[m2]) profit += instance.profit_entry(m, m2);
      }
    }
  }
  return profit;
}

Feasibility check_feasible(const KnapsackInstance& instance, const Bits& bits) {
  require_length(instance, bits);
  Feasibility out;
  out.residuals.assign(instance.capacities().begin(),
                       instance.capacities().end());
  for (int i = 0; i < instance.d(); ++i) {
    for (int m = 0; m < instance.n(); ++m) {
      if (bits[m]) out.residuals[i] -= instance.weight(i, m);
    }
  }
  out.feasible = std::all_of(out.residuals.begin(), out.residuals.end(),
                             [](std::int64_t r) { return r >= 0; });
  return out;
}

Path make_path(const KnapsackInstance& instance, Bits bits) {
  Path path;
  path.profit = evaluate_profit(instance, bits);
  path.residuals = check_feasible(instance, bits).residuals;
  path.bits = std::move(bits);
  return path;
}

ProfitBound profit_upper_bound(const KnapsackInstance& instance) {
  std::int64_t total = 0;
  if (instance.is_qkp()) {
    for (auto v : instance.profit_matrix()) total += v;
  } else {
    for (int m = 0; m < instance.n(); ++m) total += instance.linear_profit(m);
  }
  return ProfitBound{std::max<std::int64_t>(total, 1)};
}

}  // namespace qtg
