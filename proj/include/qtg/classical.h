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

#ifndef QTG_CLASSICAL_H_
#define QTG_CLASSICAL_H_

#include <cstdint>
#include <vector>

#include "qtg/instance.h"

namespace qtg {

// Greedy density of each item.
//   QKP:  (p_m + sum_{m' != m} p[m][m']) / w_m
//   MDKP: p_m / sum_i (w_im / c_i)
// Zero-weight items have infinite density.
std::vector<double> greedy_densities(const KnapsackInstance& instance);

// Items sorted by descending density; ties keep the lower index first. This
// is the fixed traversal order of the tree sampler and the exact oracle.
std::vector<int> density_order(const KnapsackInstance& instance);

// Packs items in density order, skipping any that no longer fit.
Path greedy_incumbent(const KnapsackInstance& instance);

struct Improvement {
  std::uint64_t nodes = 0;  // search nodes expanded when found
  Path path;
};

struct ExactResult {
  Path best;
  std::uint64_t nodes = 0;
  // Every strict improvement of the running best, in discovery order.
  std::vector<Improvement> improvements;
};

inline constexpr int kDefaultExactLimit = 24;

// Exhaustive depth-first enumeration of the feasible assignment tree in
// density order (exclude branch first). Infeasible subtrees are never
// entered. Ties keep the first optimum found. Throws RefusalError when
// n > limit_n.
ExactResult exact_optimum(const KnapsackInstance& instance,
                          int limit_n = kDefaultExactLimit);

}  // namespace qtg

#endif  // QTG_CLASSICAL_H_
