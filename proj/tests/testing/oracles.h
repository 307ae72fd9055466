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

// Test-side reference implementations. These deliberately avoid the library's
// own helpers (density order, sampler, formulas) so that agreement is
// meaningful.

#ifndef QTG_TESTING_ORACLES_H_
#define QTG_TESTING_ORACLES_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qtg/instance.h"

namespace qtg::testing {

// Raw problem data, independent of KnapsackInstance.
struct RawProblem {
  bool quadratic = true;
  int n = 0;
  std::vector<std::vector<std::int64_t>> weights;  // d rows of n
  std::vector<std::int64_t> capacities;
  std::vector<std::vector<std::int64_t>> matrix;  // QKP n x n
  std::vector<std::int64_t> profits;              // MDKP n

  KnapsackInstance build(const std::string& name = "raw") const {
    if (quadratic) {
      std::vector<std::int64_t> flat;
      for (const auto& row : matrix) flat.insert(flat.end(), row.begin(), row.end());
      return KnapsackInstance::qkp(name, weights[0], capacities[0], flat);
    }
    return KnapsackInstance::mdkp(name, weights, capacities, profits);
  }
};

inline std::int64_t ref_profit(const RawProblem& p, const Bits& x) {
  std::int64_t total = 0;
  for (int a = 0; a < p.n; ++a) {
    if (!x[a]) continue;
    if (!p.quadratic) {
      total += p.profits[a];
      continue;
    }
    for (int b = 0; b < p.n; ++b) {
      if (x[b]) total += p.matrix[a][b];
    }
  }
  return total;
}

inline bool ref_feasible(const RawProblem& p, const Bits& x) {
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    std::int64_t load = 0;
    for (int m = 0; m < p.n; ++m) load += x[m] ? p.weights[i][m] : 0;
    if (load > p.capacities[i]) return false;
  }
  return true;
}

inline Bits bits_of(std::uint64_t mask, int n) {
  Bits x(n);
  for (int m = 0; m < n; ++m) x[m] = (mask >> m) & 1U;
  return x;
}

// Plain enumeration of all 2^n assignments, no pruning.
inline std::int64_t ref_optimum(const RawProblem& p) {
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << p.n); ++mask) {
    const Bits x = bits_of(mask, p.n);
    if (ref_feasible(p, x)) best = std::max(best, ref_profit(p, x));
  }
  return best;
}

// Descending density, ties to the lower index.
inline std::vector<int> ref_order(const RawProblem& p) {
  std::vector<double> density(p.n);
  for (int m = 0; m < p.n; ++m) {
    double value = 0.0;
    double load = 0.0;
    if (p.quadratic) {
      for (int k = 0; k < p.n; ++k) value += static_cast<double>(p.matrix[m][k]);
      load = static_cast<double>(p.weights[0][m]);
    } else {
      value = static_cast<double>(p.profits[m]);
      for (std::size_t i = 0; i < p.weights.size(); ++i) {
        load += static_cast<double>(p.weights[i][m]) / static_cast<double>(p.capacities[i]);
      }
    }
    density[m] = load == 0.0 ? INFINITY : value / load;
  }
  std::vector<int> order(p.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (density[a] != density[b]) return density[a] > density[b];
    return a < b;
  });
  return order;
}

// Probability of `x` under the biased tree walk: items in `order`, an item
// that no longer fits is forced out, otherwise the incumbent bit is kept with
// probability (b+1)/(b+2). A negative bias stands for "always follow".
inline double ref_tree_probability(const RawProblem& p, const std::vector<int>& order,
                                   const Bits& incumbent, double bias, const Bits& x) {
  std::vector<std::int64_t> residual = p.capacities;
  double prob = 1.0;
  for (int m : order) {
    bool fits = true;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (p.weights[i][m] > residual[i]) fits = false;
    }
    if (!fits) {
      if (x[m]) return 0.0;
      continue;
    }
    double keep = bias < 0 ? 1.0 : (bias + 1.0) / (bias + 2.0);
    prob *= x[m] == incumbent[m] ? keep : 1.0 - keep;
    if (prob == 0.0) return 0.0;
    if (x[m]) {
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= p.weights[i][m];
    }
  }
  return prob;
}

// Full distribution over bit strings (keyed by mask) with nonzero mass.
inline std::map<std::uint64_t, double> ref_distribution(const RawProblem& p,
                                                        const Bits& incumbent,
                                                        double bias) {
  const std::vector<int> order = ref_order(p);
  std::map<std::uint64_t, double> dist;
  for (std::uint64_t mask = 0; mask < (1ULL << p.n); ++mask) {
    const double q = ref_tree_probability(p, order, incumbent, bias, bits_of(mask, p.n));
    if (q > 0.0) dist[mask] = q;
  }
  return dist;
}

inline std::uint64_t mask_of(const Bits& x) {
  std::uint64_t mask = 0;
  for (std::size_t m = 0; m < x.size(); ++m) mask |= static_cast<std::uint64_t>(x[m] != 0) << m;
  return mask;
}

// Smallest register that stores x: ceil(log2(x + 1)).
inline std::int64_t ref_register_bits(std::int64_t x) {
  std::int64_t bits = 0;
  while ((std::int64_t{1} << bits) <= x) ++bits;
  return bits;
}

inline std::int64_t ref_qubits_qkp(std::int64_t n, std::int64_t c, std::int64_t bound) {
  const std::int64_t bc = ref_register_bits(c);
  const std::int64_t bp = ref_register_bits(bound);
  return n + bc + bp + std::max({n, bc, bp});
}

inline std::int64_t ref_qubits_mdkp(std::int64_t n, const std::vector<std::int64_t>& caps,
                                    std::int64_t bound) {
  std::int64_t sum_c = 0;
  for (std::int64_t c : caps) sum_c += ref_register_bits(c);
  const std::int64_t bp = ref_register_bits(bound);
  return n + sum_c + bp + std::max({n, sum_c + 1, bp});
}

struct GeneratorOptions {
  int n = 8;
  int d = 1;
  std::int64_t max_weight = 20;
  std::int64_t max_profit = 30;
  double quadratic_density = 0.5;  // probability a pair profit is nonzero
  double tightness = 0.5;          // capacity as a fraction of total weight
};

// Random valid instance: max weight <= capacity < total weight per dimension.
inline RawProblem random_problem(std::mt19937_64& rng, bool quadratic,
                                 const GeneratorOptions& opt) {
  RawProblem p;
  p.quadratic = quadratic;
  p.n = opt.n;
  const int d = quadratic ? 1 : opt.d;
  std::uniform_int_distribution<std::int64_t> weight(1, opt.max_weight);
  std::uniform_int_distribution<std::int64_t> profit(0, opt.max_profit);
  std::bernoulli_distribution nonzero(opt.quadratic_density);
  p.weights.assign(d, std::vector<std::int64_t>(opt.n));
  p.capacities.resize(d);
  for (int i = 0; i < d; ++i) {
    std::int64_t total = 0;
    std::int64_t largest = 0;
    for (auto& w : p.weights[i]) {
      w = weight(rng);
      total += w;
      largest = std::max(largest, w);
    }
    if (opt.n == 1) {
      p.capacities[i] = largest;
      continue;
    }
    const auto target = static_cast<std::int64_t>(opt.tightness * static_cast<double>(total));
    p.capacities[i] = std::clamp(target, largest, total - 1);
  }
  if (quadratic) {
    p.matrix.assign(opt.n, std::vector<std::int64_t>(opt.n, 0));
    for (int a = 0; a < opt.n; ++a) {
      p.matrix[a][a] = profit(rng);
      for (int b = a + 1; b < opt.n; ++b) {
        const std::int64_t v = nonzero(rng) ? profit(rng) : 0;
        p.matrix[a][b] = v;
        p.matrix[b][a] = v;
      }
    }
  } else {
    p.profits.resize(opt.n);
    for (auto& v : p.profits) v = profit(rng);
  }
  return p;
}

}  // namespace qtg::testing

#endif  // QTG_TESTING_ORACLES_H_
