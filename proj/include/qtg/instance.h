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

#ifndef QTG_INSTANCE_H_
#define QTG_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtg/bits.h"

namespace qtg {

enum class ProblemKind { kQkp, kMdkp };

const char* to_string(ProblemKind kind);

// A validated 0-1 quadratic (QKP) or multidimensional (MDKP) knapsack
// instance. Immutable after construction; all numeric data is integral.
//
// Invariants enforced by the factories:
//   * for every dimension i: max_m w[i][m] <= c[i] < sum_m w[i][m]; the
//     strict upper bound is waived for single-item instances
//   * QKP profit matrices are symmetric
//   * every weight and profit is nonnegative, every capacity positive
//   * objective sums and weight sums fit in int64
class KnapsackInstance {
 public:
  // `profit_matrix` is row-major n x n. Diagonal entries are the linear
  // profits; a selected pair (m, m') earns p[m][m'] + p[m'][m].
  static KnapsackInstance qkp(std::string name, std::vector<std::int64_t> weights,
                              std::int64_t capacity,
                              std::vector<std::int64_t> profit_matrix);

  // `weights` is d rows of n entries.
  static KnapsackInstance mdkp(std::string name,
                               const std::vector<std::vector<std::int64_t>>& weights,
                               std::vector<std::int64_t> capacities,
                               std::vector<std::int64_t> profits);

  ProblemKind kind() const { return kind_; }
  bool is_qkp() const { return kind_ == ProblemKind::kQkp; }
  int n() const { return n_; }
  int d() const { return d_; }
  const std::string& name() const { return name_; }

  std::int64_t weight(int dimension, int item) const {
    return weights_[static_cast<std::size_t>(dimension) * n_ + item];
  }
  std::span<const std::int64_t> weights(int dimension) const {
    return {weights_.data() + static_cast<std::size_t>(dimension) * n_,
            static_cast<std::size_t>(n_)};
  }
  std::int64_t capacity(int dimension) const { return capacities_[dimension]; }
  std::span<const std::int64_t> capacities() const { return capacities_; }

  // p_m: the QKP diagonal or the MDKP profit vector.
  std::int64_t linear_profit(int item) const { return linear_[item]; }
  // Matrix entry p[m][m'] (QKP); zero off the diagonal for MDKP.
  std::int64_t profit_entry(int m, int m2) const;
  // Profit earned when both m != m' are selected: p[m][m'] + p[m'][m].
  std::int64_t pair_profit(int m, int m2) const {
    return is_qkp() ? 2 * matrix_[static_cast<std::size_t>(m) * n_ + m2] : 0;
  }
  // Row-major n x n matrix (QKP) or empty (MDKP).
  std::span<const std::int64_t> profit_matrix() const { return matrix_; }

  // Known optimal objective carried by some benchmark files (0 = unknown in
  // the ORLIB convention is mapped to nullopt).
  const std::optional<std::int64_t>& known_optimum() const {
    return known_optimum_;
  }
  KnapsackInstance with_known_optimum(std::optional<std::int64_t> value) const;

  // Objective values are this multiple of the source file's objective (some
  // QKP dialects store pair totals that cannot be split into integers).
  int profit_scale() const { return profit_scale_; }
  KnapsackInstance with_profit_scale(int scale) const;

  KnapsackInstance with_name(std::string name) const;

  friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;

 private:
  KnapsackInstance() = default;
  void validate() const;

  ProblemKind kind_ = ProblemKind::kQkp;
  std::string name_;
  int n_ = 0;
  int d_ = 1;
  std::vector<std::int64_t> weights_;  // d x n row-major
  std::vector<std::int64_t> capacities_;
  std::vector<std::int64_t> linear_;
  std::vector<std::int64_t> matrix_;  // n x n (QKP only)
  std::optional<std::int64_t> known_optimum_;
  int profit_scale_ = 1;
};

// A complete assignment with its objective value and residual capacities.
struct Path {
  Bits bits;
  std::int64_t profit = 0;
  std::vector<std::int64_t> residuals;

  bool feasible() const;
  friend bool operator==(const Path&, const Path&) = default;
};

struct Feasibility {
  bool feasible = false;
  std::vector<std::int64_t> residuals;
};

// Upper bound on the optimal objective; sizes the profit register.
struct ProfitBound {
  std::int64_t value = 1;
};

// Exact objective of `bits`. Throws InputError on length mismatch.
std::int64_t evaluate_profit(const KnapsackInstance& instance, const Bits& bits);

// Residuals c_i - sum_m w_im x_m for all i, and whether all are >= 0.
Feasibility check_feasible(const KnapsackInstance& instance, const Bits& bits);

// Evaluates both profit and residuals.
Path make_path(const KnapsackInstance& instance, Bits bits);

// Sum of all profit matrix entries (QKP) or of the profit vector (MDKP),
// clamped below at 1.
ProfitBound profit_upper_bound(const KnapsackInstance& instance);

}  // namespace qtg

#endif  // QTG_INSTANCE_H_
