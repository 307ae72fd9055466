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

#include "qtg/qtg_sampler.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qtg/classical.h"
#include "qtg/errors.h"

namespace qtg {
namespace {

constexpr std::uint64_t kSampleBlock = 4096;
constexpr int kLinearSpaceLimit = 64;

bool forced_out(const KnapsackInstance& inst, int m,
                const std::vector<std::int64_t>& residual) {
  for (int i = 0; i < inst.d(); ++i) {
    if (inst.weight(i, m) > residual[i]) return true;
  }
  return false;
}

}  // namespace

BranchProbabilities branch_probability(int incumbent_bit, double bias) {
  if (!(bias >= 0.0) || !std::isfinite(bias)) {
    throw InputError("bias must be a finite nonnegative number");
  }
  if (incumbent_bit != 0 && incumbent_bit != 1) {
    throw InputError("incumbent bit must be 0 or 1");
  }
  const double flip = 1.0 / (2.0 + bias);
  const double keep = 1.0 - flip;
  return incumbent_bit == 1 ? BranchProbabilities{flip, keep}
                            : BranchProbabilities{keep, flip};
}

double bias_for_distance(int n, int delta) {
  if (n < 1) throw InputError("bias_for_distance: n must be >= 1");
  if (delta < 1) {
    throw InputError(
        "bias_for_distance: delta must be >= 1 (delta = 0 is the "
        "follow-incumbent limit)");
  }
  return static_cast<double>(n) / static_cast<double>(delta);
}

Bias Bias::finite(double b) {
  if (!(b >= 0.0) || !std::isfinite(b)) {
    throw InputError("bias must be a finite nonnegative number");
  }
  return Bias(b, false);
}

QtgModel::QtgModel(const KnapsackInstance& instance, Bits incumbent, Bias bias,
                   std::vector<int> item_order)
    : instance_(&instance),
      incumbent_(std::move(incumbent)),
      bias_(bias),
      order_(std::move(item_order)) {
  if (static_cast<int>(incumbent_.size()) != instance.n()) {
    throw InputError("incumbent length does not match the instance");
  }
  if (!check_feasible(instance, incumbent_).feasible) {
    throw InputError("incumbent must be feasible");
  }
  if (order_.empty()) {
    order_ = density_order(instance);
  } else {
    std::vector<int> seen(instance.n(), 0);
    if (static_cast<int>(order_.size()) != instance.n()) {
      throw InputError("item order must be a permutation of all items");
    }
    for (int m : order_) {
      if (m < 0 || m >= instance.n() || seen[m]++) {
        throw InputError("item order must be a permutation of all items");
      }
    }
  }
  if (!bias_.follows_incumbent()) {
    flip_ = 1.0 / (2.0 + bias_.value());
    keep_ = 1.0 - flip_;
  }
}

void QtgModel::sample_into(RandomStream& rng, Path& out) const {
  const KnapsackInstance& inst = *instance_;
  out.bits.assign(inst.n(), 0);
  out.residuals.assign(inst.capacities().begin(), inst.capacities().end());
  out.profit = 0;
  // Selected items so far, for the pairwise QKP profit terms.
  thread_local std::vector<int> selected;
  selected.clear();
  const bool follow = bias_.follows_incumbent();
  for (int m : order_) {
    if (forced_out(inst, m, out.residuals)) continue;
    const std::uint8_t keep_bit = incumbent_[m];
    std::uint8_t bit = keep_bit;
    if (!follow && rng.uniform() >= keep_) bit = 1 - keep_bit;
    if (!bit) continue;
    out.bits[m] = 1;
    for (int i = 0; i < inst.d(); ++i) out.residuals[i] -= inst.weight(i, m);
    std::int64_t gain = inst.linear_profit(m);
    if (inst.is_qkp()) {
      for (int s : selected) gain += inst.pair_profit(m, s);
      selected.push_back(m);
    }
    out.profit += gain;
  }
}

Path QtgModel::sample(RandomStream& rng) const {
  Path path;
  sample_into(rng, path);
  return path;
}

double QtgModel::log_probability(const Bits& bits) const {
  const KnapsackInstance& inst = *instance_;
  if (static_cast<int>(bits.size()) != inst.n()) {
    throw InputError("bit string length does not match the instance");
  }
  constexpr double kZero = -std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> residual(inst.capacities().begin(),
                                     inst.capacities().end());
  const double log_keep = std::log(keep_);
  const double log_flip = std::log(flip_);
  double total = 0.0;
  for (int m : order_) {
    if (forced_out(inst, m, residual)) {
      if (bits[m]) return kZero;
      continue;
    }
    if (bias_.follows_incumbent()) {
      if (bits[m] != incumbent_[m]) return kZero;
    } else {
      total += bits[m] == incumbent_[m] ? log_keep : log_flip;
    }
    if (bits[m]) {
      for (int i = 0; i < inst.d(); ++i) residual[i] -= inst.weight(i, m);
    }
  }
  return total;
}

double QtgModel::probability(const Bits& bits) const {
  const KnapsackInstance& inst = *instance_;
  if (inst.n() > kLinearSpaceLimit) {
    const double lp = log_probability(bits);
    return std::isinf(lp) ? 0.0 : std::exp(lp);
  }
  if (static_cast<int>(bits.size()) != inst.n()) {
    throw InputError("bit string length does not match the instance");
  }
  std::vector<std::int64_t> residual(inst.capacities().begin(),
                                     inst.capacities().end());
  double total = 1.0;
  for (int m : order_) {
    if (forced_out(inst, m, residual)) {
      if (bits[m]) return 0.0;
      continue;
    }
    if (bias_.follows_incumbent()) {
      if (bits[m] != incumbent_[m]) return 0.0;
    } else {
      total *= bits[m] == incumbent_[m] ? keep_ : flip_;
    }
    if (bits[m]) {
      for (int i = 0; i < inst.d(); ++i) residual[i] -= inst.weight(i, m);
    }
  }
  return total;
}

void QtgModel::enumerate(const Visitor& visit) const {
  const KnapsackInstance& inst = *instance_;
  const int n = inst.n();
  Bits bits(n, 0);
  std::vector<std::int64_t> residual(inst.capacities().begin(),
                                     inst.capacities().end());
  std::vector<int> selected;
  const bool follow = bias_.follows_incumbent();

  auto recurse = [&](auto&& self, int depth, std::int64_t profit,
                     double prob) -> void {
    if (depth == n) {
      visit(bits, profit, prob);
      return;
    }
    const int m = order_[depth];
    if (forced_out(inst, m, residual)) {
      self(self, depth + 1, profit, prob);
      return;
    }
    const bool inc = incumbent_[m] != 0;
    const double p_exclude = follow ? (inc ? 0.0 : 1.0) : (inc ? flip_ : keep_);
    const double p_include = follow ? (inc ? 1.0 : 0.0) : (inc ? keep_ : flip_);
    if (p_exclude > 0.0) self(self, depth + 1, profit, prob * p_exclude);
    if (p_include > 0.0) {
      std::int64_t gain = inst.linear_profit(m);
      if (inst.is_qkp()) {
        for (int s : selected) gain += inst.pair_profit(m, s);
      }
      for (int i = 0; i < inst.d(); ++i) residual[i] -= inst.weight(i, m);
      bits[m] = 1;
      selected.push_back(m);
      self(self, depth + 1, profit + gain, prob * p_include);
      selected.pop_back();
      bits[m] = 0;
      for (int i = 0; i < inst.d(); ++i) residual[i] += inst.weight(i, m);
    }
  };
  recurse(recurse, 0, 0, 1.0);
}

Path sample_path(const QtgModel& model, RandomStream& rng) {
  return model.sample(rng);
}

double path_probability(const QtgModel& model, const Bits& bits) {
  return model.probability(bits);
}

void for_each_sample(const QtgModel& model, std::uint64_t draws,
                     std::uint64_t seed, std::uint64_t stream,
                     const std::function<void(const Path&)>& visit) {
  Path path;
  for (std::uint64_t block = 0; block * kSampleBlock < draws; ++block) {
    RandomStream rng(seed, {stream, block});
    const std::uint64_t end = std::min(draws, (block + 1) * kSampleBlock);
    for (std::uint64_t k = block * kSampleBlock; k < end; ++k) {
      model.sample_into(rng, path);
      visit(path);
    }
  }
}

SuccessMass success_mass(const QtgModel& model, std::int64_t threshold,
                         const SuccessMassOptions& options, RandomStream& rng) {
  const int n = model.instance().n();
  bool exact = options.mode == MassMode::kExact ||
               (options.mode == MassMode::kAuto && n <= options.exact_limit);
  if (options.mode == MassMode::kExact && n > options.exact_limit) {
    throw RefusalError("exact success mass refused: n = " + std::to_string(n) +
                       " exceeds limit " + std::to_string(options.exact_limit));
  }
  if (exact) {
    double mass = 0.0;
    model.enumerate([&](const Bits&, std::int64_t profit, double prob) {
      if (profit > threshold) mass += prob;
    });
    return SuccessMass{std::min(mass, 1.0), 0.0, true};
  }
  if (options.samples == 0) throw InputError("Monte-Carlo mode needs samples > 0");
  std::uint64_t hits = 0;
  Path path;
  for (std::uint64_t k = 0; k < options.samples; ++k) {
    model.sample_into(rng, path);
    if (path.profit > threshold) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(options.samples);
  return SuccessMass{p, std::sqrt(p * (1.0 - p) / static_cast<double>(options.samples)),
                     false};
}

}  // namespace qtg
