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

#ifndef QTG_QTG_SAMPLER_H_
#define QTG_QTG_SAMPLER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "qtg/instance.h"
#include "qtg/rng.h"

namespace qtg {

// Measurement statistics of one biased branching rotation applied to |0>:
// squared amplitudes of the first column of the biased R_y gate.
struct BranchProbabilities {
  double exclude = 0.5;  // bit 0
  double include = 0.5;  // bit 1
};

// The incumbent's bit is kept with probability (1+b)/(2+b) and flipped with
// probability 1/(2+b). b = 0 is the Hadamard split. Throws InputError for
// negative or non-finite b.
BranchProbabilities branch_probability(int incumbent_bit, double bias);

// b ~ n / delta, the bias that favours paths at Hamming distance delta from
// the incumbent. Throws InputError for n < 1 or delta < 1.
double bias_for_distance(int n, int delta);

// Bias of the branching rotations. The b -> infinity limit is a separate
// deterministic mode rather than a large number.
class Bias {
 public:
  static Bias finite(double b);
  static Bias follow_incumbent() { return Bias(0.0, true); }

  bool follows_incumbent() const { return follow_; }
  // Meaningless when follows_incumbent().
  double value() const { return value_; }

 private:
  Bias(double value, bool follow) : value_(value), follow_(follow) {}
  double value_;
  bool follow_;
};

// Biased branching distribution over feasible paths: items are visited in
// `item_order`; an item whose weight exceeds a residual capacity in any
// dimension is forced out; otherwise the bit is drawn against the incumbent's
// bit. The model keeps a reference to `instance`, which must outlive it.
class QtgModel {
 public:
  // An empty `item_order` selects density_order(instance). The instance is
  // referenced, not copied, and must outlive the model.
  QtgModel(const KnapsackInstance& instance, Bits incumbent, Bias bias,
           std::vector<int> item_order = {});
  QtgModel(KnapsackInstance&&, Bits, Bias, std::vector<int> = {}) = delete;

  const KnapsackInstance& instance() const { return *instance_; }
  const Bits& incumbent() const { return incumbent_; }
  const Bias& bias() const { return bias_; }
  const std::vector<int>& item_order() const { return order_; }

  // Draws one path; the result is always feasible.
  Path sample(RandomStream& rng) const;
  // Same, reusing `out`'s storage.
  void sample_into(RandomStream& rng, Path& out) const;

  // Probability of measuring `bits`: product of branch probabilities, forced
  // exclusions contributing 1 (or 0 if the bit is set). Zero for infeasible
  // bits. Throws InputError on length mismatch.
  double probability(const Bits& bits) const;
  // Natural log of probability(); -infinity for unreachable paths.
  double log_probability(const Bits& bits) const;

  // Depth-first walk of every reachable path with its profit and
  // probability, exclude branch first.
  using Visitor = std::function<void(const Bits& bits, std::int64_t profit,
                                     double probability)>;
  void enumerate(const Visitor& visit) const;

 private:
  const KnapsackInstance* instance_;
  Bits incumbent_;
  Bias bias_;
  std::vector<int> order_;
  double keep_ = 0.5;
  double flip_ = 0.5;
};

Path sample_path(const QtgModel& model, RandomStream& rng);
double path_probability(const QtgModel& model, const Bits& bits);

// Draws `draws` paths using streams keyed (seed, stream, block) with a fixed
// block size, so results do not depend on how blocks are distributed.
void for_each_sample(const QtgModel& model, std::uint64_t draws,
                     std::uint64_t seed, std::uint64_t stream,
                     const std::function<void(const Path&)>& visit);

enum class MassMode { kExact, kMonteCarlo, kAuto };

struct SuccessMassOptions {
  MassMode mode = MassMode::kAuto;
  // kExact refuses above this size; kAuto switches to sampling above it.
  int exact_limit = 20;
  std::uint64_t samples = 100000;
};

struct SuccessMass {
  double p = 0.0;
  double std_error = 0.0;  // 0 for exact results
  bool exact = true;
};

// Probability that a measurement yields a path with profit > threshold.
SuccessMass success_mass(const QtgModel& model, std::int64_t threshold,
                         const SuccessMassOptions& options, RandomStream& rng);

}  // namespace qtg

#endif  // QTG_QTG_SAMPLER_H_
