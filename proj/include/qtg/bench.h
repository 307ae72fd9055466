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

#ifndef QTG_BENCH_H_
#define QTG_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qtg/errors.h"
#include "qtg/instance.h"
#include "qtg/instance_io.h"
#include "qtg/resources.h"
#include "qtg/trace.h"

namespace qtg {

// Raised by relative_gap when the objective is zero.
class UndefinedGapError : public InputError {
 public:
  using InputError::InputError;
};

struct Gap {
  double value = 0.0;
  // The bound lies below the objective, which no valid bound can do.
  bool inconsistent = false;
};

// |bound - obj| / |obj|.
Gap relative_gap(std::int64_t obj, std::int64_t bound);

// One classical incumbent paired with the earliest quantum incumbent of equal
// or better objective.
struct ComparisonRecord {
  std::string instance;
  int n = 0;
  int d = 1;
  double classical_seconds = 0.0;
  std::int64_t classical_profit = 0;
  std::uint64_t quantum_cycles = 0;
  double quantum_seconds = 0.0;
  std::int64_t quantum_profit = 0;
  std::optional<double> gap;  // empty when undefined (objective 0) or no bound
  std::string gap_flag;       // "", "inconsistent", "undefined", "no-bound"
  std::string classical_source;
};

struct MatchResult {
  std::vector<ComparisonRecord> records;
  std::size_t dropped = 0;  // classical entries with no qualifying partner
};

// For each classical entry, finds the earliest quantum entry with profit >=
// the classical profit; entries without one are dropped and counted. The gap
// uses the entry's own bound, then the trace's best bound, then
// `fallback_bound`. Throws InputError when the traces name different
// instances or the wrong trace kinds are passed.
MatchResult match_incumbents(const KnapsackInstance& instance,
                             const SearchTrace& classical,
                             const SearchTrace& quantum, double cycle_time_ns,
                             std::optional<std::int64_t> fallback_bound = std::nullopt);

// Fixed header of records.csv.
inline constexpr const char* kRecordsHeader =
    "instance,n,d,classical_seconds,quantum_cycles,quantum_seconds,gap,"
    "classical_profit,quantum_profit,classical_source,gap_flag";

std::string record_to_csv_row(const ComparisonRecord& record);

struct CampaignConfig {
  std::filesystem::path instances_dir;
  InstanceFormat format = InstanceFormat::kJson;
  ParseOptions parse;
  std::optional<std::filesystem::path> classical_traces_dir;
  std::filesystem::path out_dir = "results";
  std::uint64_t seed = 0;
  std::uint64_t max_grover_iterations = 0;  // 0: n^2
  int bias_delta = 4;
  double cycle_time_ns = 1.0;
  QtgVariant variant = QtgVariant::kParallelTree;
  CostModel cost;
  int workers = 1;
  // Keep an instance only if some pair has a strictly better quantum profit
  // (default: any matched pair qualifies).
  bool strict_filter = false;
  int exact_limit = 20;
};

struct InstanceOutcome {
  std::string file;
  std::string name;
  bool ok = false;
  std::string error;
  int n = 0;
  int d = 0;
  std::string classical_source;
  std::size_t matched = 0;
  std::size_t dropped = 0;
  bool qualifies = false;
  std::int64_t greedy_profit = 0;
  std::int64_t quantum_profit = 0;
  std::uint64_t quantum_cycles = 0;
  std::uint64_t max_grover_iterations = 0;
};

struct CampaignSummary {
  std::vector<InstanceOutcome> instances;
  std::size_t records = 0;
  std::size_t matched = 0;
  std::size_t dropped = 0;
  int failures = 0;
};

// Runs every instance file in `instances_dir` (sorted by file name) and
// writes records.csv, summary.json, traces/ and estimates/ under out_dir.
// Failed instances are logged and skipped; see CampaignSummary::failures.
CampaignSummary run_campaign(const CampaignConfig& config);

}  // namespace qtg

#endif  // QTG_BENCH_H_
