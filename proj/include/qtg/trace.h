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

#ifndef QTG_TRACE_H_
#define QTG_TRACE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qtg/bits.h"
#include "qtg/instance.h"

namespace qtg {

enum class TraceSource { kInternalClassical, kExternalClassical, kQuantumEmulated };

const char* to_string(TraceSource source);

struct TraceEntry {
  // Seconds for classical sources, cumulative QPU cycles for the quantum one.
  double time = 0.0;
  std::int64_t profit = 0;
  std::optional<Bits> bits;
  std::optional<std::int64_t> bound;
  // False for profit-only rows whose assignment could not be checked.
  bool verified = false;
};

// Time-ordered incumbents of one search. Entries are strictly increasing in
// both time and profit, and every entry with bits is feasible.
class SearchTrace {
 public:
  SearchTrace(TraceSource source, std::string instance_name)
      : source_(source), instance_name_(std::move(instance_name)) {}

  // Throws ValidationError if the entry would break monotonicity.
  void append(TraceEntry entry);

  TraceSource source() const { return source_; }
  const std::string& instance_name() const { return instance_name_; }
  const std::vector<TraceEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Smallest bound seen in any row, or one set explicitly.
  const std::optional<std::int64_t>& best_bound() const { return best_bound_; }
  void set_best_bound(std::optional<std::int64_t> bound) { best_bound_ = bound; }

  // Name of the time column in CSV form: "cycles" or "seconds".
  const char* time_column() const;

 private:
  TraceSource source_;
  std::string instance_name_;
  std::vector<TraceEntry> entries_;
  std::optional<std::int64_t> best_bound_;
};

// Reads a trace CSV (header `seconds,profit,bits,bound`, optionally
// `cycles,...`) and validates it against `instance`: rows with bits must be
// feasible and carry the matching objective value; profits and times must
// strictly increase. Errors name the offending CSV line.
SearchTrace ingest_external_trace(const std::filesystem::path& path,
                                  const KnapsackInstance& instance);
SearchTrace ingest_trace_text(const std::string& text,
                              const KnapsackInstance& instance,
                              TraceSource source = TraceSource::kExternalClassical);

void write_trace_csv(const SearchTrace& trace, std::ostream& out);

// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace qtg

#endif  // QTG_TRACE_H_
