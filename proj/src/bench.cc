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

#include "qtg/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qtg/amplification.h"
#include "qtg/classical.h"
#include "qtg/errors.h"
#include "qtg/rng.h"

namespace qtg {
namespace {

namespace fs = std::filesystem;

void write_atomically(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out) throw Error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Classical incumbents from the greedy heuristic and, for small instances,
// the exact oracle. Times are nominal work units (1 ns per item scanned or
// search node expanded) so campaigns stay reproducible.
SearchTrace internal_classical_trace(const KnapsackInstance& instance,
                                     const std::optional<ExactResult>& exact) {
  SearchTrace trace(TraceSource::kInternalClassical, instance.name());
  const Path greedy = greedy_incumbent(instance);
  const double base = static_cast<double>(instance.n());
  trace.append({base / 1e9, greedy.profit, greedy.bits, std::nullopt, true});
  if (exact) {
    for (const Improvement& step : exact->improvements) {
      if (step.path.profit <= trace.entries().back().profit) continue;
      trace.append({(base + static_cast<double>(step.nodes)) / 1e9,
                    step.path.profit, step.path.bits, std::nullopt, true});
    }
  }
  return trace;
}

struct InstanceWork {
  InstanceOutcome outcome;
  std::vector<ComparisonRecord> records;
};

InstanceWork run_instance(const CampaignConfig& config, const fs::path& file) {
  InstanceWork work;
  InstanceOutcome& out = work.outcome;
  out.file = file.filename().string();
  const KnapsackInstance instance = parse_instance(file, config.format, config.parse);
  out.name = instance.name();
  out.n = instance.n();
  out.d = instance.d();

  const ResourceEstimate estimate = estimate_qtg(instance, config.cost, config.variant);
  AmplificationConfig amp;
  amp.max_grover_iterations = config.max_grover_iterations;
  amp.seed = config.seed;
  amp.run_id = stable_hash(instance.name());
  amp.bias = BiasPolicy::targeting(config.bias_delta);
  amp.cycles = cycle_costs_from(estimate, config.cost);
  amp.mass.exact_limit = config.exact_limit;
  const QMaxSearchResult quantum = qmaxsearch(instance, amp);
  out.greedy_profit = quantum.trace.entries().front().profit;
  out.quantum_profit = quantum.record.final_incumbent.profit;
  out.quantum_cycles = quantum.record.cumulative_cycles;
  out.max_grover_iterations = quantum.record.max_grover_iterations;

  std::optional<ExactResult> exact;
  if (instance.n() <= kDefaultExactLimit) exact = exact_optimum(instance);

  std::optional<SearchTrace> classical;
  if (config.classical_traces_dir) {
    const fs::path trace_file =
        *config.classical_traces_dir / (file.stem().string() + ".csv");
    if (fs::exists(trace_file)) classical = ingest_external_trace(trace_file, instance);
  }
  if (!classical) classical = internal_classical_trace(instance, exact);
  out.classical_source = to_string(classical->source());

  std::optional<std::int64_t> fallback = instance.known_optimum();
  if (!fallback && exact) fallback = exact->best.profit;

  MatchResult matched = match_incumbents(instance, *classical, quantum.trace,
                                         config.cycle_time_ns, fallback);
  out.matched = matched.records.size();
  out.dropped = matched.dropped;
  out.qualifies = std::any_of(
      matched.records.begin(), matched.records.end(), [&](const ComparisonRecord& r) {
        return config.strict_filter ? r.quantum_profit > r.classical_profit : true;
      });
  if (out.qualifies) work.records = std::move(matched.records);

  const fs::path traces = config.out_dir / "traces";
  std::ostringstream q;
  write_trace_csv(quantum.trace, q);
  write_atomically(traces / (file.stem().string() + ".quantum.csv"), q.str());
  std::ostringstream c;
  write_trace_csv(*classical, c);
  write_atomically(traces / (file.stem().string() + ".classical.csv"), c.str());
  write_atomically(config.out_dir / "estimates" / (file.stem().string() + ".json"),
                   estimate_to_json(estimate, instance.name()));
  out.ok = true;
  return work;
}

std::string summary_json(const CampaignConfig& config, const CampaignSummary& summary) {
  using nlohmann::json;
  json doc;
  doc["config"] = {
      {"instances_dir", config.instances_dir.string()},
      {"classical_traces_dir",
       config.classical_traces_dir ? config.classical_traces_dir->string() : ""},
      {"seed", config.seed},
      {"max_grover_iterations",
       config.max_grover_iterations == 0 ? json("n^2") : json(config.max_grover_iterations)},
      {"bias_delta", config.bias_delta},
      {"cycle_time_ns", config.cycle_time_ns},
      {"variant", to_string(config.variant)},
      {"strict_filter", config.strict_filter},
      {"growth", 1.2},
  };
  json instances = json::array();
  for (const InstanceOutcome& o : summary.instances) {
    json item = {{"file", o.file}, {"ok", o.ok}};
    if (!o.ok) {
      item["error"] = o.error;
    } else {
      item.update({{"name", o.name},
                   {"n", o.n},
                   {"d", o.d},
                   {"classical_source", o.classical_source},
                   {"matched", o.matched},
                   {"dropped", o.dropped},
                   {"qualifies", o.qualifies},
                   {"greedy_profit", o.greedy_profit},
                   {"quantum_profit", o.quantum_profit},
                   {"quantum_cycles", o.quantum_cycles},
                   {"max_grover_iterations", o.max_grover_iterations}});
    }
    instances.push_back(std::move(item));
  }
  doc["instances"] = std::move(instances);
  doc["totals"] = {{"records", summary.records},
                   {"matched", summary.matched},
                   {"dropped", summary.dropped},
                   {"failures", summary.failures}};
  return doc.dump(2) + "\n";
}

}  // namespace

Gap relative_gap(std::int64_t obj, std::int64_t bound) {
  if (obj == 0) throw UndefinedGapError("relative gap is undefined for objective 0");
  const double diff = std::abs(static_cast<double>(bound) - static_cast<double>(obj));
  return Gap{diff / std::abs(static_cast<double>(obj)), bound < obj};
}

MatchResult match_incumbents(const KnapsackInstance& instance,
                             const SearchTrace& classical,
                             const SearchTrace& quantum, double cycle_time_ns,
                             std::optional<std::int64_t> fallback_bound) {
  if (classical.instance_name() != quantum.instance_name() ||
      classical.instance_name() != instance.name()) {
    throw InputError("trace/instance mismatch: classical '" +
                     classical.instance_name() + "', quantum '" +
                     quantum.instance_name() + "', instance '" + instance.name() + "'");
  }
  if (quantum.source() != TraceSource::kQuantumEmulated ||
      classical.source() == TraceSource::kQuantumEmulated) {
    throw InputError("match_incumbents expects a classical and a quantum trace");
  }
  MatchResult result;
  for (const TraceEntry& entry : classical.entries()) {
    const auto& q = quantum.entries();
    auto it = std::find_if(q.begin(), q.end(), [&](const TraceEntry& candidate) {
      return candidate.profit >= entry.profit;
    });
    if (it == q.end()) {
      ++result.dropped;
      continue;
    }
    ComparisonRecord rec;
    rec.instance = instance.name();
    rec.n = instance.n();
    rec.d = instance.d();
    rec.classical_seconds = entry.time;
    rec.classical_profit = entry.profit;
    rec.quantum_cycles = static_cast<std::uint64_t>(it->time);
    rec.quantum_seconds = cycles_to_runtime(it->time, cycle_time_ns);
    rec.quantum_profit = it->profit;
    rec.classical_source = to_string(classical.source());
    std::optional<std::int64_t> bound = entry.bound;
    if (!bound) bound = classical.best_bound();
    if (!bound) bound = fallback_bound;
    if (!bound) {
      rec.gap_flag = "no-bound";
    } else {
      try {
        const Gap gap = relative_gap(entry.profit, *bound);
        rec.gap = gap.value;
        if (gap.inconsistent) rec.gap_flag = "inconsistent";
      } catch (const UndefinedGapError&) {
        rec.gap_flag = "undefined";
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string record_to_csv_row(const ComparisonRecord& r) {
  std::ostringstream row;
  row << r.instance << ',' << r.n << ',' << r.d << ',' << format_double(r.classical_seconds)
      << ',' << r.quantum_cycles << ',' << format_double(r.quantum_seconds) << ',';
  if (r.gap) row << format_double(*r.gap);
  row << ',' << r.classical_profit << ',' << r.quantum_profit << ','
      << r.classical_source << ',' << r.gap_flag;
  return row.str();
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  std::vector<fs::path> files;
  if (!fs::is_directory(config.instances_dir)) {
    throw InputError("instance directory not found: " + config.instances_dir.string());
  }
  for (const auto& entry : fs::directory_iterator(config.instances_dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename().string().starts_with(".")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  fs::create_directories(config.out_dir);

  std::vector<InstanceWork> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < files.size(); k = next++) {
      try {
        results[k] = run_instance(config, files[k]);
      } catch (const std::exception& err) {
        results[k].outcome.file = files[k].filename().string();
        results[k].outcome.ok = false;
        results[k].outcome.error = err.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers,
                                                static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CampaignSummary summary;
  std::ostringstream records;
  records << kRecordsHeader << '\n';
  bool warned = false;
  for (InstanceWork& work : results) {
    const InstanceOutcome& o = work.outcome;
    if (!o.ok) {
      ++summary.failures;
      std::cerr << "bench: " << o.file << ": " << o.error << '\n';
    } else if (o.classical_source == to_string(TraceSource::kInternalClassical) &&
               !warned) {
      std::cerr << "bench: warning: no external classical trace for some instances; "
                   "internal baseline times are nominal work units, not solver "
                   "wall-times\n";
      warned = true;
    }
    summary.matched += o.matched;
    summary.dropped += o.dropped;
    for (const ComparisonRecord& r : work.records) {
      records << record_to_csv_row(r) << '\n';
      ++summary.records;
    }
    summary.instances.push_back(o);
  }
  write_atomically(config.out_dir / "records.csv", records.str());
  write_atomically(config.out_dir / "summary.json", summary_json(config, summary));
  return summary;
}

}  // namespace qtg
