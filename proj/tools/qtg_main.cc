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

// Command-line front end for the QTG knapsack toolkit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtg/amplification.h"
#include "qtg/bench.h"
#include "qtg/classical.h"
#include "qtg/errors.h"
#include "qtg/instance.h"
#include "qtg/instance_io.h"
#include "qtg/qtg_sampler.h"
#include "qtg/resources.h"
#include "qtg/rng.h"
#include "qtg/trace.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InputArgs {
  std::string file;
  std::string format = "json";
  std::optional<int> index;
  std::string qkp_layout = "default";
};

void add_input_options(CLI::App* cmd, InputArgs& args) {
  cmd->add_option("file", args.file, "Instance file")->required();
  cmd->add_option("--format", args.format, "Instance format")
      ->check(CLI::IsMember({"json", "orlib", "qkplib"}));
  cmd->add_option("--index", args.index, "Problem index in an ORLIB container file");
  cmd->add_option("--qkp-layout", args.qkp_layout,
                  "QKPLIB field order: preset name or comma-separated fields");
}

qtg::KnapsackInstance load(const InputArgs& args) {
  qtg::ParseOptions options;
  options.orlib_index = args.index;
  options.qkplib_layout = qtg::QkplibLayout::parse(args.qkp_layout);
  return qtg::parse_instance(args.file, qtg::parse_instance_format(args.format), options);
}

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw qtg::Error("cannot write " + path);
  out << content;
}

json path_json(const qtg::Path& path) {
  return {{"bits", qtg::bits_to_string(path.bits)},
          {"profit", path.profit},
          {"residuals", path.residuals}};
}

int run_validate(const InputArgs& args) {
  const qtg::KnapsackInstance inst = load(args);
  std::cout << "ok: " << inst.name() << " (" << to_string(inst.kind()) << ", n=" << inst.n()
            << ", d=" << inst.d() << ")\n";
  return 0;
}

int run_greedy(const InputArgs& args) {
  const qtg::KnapsackInstance inst = load(args);
  json out = path_json(qtg::greedy_incumbent(inst));
  out["order"] = qtg::density_order(inst);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_oracle(const InputArgs& args, int limit_n) {
  const qtg::KnapsackInstance inst = load(args);
  const qtg::ExactResult result = qtg::exact_optimum(inst, limit_n);
  json out = path_json(result.best);
  out["nodes"] = result.nodes;
  std::cout << out.dump(2) << '\n';
  return 0;
}

struct SampleArgs {
  std::optional<double> bias;
  bool follow = false;
  std::string incumbent = "greedy";
  std::uint64_t draws = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_sample(const InputArgs& in, const SampleArgs& args) {
  const qtg::KnapsackInstance inst = load(in);
  qtg::Bits incumbent;
  if (args.incumbent == "greedy") {
    incumbent = qtg::greedy_incumbent(inst).bits;
  } else if (args.incumbent == "zeros") {
    incumbent.assign(inst.n(), 0);
  } else {
    incumbent = qtg::bits_from_string(args.incumbent);
  }
  qtg::Bias bias = args.follow ? qtg::Bias::follow_incumbent()
                               : args.bias ? qtg::Bias::finite(*args.bias)
                                           : qtg::Bias::finite(0.0);
  const qtg::QtgModel model(inst, incumbent, bias);
  std::ostringstream csv;
  csv << "draw,bits,profit\n";
  std::uint64_t draw = 0;
  qtg::for_each_sample(model, args.draws, args.seed, 0, [&](const qtg::Path& path) {
    csv << draw++ << ',' << qtg::bits_to_string(path.bits) << ',' << path.profit << '\n';
  });
  emit(args.out, csv.str());
  return 0;
}

struct SearchArgs {
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 0;
  int bias_delta = 4;
  double cycle_time_ns = 1.0;
  std::string variant = "parallel-tree";
  std::string cost_model;
  std::string out;
};

qtg::CostModel load_cost(const std::string& path) {
  return path.empty() ? qtg::CostModel{} : qtg::load_cost_model(path);
}

int run_search(const InputArgs& in, const SearchArgs& args) {
  const qtg::KnapsackInstance inst = load(in);
  const qtg::CostModel cost = load_cost(args.cost_model);
  const qtg::ResourceEstimate est =
      qtg::estimate_qtg(inst, cost, qtg::parse_variant(args.variant));
  qtg::AmplificationConfig config;
  config.seed = args.seed;
  config.max_grover_iterations = args.max_iters;
  config.bias = qtg::BiasPolicy::targeting(args.bias_delta);
  config.cycles = qtg::cycle_costs_from(est, cost);
  config.run_id = qtg::stable_hash(inst.name());
  const qtg::QMaxSearchResult result = qtg::qmaxsearch(inst, config);

  std::ostringstream csv;
  qtg::write_trace_csv(result.trace, csv);
  emit(args.out, csv.str());

  const qtg::QuantumRunRecord& rec = result.record;
  json rounds = json::array();
  for (const qtg::RoundRecord& r : rec.rounds) {
    json row = {{"threshold", r.threshold},
                {"success_mass", r.success_mass},
                {"iterations", r.iterations},
                {"cycles", r.cycles}};
    row["outcome"] = r.outcome ? json(qtg::bits_to_string(r.outcome->bits)) : json(nullptr);
    rounds.push_back(std::move(row));
  }
  json meta = {{"instance", inst.name()},
               {"seed", args.seed},
               {"max_grover_iterations", rec.max_grover_iterations},
               {"bias_delta", args.bias_delta},
               {"cycle_time_ns", args.cycle_time_ns},
               {"variant", args.variant},
               {"cumulative_cycles", rec.cumulative_cycles},
               {"runtime_seconds",
                qtg::cycles_to_runtime(static_cast<double>(rec.cumulative_cycles),
                                       args.cycle_time_ns)},
               {"total_iterations", rec.total_iterations},
               {"final", path_json(rec.final_incumbent)},
               {"rounds", std::move(rounds)}};
  const std::string meta_text = meta.dump(2) + "\n";
  if (args.out.empty() || args.out == "-") {
    std::cerr << meta_text;
  } else {
    emit(args.out + ".meta.json", meta_text);
  }
  return 0;
}

int run_estimate(const InputArgs& in, const SearchArgs& args) {
  const qtg::KnapsackInstance inst = load(in);
  const qtg::CostModel cost = load_cost(args.cost_model);
  const qtg::ResourceEstimate est =
      qtg::estimate_qtg(inst, cost, qtg::parse_variant(args.variant));
  emit(args.out, qtg::estimate_to_json(est, inst.name()));
  return 0;
}

struct BenchArgs {
  std::string instances;
  std::string format = "json";
  std::string qkp_layout = "default";
  std::string classical_traces;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 0;
  int bias_delta = 4;
  double cycle_time_ns = 1.0;
  std::string variant = "parallel-tree";
  std::string cost_model;
  std::string out = "results";
  bool strict = false;
};

int run_bench(const BenchArgs& args) {
  qtg::CampaignConfig config;
  config.instances_dir = args.instances;
  config.format = qtg::parse_instance_format(args.format);
  config.parse.qkplib_layout = qtg::QkplibLayout::parse(args.qkp_layout);
  if (!args.classical_traces.empty()) config.classical_traces_dir = args.classical_traces;
  config.out_dir = args.out;
  config.seed = args.seed;
  config.max_grover_iterations = args.max_iters;
  config.bias_delta = args.bias_delta;
  config.cycle_time_ns = args.cycle_time_ns;
  config.variant = qtg::parse_variant(args.variant);
  config.cost = load_cost(args.cost_model);
  config.strict_filter = args.strict;
  if (const char* env = std::getenv("QTG_WORKERS")) {
    try {
      config.workers = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw qtg::InputError(std::string("QTG_WORKERS must be an integer, got '") + env + "'");
    }
  }
  const qtg::CampaignSummary summary = qtg::run_campaign(config);
  std::cout << "instances: " << summary.instances.size() << ", records: " << summary.records
            << ", matched: " << summary.matched << ", dropped: " << summary.dropped
            << ", failures: " << summary.failures << '\n';
  return summary.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QTG knapsack toolkit: instances, classical baselines, QTG sampling, "
               "amplitude-amplification search and resource estimates"};
  app.require_subcommand(1);

  InputArgs input;
  int limit_n = qtg::kDefaultExactLimit;
  SampleArgs sample;
  SearchArgs search;
  BenchArgs bench;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate an instance");
  add_input_options(validate, input);

  CLI::App* greedy = app.add_subcommand("greedy", "Greedy density packing");
  add_input_options(greedy, input);

  CLI::App* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  add_input_options(oracle, input);
  oracle->add_option("--limit-n", limit_n, "Refuse instances with more items")
      ->check(CLI::PositiveNumber);

  CLI::App* sample_cmd = app.add_subcommand("sample", "Draw QTG paths");
  add_input_options(sample_cmd, input);
  auto* bias_opt = sample_cmd->add_option("--bias", sample.bias, "Bias b >= 0")
                       ->check(CLI::NonNegativeNumber);
  sample_cmd->add_flag("--follow", sample.follow, "Always follow the incumbent")
      ->excludes(bias_opt);
  sample_cmd->add_option("--incumbent", sample.incumbent,
                         "greedy, zeros, or an explicit bit string");
  sample_cmd->add_option("--draws", sample.draws, "Number of samples");
  sample_cmd->add_option("--seed", sample.seed, "RNG seed");
  sample_cmd->add_option("--out", sample.out, "Output CSV (default stdout)");

  auto add_estimate_options = [&](CLI::App* cmd) {
    cmd->add_option("--variant", search.variant, "interleaved, deferred or parallel-tree")
        ->check(CLI::IsMember({"interleaved", "deferred", "parallel-tree"}));
    cmd->add_option("--cost-model", search.cost_model, "Cost model key-value file");
    cmd->add_option("--out", search.out, "Output file (default stdout)");
  };

  CLI::App* search_cmd = app.add_subcommand("search", "Emulated QMaxSearch");
  add_input_options(search_cmd, input);
  search_cmd->add_option("--seed", search.seed, "RNG seed");
  search_cmd->add_option("--max-iters", search.max_iters,
                         "Grover iterations per threshold search (0: n^2)");
  search_cmd->add_option("--bias-delta", search.bias_delta, "Target Hamming distance")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--cycle-time-ns", search.cycle_time_ns, "Nanoseconds per cycle")
      ->check(CLI::PositiveNumber);
  add_estimate_options(search_cmd);

  CLI::App* estimate = app.add_subcommand("estimate", "QTG resource estimate");
  add_input_options(estimate, input);
  add_estimate_options(estimate);

  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark campaign over a directory");
  bench_cmd->add_option("--instances", bench.instances, "Instance directory")->required();
  bench_cmd->add_option("--format", bench.format, "Instance format")
      ->check(CLI::IsMember({"json", "orlib", "qkplib"}));
  bench_cmd->add_option("--qkp-layout", bench.qkp_layout, "QKPLIB field order");
  bench_cmd->add_option("--classical-traces", bench.classical_traces,
                        "Directory of <instance-stem>.csv classical traces");
  bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_option("--max-iters", bench.max_iters,
                        "Grover iterations per threshold search (0: n^2)");
  bench_cmd->add_option("--bias-delta", bench.bias_delta, "Target Hamming distance")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cycle-time-ns", bench.cycle_time_ns, "Nanoseconds per cycle")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--variant", bench.variant, "QTG variant for cycle costs")
      ->check(CLI::IsMember({"interleaved", "deferred", "parallel-tree"}));
  bench_cmd->add_option("--cost-model", bench.cost_model, "Cost model key-value file");
  bench_cmd->add_flag("--strict", bench.strict,
                      "Keep only instances where the quantum side strictly improves");
  bench_cmd->add_option("--out", bench.out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(input);
    if (*greedy) return run_greedy(input);
    if (*oracle) return run_oracle(input, limit_n);
    if (*sample_cmd) return run_sample(input, sample);
    if (*search_cmd) return run_search(input, search);
    if (*estimate) return run_estimate(input, search);
    if (*bench_cmd) return run_bench(bench);
  } catch (const qtg::RefusalError& err) {
    std::cerr << "refused: " << err.what() << '\n';
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 0;
}
