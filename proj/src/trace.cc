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

#include "qtg/trace.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qtg/errors.h"

namespace qtg {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  return cells;
}

std::string at_line(int line, const std::string& message) {
  return "trace line " + std::to_string(line) + ": " + message;
}

double parse_time(const std::string& cell, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value) || value < 0.0) {
    throw ParseError("invalid timestamp '" + cell + "'", line);
  }
  return value;
}

std::int64_t parse_int(const std::string& cell, const char* what, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + cell + "'", line);
  }
  return value;
}

}  // namespace

const char* to_string(TraceSource source) {
  switch (source) {
    case TraceSource::kInternalClassical:
      return "internal-classical";
    case TraceSource::kExternalClassical:
      return "external-classical";
    case TraceSource::kQuantumEmulated:
      return "quantum-emulated";
  }
  return "unknown";
}

const char* SearchTrace::time_column() const {
  return source_ == TraceSource::kQuantumEmulated ? "cycles" : "seconds";
}

void SearchTrace::append(TraceEntry entry) {
  if (!entries_.empty()) {
    const TraceEntry& last = entries_.back();
    if (!(entry.time > last.time)) {
      throw ValidationError("timestamps must strictly increase (" +
                            format_double(last.time) + " then " +
                            format_double(entry.time) + ")");
    }
    if (!(entry.profit > last.profit)) {
      throw ValidationError("profit decreased or repeated (" +
                            std::to_string(last.profit) + " then " +
                            std::to_string(entry.profit) + ")");
    }
  }
  if (entry.bound && (!best_bound_ || *entry.bound < *best_bound_)) {
    best_bound_ = entry.bound;
  }
  entries_.push_back(std::move(entry));
}

SearchTrace ingest_trace_text(const std::string& text,
                              const KnapsackInstance& instance,
                              TraceSource source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw ParseError("trace is empty (no header)", line_no);
  if (header.size() < 2 || (header[0] != "seconds" && header[0] != "cycles") ||
      header[1] != "profit" || (header.size() > 2 && header[2] != "bits") ||
      (header.size() > 3 && header[3] != "bound") || header.size() > 4) {
    throw ParseError("trace header must be 'seconds,profit,bits,bound'", line_no);
  }
  if (header[0] == "cycles") source = TraceSource::kQuantumEmulated;

  SearchTrace trace(source, instance.name());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (cells.size() < 2 || cells.size() > header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " columns, found " + std::to_string(cells.size()),
                       line_no);
    }
    TraceEntry entry;
    entry.time = parse_time(cells[0], line_no);
    entry.profit = parse_int(cells[1], "profit", line_no);
    if (cells.size() > 2 && !cells[2].empty()) {
      Bits bits;
      try {
        bits = bits_from_string(cells[2]);
      } catch (const InputError& err) {
        throw ParseError(err.what(), line_no);
      }
      if (static_cast<int>(bits.size()) != instance.n()) {
        throw ValidationError(at_line(line_no, "bits has length " +
                                                   std::to_string(bits.size()) +
                                                   ", instance has n = " +
                                                   std::to_string(instance.n())));
      }
      if (!check_feasible(instance, bits).feasible) {
        throw ValidationError(at_line(line_no, "bits are infeasible for instance '" +
                                                   instance.name() + "'"));
      }
      const std::int64_t actual = evaluate_profit(instance, bits);
      if (actual != entry.profit) {
        throw ValidationError(at_line(
            line_no, "profit column " + std::to_string(entry.profit) +
                         " does not match the objective of bits (" +
                         std::to_string(actual) + ")"));
      }
      entry.bits = std::move(bits);
      entry.verified = true;
    }
    if (cells.size() > 3 && !cells[3].empty()) {
      entry.bound = parse_int(cells[3], "bound", line_no);
    }
    try {
      trace.append(std::move(entry));
    } catch (const ValidationError& err) {
      throw ValidationError(at_line(line_no, err.what()));
    }
  }
  return trace;
}

SearchTrace ingest_external_trace(const std::filesystem::path& path,
                                  const KnapsackInstance& instance) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open trace file " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return ingest_trace_text(buffer.str(), instance);
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_trace_csv(const SearchTrace& trace, std::ostream& out) {
  out << trace.time_column() << ",profit,bits,bound\n";
  for (const TraceEntry& e : trace.entries()) {
    if (trace.source() == TraceSource::kQuantumEmulated) {
      out << static_cast<std::uint64_t>(e.time);
    } else {
      out << format_double(e.time);
    }
    out << ',' << e.profit << ',';
    if (e.bits) out << bits_to_string(*e.bits);
    out << ',';
    if (e.bound) out << *e.bound;
    out << '\n';
  }
}

}  // namespace qtg
