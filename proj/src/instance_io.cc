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

#include "qtg/instance_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "qtg/errors.h"

namespace qtg {
namespace {

using json = nlohmann::json;

struct Token {
  std::string_view text;
  int line;
};

// Whitespace tokenizer that remembers the line of every token.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : text_(text) {}

  // Consumes the rest of the current line (after skipping blank lines) as a
  // single trimmed string.
  std::string next_line() {
    skip_blank_lines();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of file", line_);
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view raw = text_.substr(pos_, end - pos_);
    while (!raw.empty() && is_space(raw.back())) raw.remove_suffix(1);
    while (!raw.empty() && is_space(raw.front())) raw.remove_prefix(1);
    pos_ = end;
    return std::string(raw);
  }

  std::optional<Token> next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    return Token{text_.substr(start, pos_ - start), line_};
  }

  Token expect(const char* what) {
    auto tok = next();
    if (!tok) {
      throw ParseError(std::string("unexpected end of file while reading ") + what,
                       line_);
    }
    return *tok;
  }

  std::int64_t integer(const char* what, int* line_out = nullptr) {
    Token tok = expect(what);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(),
                                     tok.text.data() + tok.text.size(), value);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
      throw ParseError(std::string("expected integer ") + what + ", got '" +
                           std::string(tok.text) + "'",
                       tok.line);
    }
    if (line_out) *line_out = tok.line;
    return value;
  }

  // Number of tokens left, without consuming them.
  std::size_t remaining() const {
    TokenStream copy = *this;
    std::size_t count = 0;
    while (copy.next()) ++count;
    return count;
  }

  int line() const { return line_; }

 private:
  static bool is_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
  }
  void skip_blank_lines() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

// Source lines of the numbers that feed instance fields, for error messages.
struct LineIndex {
  std::map<std::pair<int, int>, int> weight;  // (dimension, item)
  std::map<int, int> capacity;
  std::map<int, int> profit;
  int fallback = 0;

  int lookup(const ValidationError& err) const {
    if (err.dimension() >= 0 && err.item() >= 0) {
      auto it = weight.find({err.dimension(), err.item()});
      if (it != weight.end()) return it->second;
    }
    if (err.dimension() >= 0 && err.item() < 0) {
      auto it = capacity.find(err.dimension());
      if (it != capacity.end()) return it->second;
    }
    if (err.item() >= 0) {
      auto it = profit.find(err.item());
      if (it != profit.end()) return it->second;
    }
    return fallback;
  }
};

template <typename Build>
KnapsackInstance build_with_lines(const LineIndex& lines, Build&& build) {
  try {
    return build();
  } catch (const ValidationError& err) {
    const int line = lines.lookup(err);
    if (line <= 0) throw;
    throw ValidationError("line " + std::to_string(line) + ": " + err.what(),
                          err.dimension(), err.item());
  }
}

KnapsackInstance parse_orlib_problem(TokenStream& in, bool has_optimum,
                                     std::string name) {
  LineIndex lines;
  const std::int64_t n = in.integer("item count n");
  const std::int64_t d = in.integer("dimension count d");
  if (n < 1) throw ParseError("item count must be positive", in.line());
  if (d < 1) throw ParseError("dimension count must be positive", in.line());
  std::optional<std::int64_t> optimum;
  if (has_optimum) {
    const std::int64_t opt = in.integer("known optimum");
    if (opt != 0) optimum = opt;
  }
  std::vector<std::int64_t> profits(n);
  for (std::int64_t m = 0; m < n; ++m) {
    int line = 0;
    profits[m] = in.integer("profit", &line);
    lines.profit[static_cast<int>(m)] = line;
  }
  std::vector<std::vector<std::int64_t>> weights(d, std::vector<std::int64_t>(n));
  for (std::int64_t i = 0; i < d; ++i) {
    for (std::int64_t m = 0; m < n; ++m) {
      int line = 0;
      weights[i][m] = in.integer("weight", &line);
      lines.weight[{static_cast<int>(i), static_cast<int>(m)}] = line;
    }
  }
  std::vector<std::int64_t> capacities(d);
  for (std::int64_t i = 0; i < d; ++i) {
    int line = 0;
    capacities[i] = in.integer("capacity", &line);
    lines.capacity[static_cast<int>(i)] = line;
  }
  lines.fallback = in.line();
  return build_with_lines(lines, [&] {
    return KnapsackInstance::mdkp(std::move(name), weights, std::move(capacities),
                                  std::move(profits))
        .with_known_optimum(optimum);
  });
}

KnapsackInstance parse_orlib(std::string_view text, const ParseOptions& options,
                             const std::string& name) {
  TokenStream in(text);
  if (options.orlib_index) {
    const int index = *options.orlib_index;
    const std::int64_t count = in.integer("problem count");
    if (index < 0 || index >= count) {
      throw InputError("ORLIB problem index " + std::to_string(index) +
                       " out of range; file holds " + std::to_string(count));
    }
    for (int k = 0; k < index; ++k) {
      parse_orlib_problem(in, true, name);
    }
    return parse_orlib_problem(in, true, name + "#" + std::to_string(index));
  }
  // Single problem: the known-optimum token is optional; decide by the token
  // count the header implies.
  TokenStream probe = in;
  const std::int64_t n = probe.integer("item count n");
  const std::int64_t d = probe.integer("dimension count d");
  const std::size_t body = static_cast<std::size_t>(n + d * n + d);
  const std::size_t total = in.remaining();
  bool has_optimum;
  if (total == body + 2) {
    has_optimum = false;
  } else if (total == body + 3) {
    has_optimum = true;
  } else {
    throw ParseError("header 'n=" + std::to_string(n) + " d=" +
                         std::to_string(d) + "' implies " +
                         std::to_string(body + 2) + " or " +
                         std::to_string(body + 3) + " tokens, found " +
                         std::to_string(total) +
                         " (use an index for multi-problem files)",
                     1);
  }
  return parse_orlib_problem(in, has_optimum, name);
}

KnapsackInstance parse_qkplib(std::string_view text, const ParseOptions& options,
                              std::string name) {
  TokenStream in(text);
  LineIndex lines;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> capacity;
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> linear;
  std::vector<std::int64_t> matrix;
  bool have_quadratic = false;
  int scale = 1;

  auto need_n = [&](const std::string& field) {
    if (!n) throw ParseError("field '" + field + "' needs 'n' earlier in the layout", in.line());
    return *n;
  };

  for (const std::string& field : options.qkplib_layout.fields) {
    if (field == "name") {
      name = in.next_line();
    } else if (field == "n") {
      n = in.integer("item count n");
      if (*n < 1) throw ParseError("item count must be positive", in.line());
      matrix.assign(static_cast<std::size_t>(*n * *n), 0);
    } else if (field == "capacity") {
      int line = 0;
      capacity = in.integer("capacity", &line);
      lines.capacity[0] = line;
    } else if (field == "weights") {
      weights.resize(need_n(field));
      for (std::int64_t m = 0; m < *n; ++m) {
        int line = 0;
        weights[m] = in.integer("weight", &line);
        lines.weight[{0, static_cast<int>(m)}] = line;
      }
    } else if (field == "linear") {
      linear.resize(need_n(field));
      for (std::int64_t m = 0; m < *n; ++m) {
        int line = 0;
        linear[m] = in.integer("linear profit", &line);
        lines.profit[static_cast<int>(m)] = line;
      }
    } else if (field == "quadratic" || field == "quadratic_pair") {
      const std::int64_t size = need_n(field);
      for (std::int64_t m = 0; m < size; ++m) {
        for (std::int64_t m2 = m + 1; m2 < size; ++m2) {
          const std::int64_t v = in.integer("quadratic profit");
          matrix[m * size + m2] = v;
          matrix[m2 * size + m] = v;
        }
      }
      have_quadratic = true;
      if (field == "quadratic_pair") scale = 2;
    } else if (field == "quadratic_full") {
      const std::int64_t size = need_n(field);
      for (std::int64_t k = 0; k < size * size; ++k) {
        int line = 0;
        matrix[k] = in.integer("quadratic profit", &line);
        if (k / size == k % size) lines.profit[static_cast<int>(k / size)] = line;
      }
      have_quadratic = true;
    } else if (field == "skip") {
      in.expect("skipped token");
    } else {
      throw InputError("unknown QKP layout field '" + field + "'");
    }
  }
  if (!n || !capacity || weights.empty()) {
    throw InputError("QKP layout must include n, capacity and weights");
  }
  if (!have_quadratic && linear.empty()) {
    throw InputError("QKP layout must include linear or quadratic profits");
  }
  if (auto extra = in.next()) {
    throw ParseError("unexpected trailing token '" + std::string(extra->text) + "'",
                     extra->line);
  }
  const std::int64_t size = *n;
  for (std::int64_t m = 0; m < size; ++m) {
    if (!linear.empty()) {
      matrix[m * size + m] = linear[m] * scale;
    } else if (scale != 1) {
      matrix[m * size + m] *= scale;
    }
  }
  lines.fallback = in.line();
  return build_with_lines(lines, [&] {
    return KnapsackInstance::qkp(std::move(name), std::move(weights), *capacity,
                                 std::move(matrix))
        .with_profit_scale(scale);
  });
}

std::vector<std::int64_t> int_array(const json& value, const char* what) {
  if (!value.is_array()) throw ParseError(std::string(what) + " must be an array", 0);
  std::vector<std::int64_t> out;
  out.reserve(value.size());
  for (const auto& v : value) {
    if (!v.is_number_integer()) {
      throw ParseError(std::string(what) + " must contain integers only", 0);
    }
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

KnapsackInstance parse_json_document(std::string_view text, std::string name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("invalid JSON: ") + err.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("instance JSON must be an object", 0);
  for (const char* key : {"kind", "n", "d", "capacities", "weights", "profits"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("missing required key '") + key + "'", 0);
    }
  }
  if (doc.contains("name")) name = doc.at("name").get<std::string>();
  const std::string kind = doc.at("kind").get<std::string>();
  const auto n = doc.at("n").get<std::int64_t>();
  const auto d = doc.at("d").get<std::int64_t>();
  auto capacities = int_array(doc.at("capacities"), "capacities");
  const json& weight_rows = doc.at("weights");
  if (!weight_rows.is_array() || static_cast<std::int64_t>(weight_rows.size()) != d) {
    throw ParseError("weights must be an array of d rows", 0);
  }
  std::vector<std::vector<std::int64_t>> weights;
  for (const auto& row : weight_rows) {
    weights.push_back(int_array(row, "weights row"));
    if (static_cast<std::int64_t>(weights.back().size()) != n) {
      throw ParseError("every weights row must have n entries", 0);
    }
  }
  if (static_cast<std::int64_t>(capacities.size()) != d) {
    throw ParseError("capacities must have d entries", 0);
  }
  std::optional<std::int64_t> optimum;
  if (doc.contains("known_optimum") && !doc.at("known_optimum").is_null()) {
    optimum = doc.at("known_optimum").get<std::int64_t>();
  }
  const int scale = doc.value("profit_scale", 1);

  if (kind == "qkp") {
    if (d != 1) throw ParseError("QKP instances have exactly one dimension", 0);
    const json& rows = doc.at("profits");
    if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != n) {
      throw ParseError("QKP profits must be an n x n matrix", 0);
    }
    std::vector<std::int64_t> matrix;
    for (const auto& row : rows) {
      auto values = int_array(row, "profits row");
      if (static_cast<std::int64_t>(values.size()) != n) {
        throw ParseError("QKP profits must be an n x n matrix", 0);
      }
      matrix.insert(matrix.end(), values.begin(), values.end());
    }
    return KnapsackInstance::qkp(std::move(name), std::move(weights[0]),
                                 capacities[0], std::move(matrix))
        .with_known_optimum(optimum)
        .with_profit_scale(scale);
  }
  if (kind == "mdkp") {
    auto profits = int_array(doc.at("profits"), "profits");
    if (static_cast<std::int64_t>(profits.size()) != n) {
      throw ParseError("MDKP profits must have n entries", 0);
    }
    return KnapsackInstance::mdkp(std::move(name), weights, std::move(capacities),
                                  std::move(profits))
        .with_known_optimum(optimum)
        .with_profit_scale(scale);
  }
  throw ParseError("kind must be \"qkp\" or \"mdkp\", got \"" + kind + "\"", 0);
}

KnapsackInstance parse_json(std::string_view text, std::string name) {
  try {
    return parse_json_document(text, std::move(name));
  } catch (const json::exception& err) {
    throw ParseError(std::string("malformed instance JSON: ") + err.what(), 0);
  }
}

}  // namespace

InstanceFormat parse_instance_format(std::string_view name) {
  if (name == "json") return InstanceFormat::kJson;
  if (name == "orlib") return InstanceFormat::kOrlib;
  if (name == "qkplib") return InstanceFormat::kQkplib;
  throw InputError("unknown instance format '" + std::string(name) +
                   "' (expected json, orlib or qkplib)");
}

QkplibLayout QkplibLayout::parse(std::string_view descriptor) {
  if (descriptor.empty() || descriptor == "default") return {};
  if (descriptor == "billionnet") {
    return QkplibLayout{{"name", "n", "linear", "quadratic_pair", "skip",
                         "capacity", "weights"}};
  }
  QkplibLayout layout;
  layout.fields.clear();
  std::size_t start = 0;
  while (start <= descriptor.size()) {
    std::size_t comma = descriptor.find(',', start);
    if (comma == std::string_view::npos) comma = descriptor.size();
    std::string field(descriptor.substr(start, comma - start));
    if (field.empty()) throw InputError("empty field in QKP layout descriptor");
    static constexpr std::string_view kKnown[] = {
        "name", "n", "capacity", "weights", "linear",
        "quadratic", "quadratic_pair", "quadratic_full", "skip"};
    if (std::find(std::begin(kKnown), std::end(kKnown), field) == std::end(kKnown)) {
      throw InputError("unknown QKP layout field '" + field + "'");
    }
    layout.fields.push_back(std::move(field));
    start = comma + 1;
  }
  return layout;
}

KnapsackInstance parse_instance_text(std::string_view text, InstanceFormat format,
                                     const ParseOptions& options,
                                     std::string default_name) {
  std::string name = options.name.value_or(std::move(default_name));
  KnapsackInstance inst = [&] {
    switch (format) {
      case InstanceFormat::kJson:
        return parse_json(text, name);
      case InstanceFormat::kOrlib:
        return parse_orlib(text, options, name);
      case InstanceFormat::kQkplib:
        return parse_qkplib(text, options, name);
    }
    throw InputError("unsupported format");
  }();
  if (options.name) inst = inst.with_name(*options.name);
  return inst;
}

KnapsackInstance parse_instance(const std::filesystem::path& path,
                                InstanceFormat format, const ParseOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_instance_text(buffer.str(), format, options, path.stem().string());
}

std::string serialize_json(const KnapsackInstance& instance) {
  json doc;
  doc["name"] = instance.name();
  doc["kind"] = to_string(instance.kind());
  doc["n"] = instance.n();
  doc["d"] = instance.d();
  doc["capacities"] = std::vector<std::int64_t>(instance.capacities().begin(),
                                                instance.capacities().end());
  json weights = json::array();
  for (int i = 0; i < instance.d(); ++i) {
    weights.push_back(std::vector<std::int64_t>(instance.weights(i).begin(),
                                                instance.weights(i).end()));
  }
  doc["weights"] = std::move(weights);
  if (instance.is_qkp()) {
    json rows = json::array();
    for (int m = 0; m < instance.n(); ++m) {
      std::vector<std::int64_t> row(instance.n());
      for (int m2 = 0; m2 < instance.n(); ++m2) row[m2] = instance.profit_entry(m, m2);
      rows.push_back(std::move(row));
    }
    doc["profits"] = std::move(rows);
  } else {
    std::vector<std::int64_t> profits(instance.n());
    for (int m = 0; m < instance.n(); ++m) profits[m] = instance.linear_profit(m);
    doc["profits"] = std::move(profits);
  }
  if (instance.known_optimum()) doc["known_optimum"] = *instance.known_optimum();
  if (instance.profit_scale() != 1) doc["profit_scale"] = instance.profit_scale();
  return doc.dump(2) + "\n";
}

}  // namespace qtg
