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

#ifndef QTG_INSTANCE_IO_H_
#define QTG_INSTANCE_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtg/instance.h"

namespace qtg {

enum class InstanceFormat { kJson, kOrlib, kQkplib };

// Accepts "json", "orlib" or "qkplib".
InstanceFormat parse_instance_format(std::string_view name);

// Field order of a QKP text file. Fields:
//   name            whole first non-empty line
//   n               item count
//   capacity        single capacity
//   weights         n weights
//   linear          n linear profits (matrix diagonal)
//   quadratic       upper-triangular entries p[m][m'] (m < m'), row by row;
//                   mirrored, so a selected pair earns twice the value
//   quadratic_pair  upper-triangular pair totals; linear profits and pair
//                   values are both stored doubled (profit_scale = 2) so
//                   that the matrix stays integral
//   quadratic_full  the full n x n matrix row by row (must be symmetric)
//   skip            one ignored token (e.g. a constraint-type flag)
struct QkplibLayout {
  std::vector<std::string> fields{"name",   "n",      "capacity",
                                  "weights", "linear", "quadratic"};

  // Comma-separated field list, or a preset name: "default", "billionnet".
  static QkplibLayout parse(std::string_view descriptor);
};

struct ParseOptions {
  // ORLIB: select one problem of a container file whose first token is the
  // problem count. Each problem then carries the known-optimum token.
  std::optional<int> orlib_index;
  QkplibLayout qkplib_layout;
  // Overrides the derived instance name.
  std::optional<std::string> name;
};

// Parses and validates. Throws ParseError for malformed text and
// ValidationError (with line context where available) for invariant
// violations.
KnapsackInstance parse_instance(const std::filesystem::path& path,
                                InstanceFormat format,
                                const ParseOptions& options = {});

KnapsackInstance parse_instance_text(std::string_view text,
                                     InstanceFormat format,
                                     const ParseOptions& options = {},
                                     std::string default_name = "instance");

// Canonical JSON encoding: {name, kind, n, d, capacities, weights, profits,
// known_optimum?, profit_scale?}.
std::string serialize_json(const KnapsackInstance& instance);

}  // namespace qtg

#endif  // QTG_INSTANCE_IO_H_
