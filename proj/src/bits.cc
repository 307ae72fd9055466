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

#include "qtg/bits.h"

#include <bit>

#include "qtg/errors.h"

namespace qtg {

Bits bits_from_string(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw InputError("bit string may only contain '0' and '1', got '" +
                       std::string(text) + "'");
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return bits;
}

std::string bits_to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

int hamming_distance(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) {
    throw InputError("hamming_distance: length mismatch");
  }
  int distance = 0;
  for (std::size_t i = 0; i < a.size(); ++i) distance += (a[i] != b[i]);
  return distance;
}

int num_bits(std::uint64_t x) { return static_cast<int>(std::bit_width(x)); }

}  // namespace qtg
