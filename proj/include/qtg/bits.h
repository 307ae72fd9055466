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

#ifndef QTG_BITS_H_
#define QTG_BITS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qtg {

// One byte per item, 0 or 1, indexed by the instance's item label.
using Bits = std::vector<std::uint8_t>;

// Parses a string of '0'/'1' characters. Throws InputError otherwise.
Bits bits_from_string(std::string_view text);

std::string bits_to_string(const Bits& bits);

int hamming_distance(const Bits& a, const Bits& b);

// Size of the smallest register that stores x exactly: ceil(log2(x + 1)).
// num_bits(0) == 0.
int num_bits(std::uint64_t x);

}  // namespace qtg

#endif  // QTG_BITS_H_
