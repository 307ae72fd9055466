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

#ifndef QTG_ERRORS_H_
#define QTG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qtg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied an argument outside the operation's domain.
class InputError : public Error {
 public:
  using Error::Error;
};

// A file could not be tokenized or does not follow its declared format.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed data that violates a domain invariant. `dimension` and `item`
// are -1 when the condition is not tied to a specific entry.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, int dimension = -1,
                           int item = -1)
      : Error(message), dimension_(dimension), item_(item) {}

  int dimension() const { return dimension_; }
  int item() const { return item_; }

 private:
  int dimension_;
  int item_;
};

// An exhaustive computation was asked to run beyond its configured size limit.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtg

#endif  // QTG_ERRORS_H_
