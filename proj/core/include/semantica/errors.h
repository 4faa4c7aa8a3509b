// Copyright 2026 The Semantica Emulator Authors
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

#ifndef SEMANTICA_ERRORS_H_
#define SEMANTICA_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semantica {

// Shapes that do not fit together, e.g. vectors of different dimension.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs that are well-formed but outside an operation's domain
// (zero-norm vectors, too few points, duplicate users, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input files. Carries the 1-based line number of the offending
// record, or 0 when the problem is not tied to a line.
class IngestionError : public std::runtime_error {
 public:
  IngestionError(const std::string& source, std::size_t line,
                 const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace semantica

#endif  // SEMANTICA_ERRORS_H_
