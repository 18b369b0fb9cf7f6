// Copyright 2026 The muqut Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace muqut {

/// Malformed circuit or topology input. Carries the 1-based source line
/// when the error can be attributed to one (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A mapping window could not be solved; `window` is its 0-based index.
class MappingError : public std::runtime_error {
 public:
  enum class Kind { Infeasible, TimedOut };

  MappingError(Kind kind, std::size_t window, const std::string& what)
      : std::runtime_error(what), kind_(kind), window_(window) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t window() const noexcept { return window_; }

 private:
  Kind kind_;
  std::size_t window_;
};

}  // namespace muqut
