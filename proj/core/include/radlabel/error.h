// Copyright 2026 The radlabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RADLABEL_ERROR_H_
#define RADLABEL_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radlabel {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line` is 1-based; 0 when not tied to a line.
class FormatError : public Error {
 public:
  FormatError(const std::string& source, std::size_t line,
              const std::string& what)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
              what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A configuration object violates its invariants.
// `field` names the offending field, e.g. "categories[2].positive_rate".
class SpecError : public Error {
 public:
  SpecError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Training produced a non-finite loss.
class TrainingError : public Error {
 public:
  TrainingError(std::size_t step, const std::string& what)
      : Error("step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace radlabel

#endif  // RADLABEL_ERROR_H_
