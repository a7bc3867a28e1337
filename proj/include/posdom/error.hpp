// Copyright 2026 The posdom Authors.
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

#ifndef POSDOM_ERROR_HPP_
#define POSDOM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace posdom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input values, configs, or core-type invariants. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyTarget : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class GridTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SyntaxError : public ValidationError {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : ValidationError("syntax error at offset " + std::to_string(offset) +
                        ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownFunction : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// Failures talking to an output model. CLI exit code 3.
class ModelError : public Error {
 public:
  using Error::Error;
};

class ProcessDied : public ModelError {
 public:
  using ModelError::ModelError;
};

class ProtocolError : public ModelError {
 public:
  using ModelError::ModelError;
};

class Timeout : public ModelError {
 public:
  using ModelError::ModelError;
};

// Two identical training points with different labels.
class ContradictoryData : public ModelError {
 public:
  using ModelError::ModelError;
};

// CLI exit code 4. Carries the mean TPR of every candidate (NaN when no
// fold produced a defined TPR).
class NoQualifyingGranularity : public Error {
 public:
  NoQualifyingGranularity(const std::string& what,
                          std::vector<std::pair<double, double>> candidates)
      : Error(what), candidates_(std::move(candidates)) {}
  const std::vector<std::pair<double, double>>& candidates() const noexcept {
    return candidates_;
  }

 private:
  std::vector<std::pair<double, double>> candidates_;
};

}  // namespace posdom

#endif  // POSDOM_ERROR_HPP_
