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

#ifndef POSDOM_EXTERNAL_MODEL_HPP_
#define POSDOM_EXTERNAL_MODEL_HPP_

#include <chrono>
#include <span>
#include <string>
#include <sys/types.h>
#include <vector>

#include "posdom/core.hpp"

namespace posdom {

// Output model served by a child process over a line protocol on its
// stdin/stdout:
//
//   -> "ARITY m\n"        <- "OK\n"          (once, at launch)
//   -> "v1 v2 ... vm\n"   <- "y\n"           (per evaluation)
//
// Values are written in shortest round-trip decimal form. One request is in
// flight at a time, so the model is not concurrency-safe.
class ExternalModel final : public OutputModel {
 public:
  static constexpr std::chrono::milliseconds kDefaultTimeout{10'000};

  // Launches `argv` (argv[0] looked up on PATH) and performs the handshake.
  // Throws ProcessDied, ProtocolError or Timeout.
  ExternalModel(std::vector<std::string> argv, std::size_t arity,
                std::chrono::milliseconds timeout = kDefaultTimeout);
  ~ExternalModel() override;

  ExternalModel(const ExternalModel&) = delete;
  ExternalModel& operator=(const ExternalModel&) = delete;

  std::size_t arity() const override { return arity_; }
  double evaluate(std::span<const double> point) override;

 private:
  void send_line(const std::string& line);
  std::string read_line();
  void shutdown() noexcept;

  std::vector<std::string> argv_;
  std::size_t arity_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

inline double external_evaluate(ExternalModel& m,
                                std::span<const double> point) {
  return m.evaluate(point);
}

}  // namespace posdom

#endif  // POSDOM_EXTERNAL_MODEL_HPP_
