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

#include <string>

#include "doctest.h"
#include "posdom/error.hpp"
#include "posdom/external_model.hpp"

using namespace posdom;
using namespace std::chrono_literals;

namespace {

std::vector<std::string> fixture(const std::string& script,
                                 std::vector<std::string> args = {}) {
  std::vector<std::string> argv{"python3", std::string(POSDOM_FIXTURES) + "/" + script};
  argv.insert(argv.end(), args.begin(), args.end());
  return argv;
}

}  // namespace

TEST_CASE("adder process evaluates points") {
  ExternalModel m(fixture("adder.py"), 2);
  CHECK(m.arity() == 2);
  CHECK_FALSE(m.concurrent_safe());
  CHECK(external_evaluate(m, std::vector{1.0, 2.0}) == 3.0);
  // Shortest round-trip text survives the trip.
  CHECK(m.evaluate(std::vector{0.1, 0.2}) == 0.1 + 0.2);
  CHECK(m.evaluate(std::vector{-1e-300, 0.0}) == -1e-300);
  CHECK_THROWS_AS(m.evaluate(std::vector{1.0}), ArityMismatch);
  for (int i = 0; i < 200; ++i) {
    CHECK(m.evaluate(std::vector{double(i), 1.0}) == i + 1.0);
  }
}

TEST_CASE("non-numeric reply is a protocol error") {
  ExternalModel m(fixture("misbehave.py", {"garbage"}), 2);
  CHECK_THROWS_AS(m.evaluate(std::vector{1.0, 2.0}), ProtocolError);
}

TEST_CASE("process exiting mid-stream is reported") {
  ExternalModel m(fixture("misbehave.py", {"die"}), 2);
  CHECK(m.evaluate(std::vector{1.0, 2.0}) == 1.0);
  CHECK_THROWS_AS(m.evaluate(std::vector{1.0, 2.0}), ProcessDied);
  CHECK_THROWS_AS(m.evaluate(std::vector{1.0, 2.0}), ProcessDied);
}

TEST_CASE("slow process times out") {
  ExternalModel m(fixture("misbehave.py", {"slow"}), 1, 300ms);
  CHECK_THROWS_AS(m.evaluate(std::vector{1.0}), Timeout);
}

TEST_CASE("handshake failures") {
  CHECK_THROWS_AS(ExternalModel(fixture("misbehave.py", {"handshake"}), 2),
                  ProtocolError);
  CHECK_THROWS_AS(ExternalModel({"/nonexistent/posdom-model"}, 2), ProcessDied);
  CHECK_THROWS_AS(ExternalModel({}, 2), ValidationError);
}
