// Copyright 2026 The robkit Authors
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

#include <string>

#include "doctest.h"
#include "io.hpp"
#include "robkit/error.hpp"

using namespace robkit;

namespace {

std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("syntax errors carry line and column") {
  const std::string msg =
      message_of([] { io::parse_document("{\"d\": 2,\n \"re\": [1 2]}", "state.json"); });
  CHECK(msg.rfind("state.json:2:", 0) == 0);
}

TEST_CASE("semantic errors carry a JSON path") {
  const auto doc = io::parse_document(
      R"({"d": 2, "subsets": [{"kind": "polytope", "vertices": [{"d": 2, "re": [[1, 0], [0]]}]}]})",
      "set.json");
  const std::string msg = message_of([&] { io::freeset_from_json(doc); });
  CHECK(msg.find("$.subsets[0].vertices[0].re[1]") != std::string::npos);

  const auto kind = io::parse_document(R"({"d": 2, "subsets": [{"kind": "cone"}]})", "k");
  CHECK(message_of([&] { io::freeset_from_json(kind); }).find("$.subsets[0].kind") !=
        std::string::npos);
}

TEST_CASE("state forms") {
  const auto m = io::parse_document(R"({"d": 2, "re": [[0.5, 0], [0, 0.5]], "im": null})", "a");
  CHECK(io::state_from_json(m).purity() == doctest::Approx(0.5));
  const auto b = io::parse_document(R"({"d": 2, "x": [0, 0, 1]})", "b");
  CHECK(io::state_from_json(b).matrix()(0, 0).real() == doctest::Approx(1.0));
  const auto short_x = io::parse_document(R"({"d": 3, "x": [0, 0]})", "c");
  CHECK(message_of([&] { io::state_from_json(short_x); }).find("$.x") != std::string::npos);
}

TEST_CASE("free set round trip") {
  const auto doc = io::parse_document(
      R"({"d": 2, "subsets": [{"kind": "incoherent", "label": "z"},
          {"kind": "polytope", "vertices": [{"d": 2, "x": [1, 0, 0]}, {"d": 2, "x": [0, 0, 1]}]}]})",
      "s");
  const FreeSet set = io::freeset_from_json(doc);
  REQUIRE(set.subsets().size() == 2);
  CHECK(set.subsets()[1].label() == "subset1");
  const FreeSet again = io::freeset_from_json(io::to_json(set));
  CHECK(again.subsets()[0].label() == "z");
  CHECK(again.subsets()[1].extreme_points().size() == 2);
}

TEST_CASE("config hash is stable and content sensitive") {
  const io::Json a = {{"seed", 1}, {"d", 2}};
  const io::Json b = {{"seed", 2}, {"d", 2}};
  CHECK(io::config_hash(a) == io::config_hash(a));
  CHECK(io::config_hash(a) != io::config_hash(b));
  CHECK(io::config_hash(a).size() == 16);
}

TEST_CASE("infinite values serialize as strings") {
  CHECK(io::number(1.0 / 0.0) == "inf");
  CHECK(io::number(0.25) == 0.25);
}
