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

#include <cmath>
#include <string>

#include "doctest.h"
#include "robkit/robkit.h"

namespace {

const char* kPlus = R"({"d": 2, "re": [[0.5, 0.5], [0.5, 0.5]]})";
const char* kZ = R"({"d": 2, "subsets": [{"kind": "incoherent", "label": "z"}]})";

}  // namespace

TEST_CASE("handles and robustness through the C interface") {
  rk_state* state = nullptr;
  rk_freeset* set = nullptr;
  rk_result* res = nullptr;
  REQUIRE(rk_state_parse(kPlus, "plus", &state) == RK_OK);
  REQUIRE(rk_freeset_parse(kZ, "z", &set) == RK_OK);
  CHECK(rk_state_dim(state) == 2);
  CHECK(rk_freeset_size(set) == 1);

  rk_options opts;
  rk_options_init(&opts);
  CHECK(std::isnan(opts.tol));
  REQUIRE(rk_robustness(state, set, &opts, &res) == RK_OK);
  CHECK(rk_result_status(res) == RK_OK);
  CHECK(rk_result_value(res) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::string(rk_result_json(res)).find("\"config_hash\"") != std::string::npos);
  rk_result_destroy(res);
  rk_freeset_destroy(set);
  rk_state_destroy(state);
}

TEST_CASE("errors set a message and no handle") {
  rk_state* state = nullptr;
  CHECK(rk_state_parse("{\"d\": 2,", "broken.json", &state) == RK_ERR_INPUT);
  CHECK(state == nullptr);
  CHECK(std::string(rk_last_error()).find("broken.json:1:") == 0);
  CHECK(rk_state_parse(nullptr, "x", &state) == RK_ERR_INPUT);
}

TEST_CASE("matrix constructor and built-in free set") {
  const double re[4] = {1.0, 0.0, 0.0, 0.0};
  rk_state* state = nullptr;
  rk_freeset* set = nullptr;
  rk_result* res = nullptr;
  REQUIRE(rk_state_from_matrix(2, re, nullptr, &state) == RK_OK);
  REQUIRE(rk_freeset_incoherent(2, &set) == RK_OK);
  rk_options opts;
  rk_options_init(&opts);
  CHECK(rk_witness(state, set, &opts, &res) == RK_ERR_NOT_APPLICABLE);
  REQUIRE(res != nullptr);
  CHECK(rk_result_status(res) == RK_ERR_NOT_APPLICABLE);
  rk_result_destroy(res);
  rk_freeset_destroy(set);
  rk_state_destroy(state);
}

TEST_CASE("discriminate artifacts") {
  rk_state* state = nullptr;
  rk_freeset* set = nullptr;
  rk_result* res = nullptr;
  REQUIRE(rk_state_parse(kPlus, "plus", &state) == RK_OK);
  REQUIRE(rk_freeset_parse(kZ, "z", &set) == RK_OK);
  rk_options opts;
  rk_options_init(&opts);
  opts.n_flags = 1000;
  REQUIRE(rk_discriminate(state, set, "worst-case", &opts, &res) == RK_OK);
  CHECK(rk_result_artifact_count(res) >= 2);
  CHECK(std::string(rk_result_artifact_name(res, 0)) == "advantage.csv");
  CHECK(rk_result_artifact_name(res, 99) == nullptr);
  rk_result_destroy(res);
  CHECK(rk_discriminate(state, set, "bogus", &opts, &res) == RK_ERR_INPUT);
  rk_freeset_destroy(set);
  rk_state_destroy(state);
}

TEST_CASE("unknown suite") {
  rk_result* res = nullptr;
  CHECK(rk_verify("nope", nullptr, &res) == RK_ERR_INPUT);
}
