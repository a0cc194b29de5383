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

// Runs every acceptance check and prints one PASS/FAIL line per criterion,
// followed by the individual checks that make it up.

#include <cstdio>
#include <map>
#include <vector>

#include "verify.hpp"

int main() {
  using robkit::oracle::CheckResult;
  robkit::oracle::SuiteConfig cfg;
  cfg.seed = 1;
  const std::vector<CheckResult> checks = robkit::oracle::run_suite("all", cfg);

  std::map<int, std::vector<const CheckResult*>> by_criterion;
  for (const auto& c : checks) by_criterion[c.criterion].push_back(&c);

  int failed = 0;
  for (const auto& [criterion, group] : by_criterion) {
    bool ok = true;
    for (const auto* c : group) ok = ok && c->passed;
    if (!ok) ++failed;
    std::printf("criterion %d: %s\n", criterion, ok ? "PASS" : "FAIL");
    for (const auto* c : group) {
      std::printf("    %-30s %s  measured %.3e  tolerance %.3e  (%s)\n", c->name.c_str(),
                  c->passed ? "ok  " : "FAIL", c->measured, c->tolerance, c->detail.c_str());
    }
  }
  std::printf("%zu criteria, %d failed\n", by_criterion.size(), failed);
  return failed == 0 ? 0 : 1;
}
