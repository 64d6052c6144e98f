// Copyright 2026 The lindberry Authors
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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lindberry::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 when the criterion has no runtime budget
};

inline constexpr int kCriterionCount = 10;

std::string_view title(int id);

/// Runs one criterion (1-based). Library exceptions are caught and reported
/// as failures.
CriterionResult run_criterion(int id, double tolerance_scale = 1.0);

std::vector<CriterionResult> run_all(
    double tolerance_scale = 1.0,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// One line: "PASS  3  <title>  [<seconds> s]  <detail>".
std::string format(const CriterionResult& r);

}  // namespace lindberry::acceptance
