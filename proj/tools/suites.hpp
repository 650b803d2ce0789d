/*
 * Copyright 2026 The finsler-gbc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

// Invariant suites run by the `verify` command.

#include <string>
#include <vector>

#include "fgbc/metric.hpp"

namespace fgbc::cli {

struct CheckResult {
  std::string name;
  bool skipped = false;
  bool passed = false;
  double value = 0.0;      // worst observed error
  double tolerance = 0.0;
  std::string detail;
};

/// Runs every suite that applies to `spec` (surfaces only).
std::vector<CheckResult> verify_suites(const MetricSpec& spec, std::uint64_t seed = 1);

}  // namespace fgbc::cli
