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

// Run configuration and report serialization for the command-line tool.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "fgbc/quadrature.hpp"

namespace fgbc::cli {

inline constexpr int kReportSchema = 1;
inline constexpr int kCsvSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // a check or convergence assertion failed
  kExitBadConfig = 2,    // usage, config or metric errors, before any computation
  kExitComputation = 3,  // the computation raised an error
};

struct RunConfig {
  std::string command = "chi";
  std::string metric = "round-s2";
  std::map<std::string, double> params;
  std::string theorem = "c1";
  Scheme scheme;
  std::string out;   // report or ledger path; empty writes the report to stdout
  std::string dump;  // CSV path for `dump`
  bool timestamp = true;
};

/// Reads a JSON document with the RunConfig keys; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// "k=v" into the parameter map; throws BadConfig when malformed.
void parse_param(const std::string& kv, std::map<std::string, double>& params);

/// "WxH" into scheme.base_w, scheme.base_h.
void parse_grid(const std::string& wxh, Scheme& scheme);

/// Rejects unknown metrics, parameters and theorems before any computation.
void validate(const RunConfig& cfg);

nlohmann::ordered_json report_json(const ChiReport& r, bool timings);

}  // namespace fgbc::cli
