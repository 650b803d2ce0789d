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


#include "config.hpp"

#include <cmath>
#include <set>

namespace fgbc::cli {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::BadConfig, msg); }

double to_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad(what + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) bad(what + ": '" + s + "' is not a finite number");
  return v;
}

int to_int(const nlohmann::json& v, const char* key) {
  if (!v.is_number_integer()) bad(std::string("config: '") + key + "' must be an integer");
  return v.get<int>();
}

bool to_bool(const nlohmann::json& v, const char* key) {
  if (!v.is_boolean()) bad(std::string("config: '") + key + "' must be a boolean");
  return v.get<bool>();
}

std::string to_str(const nlohmann::json& v, const char* key) {
  if (!v.is_string()) bad(std::string("config: '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

void parse_param(const std::string& kv, std::map<std::string, double>& params) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) bad("--param expects k=v, got '" + kv + "'");
  params[kv.substr(0, eq)] = to_number(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
}

void parse_grid(const std::string& wxh, Scheme& scheme) {
  const auto x = wxh.find('x');
  if (x == std::string::npos) bad("--base-grid expects WxH, got '" + wxh + "'");
  const double w = to_number(wxh.substr(0, x), "--base-grid"), h = to_number(wxh.substr(x + 1), "--base-grid");
  if (w != std::floor(w) || h != std::floor(h) || w < 4 || h < 4 || w > 4096 || h > 4096)
    bad("--base-grid: sides must be integers in [4, 4096]");
  scheme.base_w = static_cast<int>(w);
  scheme.base_h = static_cast<int>(h);
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) bad("config: expected a JSON object");
  static const std::set<std::string> known = {"command", "metric", "params", "theorem", "fiber_nodes",
                                              "base_grid", "ladder", "out", "dump", "strict", "threads",
                                              "timestamp"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) bad("config: unknown key '" + k + "'");
  if (j.contains("command")) c.command = to_str(j["command"], "command");
  if (j.contains("metric")) c.metric = to_str(j["metric"], "metric");
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad("config: 'params' must be an object");
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) bad("config: parameter '" + k + "' must be a number");
      c.params[k] = v.get<double>();
    }
  }
  if (j.contains("theorem")) c.theorem = to_str(j["theorem"], "theorem");
  if (j.contains("fiber_nodes")) c.scheme.fiber_nodes = to_int(j["fiber_nodes"], "fiber_nodes");
  if (j.contains("base_grid")) parse_grid(to_str(j["base_grid"], "base_grid"), c.scheme);
  if (j.contains("ladder")) c.scheme.ladder = to_int(j["ladder"], "ladder");
  if (j.contains("out")) c.out = to_str(j["out"], "out");
  if (j.contains("dump")) c.dump = to_str(j["dump"], "dump");
  if (j.contains("strict")) c.scheme.strict = to_bool(j["strict"], "strict");
  if (j.contains("threads")) c.scheme.threads = to_int(j["threads"], "threads");
  if (j.contains("timestamp")) c.timestamp = to_bool(j["timestamp"], "timestamp");
  return c;
}

void validate(const RunConfig& cfg) {
  static const std::set<std::string> commands = {"verify", "chi", "dump", "calibrate"};
  if (!commands.count(cfg.command)) bad("unknown command '" + cfg.command + "'");
  make_metric(cfg.metric, cfg.params);
  parse_theorem(cfg.theorem);
  if (cfg.scheme.fiber_nodes < 4 || cfg.scheme.fiber_nodes > 1 << 16) bad("--fiber-nodes must be in [4, 65536]");
  if (cfg.scheme.ladder < 1 || cfg.scheme.ladder > 8) bad("--ladder must be in [1, 8]");
  if (cfg.scheme.threads < 0) bad("--threads must be non-negative");
  if (cfg.command == "dump" && cfg.dump.empty()) bad("dump needs --dump PATH");
}

nlohmann::ordered_json report_json(const ChiReport& r, bool timings) {
  using json = nlohmann::ordered_json;
  json terms = json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) terms.push_back({{"label", r.term_labels[i]}, {"value", r.terms[i]}});
  json ladder = json::array();
  for (const auto& g : r.ladder) {
    json rung = {{"fiber_nodes", g.fiber_nodes}, {"base_grid", {g.base_w, g.base_h}}, {"terms", g.terms},
                 {"chi", g.chi},                 {"residual", g.residual}};
    if (timings) rung["runtime_ms"] = g.runtime_ms;
    ladder.push_back(rung);
  }
  json j = {
      {"schema_version", kReportSchema},
      {"metric", r.metric},
      {"params", r.params},
      {"theorem", r.theorem},
      {"scheme",
       {{"fiber_nodes", r.scheme.fiber_nodes},
        {"base_grid", {r.scheme.base_w, r.scheme.base_h}},
        {"ladder", r.scheme.ladder},
        {"strict", r.scheme.strict},
        {"threads", r.scheme.threads}}},
      {"terms", terms},
      {"chi", r.chi},
      {"nearest_integer", r.nearest_integer},
      {"residual", r.residual},
      {"status", r.status},
      {"ladder", ladder},
      {"ledger_hash", r.ledger_hash},
      {"diagnostics",
       {{"overlap_disagreement", r.overlap_disagreement},
        {"p_norm", r.p_norm},
        {"fiber_volume_min", r.fiber_volume_min},
        {"fiber_volume_max", r.fiber_volume_max}}},
  };
  if (timings) j["runtime_ms"] = r.runtime_ms;
  return j;
}

}  // namespace fgbc::cli
