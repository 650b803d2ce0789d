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


// fgbc: metric catalog, invariant suites and Euler characteristic runs.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "fgbc/gbc.hpp"
#include "fgbc/quadrature.hpp"
#include "suites.hpp"

namespace fgbc::cli {
namespace {

using json = nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadConfig, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorCode::BadConfig, "write to '" + path + "' failed");
}

void print_failures(const json& failures) {
  std::cerr << json{{"status", "failed"}, {"failures", failures}}.dump() << '\n';
}

int run_verify(const RunConfig& cfg) {
  const MetricSpec spec = make_metric(cfg.metric, cfg.params);
  const auto checks = verify_suites(spec);
  json rows = json::array(), failures = json::array();
  std::printf("%-22s %-6s %12s %10s  %s\n", "check", "result", "value", "tol", "detail");
  for (const auto& c : checks) {
    const char* res = c.skipped ? "skip" : c.passed ? "pass" : "FAIL";
    std::printf("%-22s %-6s %12.3e %10.1e  %s\n", c.name.c_str(), res, c.value, c.tolerance, c.detail.c_str());
    rows.push_back({{"name", c.name}, {"result", res}, {"value", c.value}, {"tolerance", c.tolerance}});
    if (!c.passed) failures.push_back({{"check", c.name}, {"value", c.value}, {"tolerance", c.tolerance}});
  }
  if (!cfg.out.empty()) {
    json j = {{"schema_version", kReportSchema}, {"metric", spec.name}, {"params", spec.params},
              {"checks", rows}, {"passed", failures.empty()}};
    if (cfg.timestamp) j["timestamp"] = utc_now();
    write_text(cfg.out, j.dump(2) + "\n");
  }
  if (!failures.empty()) {
    print_failures(failures);
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run_chi(const RunConfig& cfg) {
  const MetricSpec spec = make_metric(cfg.metric, cfg.params);
  const ChiReport rep = euler_characteristic(spec, parse_theorem(cfg.theorem), cfg.scheme);
  json j = report_json(rep, cfg.timestamp);
  if (cfg.timestamp) j["timestamp"] = utc_now();
  write_text(cfg.out, j.dump(2) + "\n");
  if (rep.status != "converged") {
    print_failures(json::array({{{"check", "convergence"}, {"residual", rep.residual}}}));
    return kExitCheckFailed;
  }
  return kExitOk;
}

std::string curvature_path(const std::string& dump) {
  std::filesystem::path p(dump);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + ".curvature.csv")).string();
}

int run_dump(const RunConfig& cfg) {
  const MetricSpec spec = make_metric(cfg.metric, cfg.params);
  const Theorem th = parse_theorem(cfg.theorem);
  const auto labels = term_labels(th);
  std::ostringstream integ, curv;
  integ.precision(17);
  curv.precision(17);
  integ << "# fgbc integrand dump v" << kCsvSchema << "\nchart,x1,x2,theta,term,value\n";
  curv << "# fgbc curvature dump v" << kCsvSchema << "\nchart,x1,x2,theta,component,value\n";
  for (const BaseNode& n : base_nodes(spec, cfg.scheme.base_w, cfg.scheme.base_h)) {
    const FiberChart fc = fiber_chart(n.chart, n.x, cfg.scheme.fiber_nodes);
    for (std::size_t i = 0; i < fc.rule.nodes.size(); ++i) {
      const FinslerData fd = finsler_data_on_indicatrix(spec, fiber_point(fc, i));
      const ChernData cd = chern_data(fd);
      const auto forms = theorem_integrands(th, fd, cd);
      const std::string key = std::to_string(n.chart) + "," + [&] {
        std::ostringstream s;
        s.precision(17);
        s << n.x[0] << "," << n.x[1] << "," << fc.rule.nodes[i];
        return s.str();
      }();
      for (std::size_t t = 0; t < forms.size(); ++t) integ << key << "," << labels[t] << "," << forms[t].top() << "\n";
      const SurfaceCurvature sc = surface_curvature(fd, special_frame(fd, cd));
      curv << key << ",R1_12_2," << sc.R1_12_2 << "\n"
           << key << ",P1_11_1," << sc.P1_11_1 << "\n"
           << key << ",P2_11_1," << sc.P2_11_1 << "\n";
    }
  }
  write_text(cfg.dump, integ.str());
  write_text(curvature_path(cfg.dump), curv.str());
  return kExitOk;
}

int run_calibrate(const RunConfig& cfg) {
  const MetricSpec spec = make_metric("round-s2");
  Scheme sc;
  sc.fiber_nodes = 16;
  sc.base_w = sc.base_h = 12;
  sc.ladder = 1;
  sc.threads = cfg.scheme.threads;
  json rows = json::array(), failures = json::array();
  for (Theorem th : {Theorem::T2, Theorem::C1, Theorem::Berwald}) {
    const ChiReport r = euler_characteristic(spec, th, sc);
    const bool ok = std::abs(r.chi - 2.0) < 1e-6;
    std::printf("round-s2 %-8s chi = %+.12f  %s\n", std::string(to_string(th)).c_str(), r.chi, ok ? "pass" : "FAIL");
    rows.push_back({{"theorem", to_string(th)}, {"chi", r.chi}, {"passed", ok}});
    if (!ok) failures.push_back({{"check", "sign"}, {"theorem", to_string(th)}, {"chi", r.chi}});
  }
  const std::string path = cfg.out.empty() ? "convention_ledger.txt" : cfg.out;
  write_text(path, convention_ledger());
  std::printf("ledger %s written to %s\n", ledger_hash().c_str(), path.c_str());
  if (!failures.empty()) {
    print_failures(failures);
    return kExitCheckFailed;
  }
  return kExitOk;
}

int run(const RunConfig& cfg) {
  if (cfg.command == "verify") return run_verify(cfg);
  if (cfg.command == "dump") return run_dump(cfg);
  if (cfg.command == "calibrate") return run_calibrate(cfg);
  return run_chi(cfg);
}

}  // namespace
}  // namespace fgbc::cli

int main(int argc, char** argv) {
  using namespace fgbc;
  using namespace fgbc::cli;
  CLI::App app{"Gauss-Bonnet-Chern integrands on Finsler surfaces"};
  app.require_subcommand(0, 1);
  std::string metric, theorem, grid, out, dump, config;
  std::vector<std::string> params;
  int fiber_nodes = 0, ladder = 0, threads = 0;
  bool strict = false, no_timestamp = false;
  auto* o_metric = app.add_option("--metric", metric, "catalog metric name")->envname("FGBC_METRIC");
  auto* o_param = app.add_option("--param", params, "parameter override k=v (repeatable)")
                      ->envname("FGBC_PARAM")
                      ->delimiter(',');
  auto* o_theorem = app.add_option("--theorem", theorem, "t2 | c1 | berwald")->envname("FGBC_THEOREM");
  auto* o_fiber = app.add_option("--fiber-nodes", fiber_nodes, "fibre nodes at the finest rung")
                      ->envname("FGBC_FIBER_NODES");
  auto* o_grid = app.add_option("--base-grid", grid, "base grid per chart, WxH")->envname("FGBC_BASE_GRID");
  auto* o_ladder = app.add_option("--ladder", ladder, "number of rungs")->envname("FGBC_LADDER");
  auto* o_out = app.add_option("--out", out, "report (chi, verify) or ledger (calibrate) path")->envname("FGBC_OUT");
  auto* o_dump = app.add_option("--dump", dump, "integrand CSV path")->envname("FGBC_DUMP");
  auto* o_strict = app.add_flag("--strict", strict, "fail on chart disagreement")->envname("FGBC_STRICT");
  auto* o_threads = app.add_option("--threads", threads, "OpenMP threads, 0 = default")->envname("FGBC_THREADS");
  auto* o_nots = app.add_flag("--no-timestamp", no_timestamp, "omit timestamps and timings")
                     ->envname("FGBC_NO_TIMESTAMP");
  app.add_option("--config", config, "JSON config; flags and FGBC_* variables override it")->envname("FGBC_CONFIG");
  app.fallthrough();
  for (const char* name : {"verify", "chi", "dump", "calibrate"}) app.add_subcommand(name)->fallthrough();

  if (argc == 1) {
    std::cout << app.help();
    return kExitBadConfig;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadConfig;
  }

  RunConfig cfg;
  try {
    if (!config.empty()) {
      std::ifstream f(config);
      if (!f) throw Error(ErrorCode::BadConfig, "cannot read config '" + config + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(f);
      } catch (const json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("config: ") + e.what());
      }
      cfg = config_from_json(j, cfg);
    }
    if (!app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
    if (o_metric->count()) cfg.metric = metric;
    for (const auto& kv : params) parse_param(kv, cfg.params);
    (void)o_param;
    if (o_theorem->count()) cfg.theorem = theorem;
    if (o_fiber->count()) cfg.scheme.fiber_nodes = fiber_nodes;
    if (o_grid->count()) parse_grid(grid, cfg.scheme);
    if (o_ladder->count()) cfg.scheme.ladder = ladder;
    if (o_out->count()) cfg.out = out;
    if (o_dump->count()) cfg.dump = dump;
    if (o_strict->count()) cfg.scheme.strict = strict;
    if (o_threads->count()) cfg.scheme.threads = threads;
    if (o_nots->count()) cfg.timestamp = !no_timestamp;
    validate(cfg);
  } catch (const Error& e) {
    std::cerr << json{{"status", "error"},
                      {"failures", {{{"code", to_string(e.code())}, {"message", e.what()}}}}}
                     .dump()
              << '\n';
    return kExitBadConfig;
  }

  try {
    return run(cfg);
  } catch (const Error& e) {
    std::cerr << json{{"status", "error"},
                      {"failures", {{{"code", to_string(e.code())}, {"message", e.what()}}}}}
                     .dump()
              << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << json{{"status", "error"}, {"failures", {{{"code", "internal"}, {"message", e.what()}}}}}.dump()
              << '\n';
    return kExitComputation;
  }
}
