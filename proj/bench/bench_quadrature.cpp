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


// OpenMP and serial kernels of one quadrature rung.

#include <benchmark/benchmark.h>

#include "fgbc/quadrature.hpp"

namespace {

void run(benchmark::State& state, const char* metric, fgbc::Theorem th, bool parallel) {
  const fgbc::MetricSpec spec = fgbc::make_metric(metric);
  const int fiber = static_cast<int>(state.range(0));
  const int grid = static_cast<int>(state.range(1));
  double chi = 0.0;
  for (auto _ : state) {
    chi = fgbc::integrate_rung(spec, th, fiber, grid, grid, parallel).chi;
    benchmark::DoNotOptimize(chi);
  }
  const auto nodes = static_cast<double>(fgbc::base_nodes(spec, grid, grid).size());
  state.counters["chi"] = chi;
  state.counters["points/s"] =
      benchmark::Counter(nodes * fiber * static_cast<double>(state.iterations()), benchmark::Counter::kIsRate);
}

void BM_RandersT2_Serial(benchmark::State& s) { run(s, "randers-s2", fgbc::Theorem::T2, false); }
void BM_RandersT2_OpenMP(benchmark::State& s) { run(s, "randers-s2", fgbc::Theorem::T2, true); }
void BM_EllipsoidC1_Serial(benchmark::State& s) { run(s, "ellipsoid-s2", fgbc::Theorem::C1, false); }
void BM_EllipsoidC1_OpenMP(benchmark::State& s) { run(s, "ellipsoid-s2", fgbc::Theorem::C1, true); }

#define FGBC_ARGS ->Args({16, 12})->Args({32, 24})->Unit(benchmark::kMillisecond)
BENCHMARK(BM_RandersT2_Serial) FGBC_ARGS;
BENCHMARK(BM_RandersT2_OpenMP) FGBC_ARGS;
BENCHMARK(BM_EllipsoidC1_Serial) FGBC_ARGS;
BENCHMARK(BM_EllipsoidC1_OpenMP) FGBC_ARGS;

}  // namespace

BENCHMARK_MAIN();
