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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fgbc/jet.hpp"
#include "fgbc/metric.hpp"

namespace fgbc::testing {

/// Random points of TM_o in the charts of `spec`; |y| in [0.5, 2].
inline std::vector<PhasePoint> sample_points(const MetricSpec& spec, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PhasePoint> out;
  for (int n = 0; n < count; ++n) {
    PhasePoint p;
    p.dim = 2;
    if (spec.topology == Topology::Sphere) {
      p.chart = static_cast<int>(unit(rng) * 2) % 2;
      const double rho = 1.3 * std::sqrt(unit(rng)), phi = 2 * std::numbers::pi * unit(rng);
      p.x = {rho * std::cos(phi), rho * std::sin(phi), 0, 0};
    } else {
      p.x = {unit(rng), unit(rng), 0, 0};
    }
    const double th = 2 * std::numbers::pi * unit(rng), len = 0.5 + 1.5 * unit(rng);
    p.y = {len * std::cos(th), len * std::sin(th), 0, 0};
    out.push_back(p);
  }
  return out;
}

inline PhasePoint make_point(double x1, double x2, double y1, double y2, int chart = 0) {
  PhasePoint p;
  p.dim = 2;
  p.chart = chart;
  p.x = {x1, x2, 0, 0};
  p.y = {y1, y2, 0, 0};
  return p;
}

inline MultiIndex mi(std::initializer_list<int> e) {
  MultiIndex a{};
  std::size_t i = 0;
  for (int v : e) a[i++] = static_cast<std::uint8_t>(v);
  return a;
}

}  // namespace fgbc::testing
