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

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fgbc/jet.hpp"

namespace fgbc {

enum class MetricFamily { Riemannian, Randers, MinkowskiQuartic, Custom };
enum class Topology { Torus, Sphere };

std::string_view to_string(MetricFamily f) noexcept;

/// F^2 as a function of chart coordinates; chart is 0 (north / torus) or 1 (south).
using SquaredNorm = std::function<Jet(std::span<const Jet> x, std::span<const Jet> y, int chart)>;

struct MetricSpec {
  std::string name;
  MetricFamily family = MetricFamily::Custom;
  Topology topology = Topology::Torus;
  int dim = 2;
  std::map<std::string, double> params;
  SquaredNorm f2;

  double param(const std::string& key) const;
  int charts() const noexcept { return topology == Topology::Sphere ? 2 : 1; }
  /// Catalog Riemannian and locally Minkowskian metrics have P = 0.
  bool is_berwald_family() const noexcept {
    return family == MetricFamily::Riemannian || family == MetricFamily::MinkowskiQuartic;
  }
};

/// Names accepted by make_metric.
std::vector<std::string> catalog_names();

/// Builds a catalog metric; `overrides` replaces default parameters.
/// Unknown names or parameter keys throw UnknownMetric / BadConfig.
MetricSpec make_metric(const std::string& name, const std::map<std::string, double>& overrides = {});

/// Lifts F^2 of `spec` at `point` to the given order.
Jet lift_f2(const MetricSpec& spec, const PhasePoint& point, int order);

/// F(x, y) as a plain value.
double finsler_norm(const MetricSpec& spec, const PhasePoint& point);

// Sphere atlas. Chart 0 is stereographic from the south pole,
// xi = (n_x, n_y) / (1 + n_z); chart 1 is xi = (n_x, -n_y) / (1 - n_z).
// Both are positively oriented for the outward normal.

std::array<double, 3> sphere_point(int chart, const std::array<double, 2>& xi);
std::array<double, 2> sphere_coords(int chart, const std::array<double, 3>& n);

/// Coordinates of the same sphere point in the other chart, and the
/// Jacobian d(other)/d(this) as J[row][col].
struct ChartTransition {
  std::array<double, 2> coords;
  std::array<std::array<double, 2>, 2> jacobian;
};
ChartTransition sphere_transition(int from_chart, const std::array<double, 2>& xi);

}  // namespace fgbc
