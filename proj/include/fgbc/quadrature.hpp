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

// Integration along the fibres of SM -> M and over the base charts.
//
// Fibre: y(theta) = u(theta) / F(x, u(theta)), u = (cos theta, sin theta),
// periodic trapezoid in theta. Torus: periodic trapezoid on the unit square.
// Sphere: two stereographic caps, xi = tan(t / 2) (cos p, sin p) with t the
// polar angle from the cap centre, Gauss-Legendre in t on [0, pi/3] and
// [pi/3, 2 pi/3], periodic trapezoid in p, blended by a smooth partition of
// unity that switches over t in [pi/3, 2 pi/3].

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fgbc/chern.hpp"
#include "fgbc/finsler.hpp"
#include "fgbc/forms.hpp"
#include "fgbc/metric.hpp"
#include "fgbc/rules.hpp"

namespace fgbc {

enum class Theorem { T2, C1, Berwald };

std::string_view to_string(Theorem t) noexcept;
/// Accepts "t2", "c1", "berwald"; throws BadConfig otherwise.
Theorem parse_theorem(std::string_view s);

/// Term labels produced by `theorem` for surfaces, in report order.
std::vector<std::string> term_labels(Theorem t);

struct Scheme {
  int fiber_nodes = 128;
  int base_w = 96;   // angular (sphere) or x^1 (torus) nodes per chart
  int base_h = 96;   // radial (sphere, split over two panels) or x^2 (torus)
  int ladder = 3;    // rungs; rung r uses resolution / 2^(ladder - 1 - r)
  bool strict = false;
  bool parallel = true;
  int threads = 0;   // 0 keeps the OpenMP default
};

/// One fibre S_xM with its angle rule.
struct FiberChart {
  PhasePoint base;  // x and chart; y unused
  Rule rule;
  int orientation = 1;  // -1 integrates against the reversed fibre orientation
};
FiberChart fiber_chart(int chart, const std::array<double, 2>& x, int nodes);

/// u(theta) at node i, written into a copy of the base point.
PhasePoint fiber_point(const FiberChart& fc, std::size_t i);

/// Integrates forms on SM (generators dx^1, dx^2, dtheta) along the fibre.
/// The result is the form on M obtained by contracting dtheta, with
/// int alpha ^ dtheta = alpha. Throws DegreeMismatch when no sample carries
/// a dtheta component and the field is not zero, NonFinite on NaN.
using FiberField = std::function<std::vector<SmForm>(const FinslerData&)>;
std::vector<SmForm> fiber_integrate(const MetricSpec& spec, const FiberField& field, const FiberChart& fc);
SmForm fiber_integrate(const MetricSpec& spec, const std::function<SmForm(const FinslerData&)>& field,
                       const FiberChart& fc);

/// Coefficient of dx^1 ^ dx^2 of a form on M; rejects fibre-only forms.
double base_density(const SmForm& form_on_m);

/// Partition-of-unity weight of `chart` at chart coordinates xi.
double partition_weight(const MetricSpec& spec, int chart, const std::array<double, 2>& xi);

struct BaseNode {
  int chart = 0;
  std::array<double, 2> x{};
  double weight = 0.0;  // rule weight * partition weight * d(xi)/d(t, p)
};
/// Nodes with zero partition weight are dropped.
std::vector<BaseNode> base_nodes(const MetricSpec& spec, int w, int h);

/// Sum over nodes of weight * f(chart, x), pairwise in node order.
double base_integrate(const MetricSpec& spec, int w, int h,
                      const std::function<double(int, const std::array<double, 2>&)>& density);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(const double* v, std::size_t n);

/// Integrands of `theorem` at one point of SM, in term_labels order.
std::vector<SmForm> theorem_integrands(Theorem theorem, const FinslerData& fd, const ChernData& cd);

/// Per-node fibre integrals of every term of `theorem`, as dx^1 dx^2
/// densities, plus diagnostics.
struct NodeResult {
  std::vector<double> terms;
  double p_norm = 0.0;        // max |P| over the fibre
  double fiber_volume = 0.0;  // int -omega^3, for c1 and berwald
};
NodeResult integrate_node(const MetricSpec& spec, Theorem theorem, int chart, const std::array<double, 2>& x,
                          int fiber_nodes);

struct RungResult {
  int fiber_nodes = 0, base_w = 0, base_h = 0;
  std::vector<double> terms;
  double chi = 0.0, residual = 0.0;
  double p_norm = 0.0, fiber_volume_min = 0.0, fiber_volume_max = 0.0;
  double runtime_ms = 0.0;
};

/// Integrates one resolution. `parallel` selects the OpenMP kernel.
RungResult integrate_rung(const MetricSpec& spec, Theorem theorem, int fiber_nodes, int base_w, int base_h,
                          bool parallel);

struct ChiReport {
  int schema_version = 1;
  std::string metric;
  std::map<std::string, double> params;
  std::string theorem;
  Scheme scheme;
  std::vector<std::string> term_labels;
  std::vector<double> terms;
  double chi = 0.0;
  long nearest_integer = 0;
  double residual = 0.0;
  std::string status;  // "converged" or "inconclusive"
  std::vector<RungResult> ladder;
  double runtime_ms = 0.0;
  std::string ledger_hash;
  double overlap_disagreement = 0.0;  // sphere charts only
  double p_norm = 0.0, fiber_volume_min = 0.0, fiber_volume_max = 0.0;
};

/// Chart-overlap check: fibre integrals of the full integrand at points on
/// the cap boundary t = pi/2, compared across charts as 2-forms on M.
double overlap_disagreement(const MetricSpec& spec, Theorem theorem, int fiber_nodes, int samples = 8);

/// Runs the ladder. Throws ChartDisagreement in strict mode when the
/// overlap check exceeds 1e-8, NonBerwald for a rejected Berwald input.
ChiReport euler_characteristic(const MetricSpec& spec, Theorem theorem, const Scheme& scheme);

/// FNV-1a of the convention ledger text below, as 16 hex digits.
std::string ledger_hash();
const std::string& convention_ledger();

}  // namespace fgbc
