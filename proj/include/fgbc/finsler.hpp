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

#include <vector>

#include <Eigen/Dense>

#include "fgbc/jet.hpp"
#include "fgbc/metric.hpp"

namespace fgbc {

inline constexpr int kMaxDim = 4;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

/// Row-major square matrix of jets.
struct JetMatrix {
  int n = 0;
  std::vector<Jet> a;

  JetMatrix() = default;
  explicit JetMatrix(int size) : n(size), a(static_cast<std::size_t>(size * size)) {}
  Jet& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const Jet& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  Mat values() const;
};

/// Inverse by Gauss-Jordan on jets, pivoting on values.
JetMatrix inverse(const JetMatrix& g);

/// Pointwise Finsler package at (x, y). Jet members keep enough order for
/// one further x/y derivative of the connection.
struct FinslerData {
  int m = 2;
  PhasePoint point;

  Jet f2;                // order 4
  Jet f;                 // order 3
  std::vector<Jet> fy;   // F_{y^i}, order 2
  JetMatrix g, ginv;     // order 2
  std::vector<Jet> spray;  // G^i, order 2
  JetMatrix N;           // N(i, j) = N^i_j = dG^i/dy^j, order 1

  double F = 0.0;
  Vec y, Fy, Fx;         // F_{x^i} is the plain partial
  Vec deltaF;            // dF/dx^i - N^l_i F_{y^l}
  Mat gv, ginvv, Nv;
  Vec G, G_lower;        // G^i and G_i = g_il G^l
  std::vector<double> cartan;  // A_ijk, flattened

  double A(int i, int j, int k) const {
    return cartan[static_cast<std::size_t>((i * m + j) * m + k)];
  }
};

struct FinslerOptions {
  double max_condition = 1e8;
};

/// Builds the package from an order-4 jet of F^2 lifted at `point`.
FinslerData finsler_from_f2(const Jet& f2, const PhasePoint& point, const FinslerOptions& opt = {});

FinslerData finsler_data(const MetricSpec& spec, const PhasePoint& point, const FinslerOptions& opt = {});

/// The package at the indicatrix point y = u / F(x, u); `point.y` holds u.
FinslerData finsler_data_on_indicatrix(const MetricSpec& spec, const PhasePoint& point,
                                       const FinslerOptions& opt = {});

Mat fundamental_tensor(const MetricSpec& spec, const PhasePoint& point);
std::vector<double> cartan_tensor(const MetricSpec& spec, const PhasePoint& point);

struct SprayConnection {
  Vec G;
  Mat N;  // N(i, j) = N^i_j
};
SprayConnection spray_and_connection(const MetricSpec& spec, const PhasePoint& point);

/// Change of coframe (dx, dy) -> (dx, dy-hat): a 2m x 2m matrix M with
/// (dx, delta y)^T = M (dx, dy)^T, i.e. delta y^i = dy^i + N^i_j dx^j.
Eigen::MatrixXd horizontal_frame(const MetricSpec& spec, const PhasePoint& point);

/// Components F_{y^i} of the Hilbert form.
Vec hilbert_form(const MetricSpec& spec, const PhasePoint& point);

}  // namespace fgbc
