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

// Closed-form Riemannian geometry used as an independent reference.
// Two-dimensional metrics here are conformally flat, a = e^{2 phi} delta,
// except the ellipsoid, which is checked through its Gauss curvature.

#include <array>
#include <cmath>
#include <numbers>

namespace fgbc::oracle {

struct Conformal2D {
  double phi = 0.0;
  std::array<double, 2> dphi{};
  double laplacian = 0.0;

  double a() const { return std::exp(2 * phi); }

  /// Levi-Civita symbols gamma^i_{jk}.
  double christoffel(int i, int j, int k) const {
    return (i == j ? dphi[static_cast<std::size_t>(k)] : 0.0) + (i == k ? dphi[static_cast<std::size_t>(j)] : 0.0) -
           (j == k ? dphi[static_cast<std::size_t>(i)] : 0.0);
  }

  double gauss_curvature() const { return -std::exp(-2 * phi) * laplacian; }

  /// R^i_{jkl} with R(d_k, d_l) d_j = R^i_{jkl} d_i.
  double riemann(int i, int j, int k, int l) const {
    const double K = gauss_curvature(), g = a();
    return K * ((i == k ? 1.0 : 0.0) * (j == l ? g : 0.0) - (i == l ? 1.0 : 0.0) * (j == k ? g : 0.0));
  }
};

/// Round sphere of radius r in either stereographic chart.
inline Conformal2D round_sphere(double r, double x1, double x2) {
  const double s = 1 + x1 * x1 + x2 * x2;
  Conformal2D c;
  c.phi = std::log(2 * r / s);
  c.dphi = {-2 * x1 / s, -2 * x2 / s};
  c.laplacian = -4 / (s * s);
  return c;
}

/// e^{2 kappa sin(2 pi x1) cos(2 pi x2)} delta on the unit torus.
inline Conformal2D conformal_torus(double kappa, double x1, double x2) {
  constexpr double t = 2 * std::numbers::pi;
  Conformal2D c;
  c.phi = kappa * std::sin(t * x1) * std::cos(t * x2);
  c.dphi = {kappa * t * std::cos(t * x1) * std::cos(t * x2), -kappa * t * std::sin(t * x1) * std::sin(t * x2)};
  c.laplacian = -2 * t * t * c.phi;
  return c;
}

/// Gauss curvature of the ellipsoid X^2/a^2 + Y^2/b^2 + Z^2/c^2 = 1 at
/// the image (a n_x, b n_y, c n_z) of the unit vector n.
inline double ellipsoid_curvature(double a, double b, double c, const std::array<double, 3>& n) {
  const double X = a * n[0], Y = b * n[1], Z = c * n[2];
  const double q = X * X / (a * a * a * a) + Y * Y / (b * b * b * b) + Z * Z / (c * c * c * c);
  return 1.0 / (a * a * b * b * c * c * q * q);
}

/// Unit normal for chart coordinates, written independently of the library.
inline std::array<double, 3> stereo(int chart, double x1, double x2) {
  const double r2 = x1 * x1 + x2 * x2, s = 1 + r2;
  if (chart == 0) return {2 * x1 / s, 2 * x2 / s, (1 - r2) / s};
  return {2 * x1 / s, -2 * x2 / s, (r2 - 1) / s};
}

/// Ellipsoid first fundamental form a_ij from central differences of the
/// embedding (step 1e-6).
inline std::array<std::array<double, 2>, 2> ellipsoid_metric(double a, double b, double c, int chart, double x1,
                                                             double x2) {
  const double h = 1e-6;
  auto p = [&](double u, double v) {
    auto n = stereo(chart, u, v);
    return std::array<double, 3>{a * n[0], b * n[1], c * n[2]};
  };
  std::array<std::array<double, 3>, 2> d{};
  for (int k = 0; k < 3; ++k) {
    d[0][static_cast<std::size_t>(k)] = (p(x1 + h, x2)[static_cast<std::size_t>(k)] - p(x1 - h, x2)[static_cast<std::size_t>(k)]) / (2 * h);
    d[1][static_cast<std::size_t>(k)] = (p(x1, x2 + h)[static_cast<std::size_t>(k)] - p(x1, x2 - h)[static_cast<std::size_t>(k)]) / (2 * h);
  }
  std::array<std::array<double, 2>, 2> g{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
  return g;
}

}  // namespace fgbc::oracle
