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

// Pointwise Gauss-Bonnet-Chern integrands on SM.
//
// Forms are assembled on TM_o with generators (dx^1..dx^m, delta y^1..delta y^m)
// and restricted to SM, whose generators are (dx^1..dx^m, theta^1..theta^{m-1}).
// For surfaces theta^1 = d(theta) for the angle of y / |y|, so the restricted
// top coefficient is the density against dx^1 dx^2 d(theta). The orientation
// of SM is base followed by fibre, with theta counterclockwise.

#include <string>
#include <vector>

#include "fgbc/chern.hpp"
#include "fgbc/finsler.hpp"
#include "fgbc/forms.hpp"
#include "fgbc/metric.hpp"

namespace fgbc {

/// Matrix of the restriction TM_o -> SM at fd.point: old generator i maps to
/// sum_j P(i, j) of the new generators. delta y^i restricts to
/// (N^i_k - y^i F_{x^k} / F) dx^k + T^i_a theta^a with T spanning ker F_y.
Eigen::MatrixXd sm_pullback(const FinslerData& fd);

SmForm restrict_to_sm(const SmForm& form, const FinslerData& fd);

/// (nabla e)^i = delta y^i / F - (y^i / F) d log F and
/// (nabla* omega)_i = g_ik (nabla e)^k, on TM_o generators.
struct NablaE {
  std::vector<SmForm> E, W;
};
NablaE nabla_e(const FinslerData& fd, const ChernData& cd);

/// (nabla* omega)_i = dF_{y^i} - varpi^k_i F_{y^k}, without using the metric.
std::vector<SmForm> nabla_hilbert_direct(const FinslerData& fd, const ChernData& cd);

/// Curvature forms split into the dx ^ dx part R and the dx ^ delta y part P,
/// stored [out * m + in] like ChernData::curvature.
struct CurvatureParts {
  std::vector<SmForm> R, P;
};
CurvatureParts curvature_parts(const ChernData& cd);

/// k-th term of the first family, normalization included, restricted to SM.
SmForm theorem2_term1(const FinslerData& fd, const ChernData& cd, int k);

/// delta P^{2n-1} varpi / ((2 pi)^{2n} (2n)!), restricted to SM and marked
/// fibre-only.
SmForm theorem2_term2(const FinslerData& fd, const ChernData& cd);

/// Same contraction with varpi replaced by `connection` (1-forms on TM_o,
/// [out * m + in]).
SmForm theorem2_term2_with(const FinslerData& fd, const ChernData& cd, const std::vector<SmForm>& connection);

/// The three surface integrands, each c * omega^1 omega^2 omega^3 on SM with
/// the 1 / (2 pi)^2 normalization included.
struct Corollary1Terms {
  SmForm curvature;  // R_1^2_12
  SmForm landsberg;  // -(G_1 y^1 + G_2 y^2) / F^3 * P_1^1_11
  SmForm cartan;     // [...] P_2^1_11
  double R1_12_2 = 0.0, P1_11_1 = 0.0, P2_11_1 = 0.0;
  SmForm total() const { return curvature + landsberg + cartan; }
};
Corollary1Terms corollary1_integrands(const FinslerData& fd, const ChernData& cd, const SpecialFrame& frame);

/// Frame components of the curvature on SM in the basis
/// omega^1 omega^2, omega^1 omega^3, omega^2 omega^3 (surfaces only).
struct SurfaceCurvature {
  double R1_12_2, P1_11_1, P2_11_1;
};
SurfaceCurvature surface_curvature(const FinslerData& fd, const SpecialFrame& frame);

inline constexpr double kBerwaldGate = 1e-8;

/// (-1 / 2 pi)^n / Vol(S^{2n-1}) Pf(Omega-hat) omega_1^{2n} ... omega_{2n-1}^{2n},
/// restricted to SM. Throws NonBerwald when |P| exceeds the gate.
SmForm berwald_integrand(const FinslerData& fd, const ChernData& cd, const SpecialFrame& frame,
                         double gate = kBerwaldGate);

/// 2 pi^n / (n - 1)!.
double unit_sphere_volume(int n);

/// -omega^3 = omega_1^2 restricted to SM: the Finsler fibre length element.
SmForm fiber_length_element(const FinslerData& fd, const SpecialFrame& frame);

/// Integral over the fibre of the Gaussian T^2 exp(-T^2 |y|^2), truncated at
/// |T y| <= cutoff, in polar coordinates (Gauss-Legendre radius, trapezoid angle).
double gaussian_fiber_integral(double T, double cutoff, int radial_nodes = 64, int angular_nodes = 16);

struct MqCheck {
  SmForm form;          // 2-form on (dx^1, dx^2)
  double supertrace_top = 0.0;  // coefficient of dx^1 dx^2 dy^1 dy^2 in tr_s exp
  double tail_bound = 0.0;
};

/// Fibrewise integral of tr_s[exp(A_T^2)] at a point of a Riemannian surface,
/// in an orthonormal frame parallel at x. Throws CutoffTooSmall when the
/// discarded Gaussian mass exceeds 1e-10.
MqCheck mq_fiber_check(const MetricSpec& spec, const PhasePoint& base, double T, double cutoff);

}  // namespace fgbc
