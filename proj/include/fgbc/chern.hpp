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

#include "fgbc/finsler.hpp"
#include "fgbc/forms.hpp"

namespace fgbc {

/// Chern connection and curvature at one point of TM_o. Forms use the
/// generators (dx^1..dx^m, dy-hat^1..dy-hat^m); matrices of forms are
/// stored row-major as X[out * m + in], so X[i * m + j] is X^i_j.
struct ChernData {
  int m = 2;
  std::vector<Jet> gamma_jets;    // Gamma^i_jk at (i*m+j)*m+k, order 1
  std::vector<double> Gamma;      // values, same layout
  std::vector<double> dGamma_dx;  // dGamma^i_jk/dx^l at ((i*m+j)*m+k)*m+l
  std::vector<double> dGamma_dy;  // dGamma^i_jk/dy^l
  std::vector<double> R;          // R^i_{jkl}, dx^k ^ dx^l block
  std::vector<double> P;          // P^i_{jkl}, dx^k ^ (dy-hat^l / F) block
  std::vector<SmForm> varpi;      // connection 1-forms
  std::vector<SmForm> curvature;  // curvature 2-forms
  double yy_block = 0.0;          // largest dy-hat ^ dy-hat coefficient
  double p_crosscheck = 0.0;      // max |P - (-F dGamma/dy)|

  std::size_t idx3(int i, int j, int k) const { return static_cast<std::size_t>((i * m + j) * m + k); }
  std::size_t idx4(int i, int j, int k, int l) const { return static_cast<std::size_t>(((i * m + j) * m + k) * m + l); }
  double gamma(int i, int j, int k) const { return Gamma[idx3(i, j, k)]; }
  double riemann(int i, int j, int k, int l) const { return R[idx4(i, j, k, l)]; }
  double minkowski(int i, int j, int k, int l) const { return P[idx4(i, j, k, l)]; }
  double p_norm() const;
};

/// d of an order >= 1 jet as a 1-form on the (dx, dy-hat) coframe.
SmForm differential(const Jet& f, const FinslerData& fd);

/// Gamma^i_jk = 1/2 g^{il} (dg_lj/dx^k + dg_lk/dx^j - dg_jk/dx^l) with
/// horizontal derivatives, as order-1 jets; fills gamma_jets and values.
ChernData christoffel(const FinslerData& fd);

struct CurvatureOptions {
  double yy_tolerance = 1e-10;  // hard error above this
};

/// Omega = d varpi + varpi ^ varpi, split into R and P. Throws
/// ConventionFault when the dy-hat ^ dy-hat block does not vanish.
void curvature_split(ChernData& cd, const FinslerData& fd, const CurvatureOptions& opt = {});

/// christoffel followed by curvature_split.
ChernData chern_data(const FinslerData& fd, const CurvatureOptions& opt = {});

struct StructureResiduals {
  double torsion = 0.0;
  double metricity = 0.0;
};

/// Evaluated from cd.Gamma, so a perturbed Gamma shows up here.
StructureResiduals structure_residuals(const ChernData& cd, const FinslerData& fd);

/// g_F-orthonormal frame with e_m = y/F. u(i, a) = u_a^i, v = u^{-1}.
struct SpecialFrame {
  int m = 2;
  Mat u, v;
  std::vector<Jet> u_jets;         // u_a^i at a*m+i, order 1
  double sqrt_det_g = 0.0;
  std::vector<SmForm> coframe;     // omega^a
  std::vector<SmForm> connection;  // [b*m+a] = omega_a^b, nabla e_a = omega_a^b e_b
  std::vector<SmForm> curvature;   // [b*m+a] = Omega_a^b

  const SmForm& conn(int out, int in) const { return connection[static_cast<std::size_t>(out * m + in)]; }
  const SmForm& curv(int out, int in) const { return curvature[static_cast<std::size_t>(out * m + in)]; }
  /// omega^3 = omega_2^1 for surfaces.
  const SmForm& omega3() const { return conn(0, 1); }
};

SpecialFrame special_frame(const FinslerData& fd, const ChernData& cd);

/// [b*m+a] = 1/2 (Omega_a^b - Omega_b^a).
std::vector<SmForm> skew_curvature(const std::vector<SmForm>& curvature, int m);

/// Pf(S) = 1/(2^n n!) sum eps S[a1][a2] ... for antisymmetric S.
double pfaffian(const Eigen::MatrixXd& S);

/// Same sum with wedge products; S[a * dim + b] are 2-forms.
SmForm pfaffian(const std::vector<SmForm>& S, int dim);

}  // namespace fgbc
