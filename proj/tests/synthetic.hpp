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

// Random pointwise data with the algebraic shape of the Chern curvature
// and of nabla e on SM, for the supertrace identities.

#include <random>

#include "fgbc/superalgebra.hpp"

namespace fgbc::testing {

struct Synthetic {
  SuperData data;
  Eigen::MatrixXd g;
  std::vector<SmForm> varpi;  // horizontal 1-forms
};

/// Generators: dx^0..dx^{d-1} then dy-hat^0..dy-hat^{d-1}, d = 2n.
inline Synthetic make_synthetic(int n, std::mt19937_64& rng) {
  const int d = 2 * n, ngen = 2 * d;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Synthetic s;
  Eigen::MatrixXd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = u(rng);
  s.g = A * A.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
  auto& D = s.data;
  D.y = Eigen::VectorXd(d);
  for (int i = 0; i < d; ++i) D.y(i) = u(rng);
  D.F = std::sqrt(D.y.dot(s.g * D.y));
  D.Fy = s.g * D.y / D.F;
  D.R.assign(static_cast<std::size_t>(d * d), SmForm(ngen));
  D.P.assign(static_cast<std::size_t>(d * d), SmForm(ngen));
  s.varpi.assign(static_cast<std::size_t>(d * d), SmForm(ngen));
  for (auto& r : D.R)
    for (int k = 0; k < d; ++k)
      for (int l = k + 1; l < d; ++l) r[mask_of({k, l})] = u(rng);
  for (auto& p : D.P)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) p[mask_of({k, d + l})] = u(rng);
  for (auto& w : s.varpi)
    for (int k = 0; k < d; ++k) w[1u << k] = u(rng);
  std::vector<SmForm> E(static_cast<std::size_t>(d), SmForm(ngen));
  for (auto& e : E)
    for (int a = 0; a < ngen; ++a) e[1u << a] = u(rng);
  SmForm fe(ngen);
  for (int i = 0; i < d; ++i) fe += D.Fy(i) * E[static_cast<std::size_t>(i)];
  for (int j = 0; j < d; ++j) E[static_cast<std::size_t>(j)] -= (D.y(j) / D.F) * fe;
  D.E = E;
  D.W.assign(static_cast<std::size_t>(d), SmForm(ngen));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) D.W[static_cast<std::size_t>(i)] += s.g(i, k) * E[static_cast<std::size_t>(k)];
  return s;
}

}  // namespace fgbc::testing
