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

// One-dimensional quadrature rules.

#include <vector>

namespace fgbc {

struct Rule {
  std::vector<double> nodes, weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
Rule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// n-point periodic trapezoid rule on [a, a + period).
Rule periodic_trapezoid(int n, double a, double period);

}  // namespace fgbc
