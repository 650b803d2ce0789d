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

// Central finite differences against which jet coefficients are checked.
// A pure third difference at h = 1e-4 drowns in roundoff, so order-3
// partials difference the order-2 partials of independently lifted jets.

#include <array>
#include <functional>

#include "fgbc/jet.hpp"

namespace fgbc::oracle {

using PointFn = std::function<Jet(const PhasePoint&, int order)>;

inline PhasePoint shifted(PhasePoint p, int var, double h) {
  if (var < p.dim)
    p.x[static_cast<std::size_t>(var)] += h;
  else
    p.y[static_cast<std::size_t>(var - p.dim)] += h;
  return p;
}

inline double value_at(const PointFn& f, const PhasePoint& p) { return f(p, 0).value(); }

enum class Stencil { Central2, Central4 };

/// Nested first differences along `vars[0..n)` of a scalar `g`.
template <class G>
double nested(const G& g, const PhasePoint& p, const int* vars, int n, double h, Stencil st) {
  if (n == 0) return g(p);
  const int v = vars[0];
  auto at = [&](double t) { return nested(g, shifted(p, v, t), vars + 1, n - 1, h, st); };
  if (st == Stencil::Central2) return (at(h) - at(-h)) / (2 * h);
  return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

/// d^alpha f at p. Orders <= 2 difference plain values; order 3
/// differences the order-2 jet partial once.
inline double fd_partial(const PointFn& f, const PhasePoint& p, const MultiIndex& alpha, double h = 1e-3,
                         Stencil st = Stencil::Central4) {
  int vars[kMaxJetOrder];
  int n = 0;
  for (int v = 0; v < 2 * p.dim; ++v)
    for (int k = 0; k < alpha[static_cast<std::size_t>(v)]; ++k) vars[n++] = v;
  if (n <= 2) return nested([&f](const PhasePoint& q) { return value_at(f, q); }, p, vars, n, h, st);
  MultiIndex beta = alpha;
  --beta[static_cast<std::size_t>(vars[0])];
  return nested([&f, &beta](const PhasePoint& q) { return f(q, 2).partial(beta); }, p, vars, 1, h, st);
}

}  // namespace fgbc::oracle
