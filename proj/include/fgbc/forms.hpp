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

// Dense exterior algebra on up to 8 anticommuting generators. A monomial
// is a bitmask; generator i is bit i and monomials are ordered by
// increasing generator index. For a point of SM with base dimension m the
// generators are dx^1..dx^m (bits 0..m-1) and dy-hat^1..dy-hat^m
// (bits m..2m-1).

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <boost/container/small_vector.hpp>

#include "fgbc/error.hpp"

namespace fgbc {

inline constexpr int kMaxGenerators = 8;

/// (-1)^{#pairs (p in a, q in b) with p > q}: the sign of a ^ b relative
/// to the sorted monomial a|b. Requires a & b == 0.
int wedge_sign(std::uint32_t a, std::uint32_t b) noexcept;

class SmForm {
 public:
  SmForm() = default;
  explicit SmForm(int generators);

  static SmForm scalar(int generators, double v);
  static SmForm generator(int generators, int index, double coeff = 1.0);

  int generators() const noexcept { return ngen_; }
  std::size_t size() const noexcept { return c_.size(); }
  double operator[](std::uint32_t mask) const { return c_[mask]; }
  double& operator[](std::uint32_t mask) { return c_[mask]; }

  /// Highest degree carrying a coefficient above `tol`; -1 for zero.
  int degree(double tol = 0.0) const;
  /// Largest |coefficient| among monomials of the given degree.
  double max_in_degree(int degree) const;
  double max_abs() const;
  /// Coefficient of the top monomial (all generators).
  double top() const { return c_.back(); }

  /// Set when the form is chart-dependent and only meaningful after
  /// integration along the fibres.
  bool fiber_only() const noexcept { return fiber_only_; }
  SmForm& mark_fiber_only(bool v = true) {
    fiber_only_ = v;
    return *this;
  }

  SmForm& operator+=(const SmForm& o);
  SmForm& operator-=(const SmForm& o);
  SmForm& operator*=(double s);
  SmForm operator-() const;

  /// Substitutes generator i -> sum_j P(i, j) theta_j for new generators
  /// theta_0..theta_{d-1}.
  SmForm pullback(const Eigen::MatrixXd& P) const;

 private:
  int ngen_ = 0;
  bool fiber_only_ = false;
  boost::container::small_vector<double, 16> c_;
};

SmForm wedge(const SmForm& a, const SmForm& b);
inline SmForm operator+(SmForm a, const SmForm& b) { return a += b; }
inline SmForm operator-(SmForm a, const SmForm& b) { return a -= b; }
inline SmForm operator*(SmForm a, double s) { return a *= s; }
inline SmForm operator*(double s, SmForm a) { return a *= s; }

/// Index of a generator pair mask, e.g. mask_of({0, 2}) = 0b101.
std::uint32_t mask_of(std::initializer_list<int> gens);

}  // namespace fgbc
