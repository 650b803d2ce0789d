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

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet of order K in n variables stores the Taylor coefficients
// f_alpha = (d^alpha f)(z0) / alpha! for every multi-index |alpha| <= K,
// densely, in graded order. Because the order is graded, a jet of order
// K-1 is a prefix of a jet of order K; truncation is a resize.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "fgbc/error.hpp"

namespace fgbc {

inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxJetOrder = 6;

using MultiIndex = std::array<std::uint8_t, kMaxJetVars>;

int total_degree(const MultiIndex& alpha) noexcept;

/// Monomial tables shared by every jet in a given number of variables.
class JetLayout {
 public:
  struct ProductTerm {
    std::uint16_t lhs, rhs, out;
  };

  static const JetLayout& for_vars(int nvars);

  int nvars() const noexcept { return nvars_; }
  /// Number of monomials of total degree <= order.
  int size(int order) const { return sizes_.at(static_cast<std::size_t>(order)); }
  const MultiIndex& exponents(int idx) const { return monomials_[static_cast<std::size_t>(idx)]; }
  int degree(int idx) const { return degrees_[static_cast<std::size_t>(idx)]; }
  /// -1 when |alpha| exceeds kMaxJetOrder.
  int index_of(const MultiIndex& alpha) const;
  /// Index of alpha + e_var, -1 past kMaxJetOrder.
  int raise(int idx, int var) const {
    return raise_[static_cast<std::size_t>(idx * nvars_ + var)];
  }
  /// Bit v set when monomial idx contains variable v.
  std::uint32_t support(int idx) const { return supports_[static_cast<std::size_t>(idx)]; }
  std::uint32_t full_support() const noexcept { return (1u << nvars_) - 1u; }
  /// Pairs (lhs, rhs) with |lhs| + |rhs| <= order, sorted by output index.
  std::span<const ProductTerm> product_terms(int order) const;
  /// The subset of product_terms(order) whose lhs only involves variables in
  /// `lhs_support` and rhs only those in `rhs_support`.
  std::span<const ProductTerm> product_terms(int order, std::uint32_t lhs_support, std::uint32_t rhs_support) const;

  JetLayout(const JetLayout&) = delete;
  JetLayout& operator=(const JetLayout&) = delete;

 private:
  explicit JetLayout(int nvars);

  int nvars_;
  std::vector<MultiIndex> monomials_;
  std::vector<int> degrees_;
  std::vector<int> sizes_;
  std::vector<int> raise_;
  std::vector<std::uint32_t> supports_;
  std::vector<ProductTerm> products_;
  std::vector<std::size_t> product_offsets_;
  struct Filtered;
  std::unique_ptr<Filtered> filtered_;

 public:
  ~JetLayout();
};

class Jet {
 public:
  // 70 = monomials of degree <= 4 in 4 variables (surfaces).
  using Storage = boost::container::small_vector<double, 70>;

  Jet() = default;

  static Jet constant(const JetLayout& layout, int order, double value);
  static Jet variable(const JetLayout& layout, int order, int var, double value,
                      std::uint64_t base_tag);

  bool empty() const noexcept { return layout_ == nullptr; }
  const JetLayout& layout() const { return *layout_; }
  int order() const noexcept { return order_; }
  int nvars() const noexcept { return layout_ ? layout_->nvars() : 0; }
  std::uint64_t base_tag() const noexcept { return tag_; }

  double value() const noexcept { return c_[0]; }
  double coeff(int idx) const { return c_[static_cast<std::size_t>(idx)]; }
  double& coeff(int idx) {
    support_ |= layout_->support(idx);
    return c_[static_cast<std::size_t>(idx)];
  }
  /// Variables the jet may depend on (bit v for variable v).
  std::uint32_t support() const noexcept { return support_; }
  double coeff(const MultiIndex& alpha) const;
  /// Partial derivative d^alpha f (z0), i.e. coeff * alpha!.
  double partial(const MultiIndex& alpha) const;
  std::span<const double> coefficients() const noexcept { return {c_.data(), c_.size()}; }

  /// The same jet marked as lifted at `tag`. Valid only for jets that do
  /// not depend on the variables in which the two lift points differ.
  Jet retagged(std::uint64_t tag) const {
    Jet j = *this;
    j.tag_ = tag;
    return j;
  }

  Jet truncated(int order) const;
  /// d/dz_var; the result has order one less.
  Jet derivative(int var) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator+=(double s) { c_[0] += s; return *this; }
  Jet& operator-=(double s) { c_[0] -= s; return *this; }
  Jet& operator*=(double s);
  Jet operator-() const;

  friend Jet operator*(const Jet& a, const Jet& b);

  /// Re-express a jet of a fiber-homogeneous field of degree `degree`
  /// lifted at (x, u) as the jet at (x, u / s). `dim` is m.
  Jet rescaled_fiber(int dim, double s, int degree, std::uint64_t new_tag) const;

 private:
  const JetLayout* layout_ = nullptr;
  int order_ = 0;
  std::uint64_t tag_ = 0;
  std::uint32_t support_ = 0;
  Storage c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double s) { return a += s; }
inline Jet operator+(double s, Jet a) { return a += s; }
inline Jet operator-(Jet a, double s) { return a -= s; }
inline Jet operator-(double s, const Jet& a) { return (-a) += s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
Jet operator/(const Jet& a, const Jet& b);
inline Jet operator/(Jet a, double s) { return a *= (1.0 / s); }
Jet operator/(double s, const Jet& b);

Jet reciprocal(const Jet& a);
Jet sqrt(const Jet& a);
Jet pow(const Jet& a, double p);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet square(const Jet& a);

/// sum_n c[n] (a - a0)^n, exact to the order of a.
Jet compose_power_series(const Jet& a, std::span<const double> taylor_at_a0);

enum class JetOp { Add, Mul, Div, Sqrt, Pow };
/// Dispatch used by the CLI verify table and tests; `exponent` only for Pow.
Jet jet_arith(const Jet& a, const Jet& b, JetOp op, double exponent = 0.0);

/// A point (x, y) of TM in one chart; m <= 4.
struct PhasePoint {
  int dim = 2;
  std::array<double, 4> x{};
  std::array<double, 4> y{};
  int chart = 0;
};

/// Scalar field F(x, y) written against jet arithmetic.
using ScalarField = std::function<Jet(std::span<const Jet> x, std::span<const Jet> y)>;

/// Lifts `field` to a jet of the given order at `point`, variables
/// ordered (x^1..x^m, y^1..y^m). Rejects y = 0 and non-finite results.
Jet jet_lift(const ScalarField& field, const PhasePoint& point, int order);

/// The 2m coordinate jets at `point`, for callers that evaluate fields
/// themselves.
std::vector<Jet> phase_variables(const PhasePoint& point, int order);

std::uint64_t phase_tag(const PhasePoint& point) noexcept;

/// Name of the coordinate direction for variable index `var` ("x1", "y2", ...).
std::string direction_name(int var, int dim);

}  // namespace fgbc
