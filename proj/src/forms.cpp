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

#include "fgbc/forms.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <utility>

namespace fgbc {

namespace {

int wedge_sign_slow(std::uint32_t a, std::uint32_t b) noexcept {
  int swaps = 0;
  while (b) {
    const int q = std::countr_zero(b);
    swaps += std::popcount(a >> (q + 1));
    b &= b - 1;
  }
  return swaps % 2 ? -1 : 1;
}

constexpr std::uint32_t kTableBits = 6;

// Signs for masks below 2^kTableBits, [a << kTableBits | b].
const std::array<std::int8_t, std::size_t{1} << (2 * kTableBits)>& sign_table() {
  static const auto table = [] {
    std::array<std::int8_t, std::size_t{1} << (2 * kTableBits)> t{};
    for (std::uint32_t a = 0; a < (1u << kTableBits); ++a)
      for (std::uint32_t b = 0; b < (1u << kTableBits); ++b)
        t[(a << kTableBits) | b] = static_cast<std::int8_t>(wedge_sign_slow(a, b));
    return t;
  }();
  return table;
}

}  // namespace

int wedge_sign(std::uint32_t a, std::uint32_t b) noexcept {
  if ((a | b) >> kTableBits) return wedge_sign_slow(a, b);
  return sign_table()[(a << kTableBits) | b];
}

std::uint32_t mask_of(std::initializer_list<int> gens) {
  std::uint32_t m = 0;
  for (int g : gens) m |= 1u << g;
  return m;
}

SmForm::SmForm(int generators) : ngen_(generators) {
  if (generators < 0 || generators > kMaxGenerators)
    throw Error(ErrorCode::InvalidArgument, "SmForm: generator count out of range");
  c_.assign(std::size_t{1} << generators, 0.0);
}

SmForm SmForm::scalar(int generators, double v) {
  SmForm f(generators);
  f.c_[0] = v;
  return f;
}

SmForm SmForm::generator(int generators, int index, double coeff) {
  if (index < 0 || index >= generators) throw Error(ErrorCode::InvalidArgument, "SmForm: generator index out of range");
  SmForm f(generators);
  f.c_[std::size_t{1} << index] = coeff;
  return f;
}

int SmForm::degree(double tol) const {
  int d = -1;
  for (std::size_t m = 0; m < c_.size(); ++m)
    if (std::abs(c_[m]) > tol) d = std::max(d, std::popcount(m));
  return d;
}

double SmForm::max_in_degree(int degree) const {
  double r = 0.0;
  for (std::size_t m = 0; m < c_.size(); ++m)
    if (std::popcount(m) == degree) r = std::max(r, std::abs(c_[m]));
  return r;
}

double SmForm::max_abs() const {
  double r = 0.0;
  for (double v : c_) r = std::max(r, std::abs(v));
  return r;
}

SmForm& SmForm::operator+=(const SmForm& o) {
  if (o.ngen_ != ngen_) throw Error(ErrorCode::InvalidArgument, "SmForm: generator count mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  fiber_only_ = fiber_only_ || o.fiber_only_;
  return *this;
}

SmForm& SmForm::operator-=(const SmForm& o) {
  if (o.ngen_ != ngen_) throw Error(ErrorCode::InvalidArgument, "SmForm: generator count mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  fiber_only_ = fiber_only_ || o.fiber_only_;
  return *this;
}

SmForm& SmForm::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

SmForm SmForm::operator-() const {
  SmForm f = *this;
  for (auto& v : f.c_) v = -v;
  return f;
}

namespace {

// Gaussian elimination with partial pivoting on a row-major k x k array.
double small_determinant(double* a, int k) {
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    if (a[piv * k + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
      det = -det;
    }
    det *= a[col * k + col];
    for (int r = col + 1; r < k; ++r) {
      const double f = a[r * k + col] / a[col * k + col];
      for (int j = col + 1; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
    }
  }
  return det;
}

}  // namespace

SmForm wedge(const SmForm& a, const SmForm& b) {
  if (a.generators() != b.generators()) throw Error(ErrorCode::InvalidArgument, "SmForm: generator count mismatch");
  SmForm r(a.generators());
  const auto n = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t p = 0; p < n; ++p) {
    const double ap = a[p];
    if (ap == 0.0) continue;
    const std::uint32_t free = (n - 1) & ~p;
    for (std::uint32_t q = free;; q = (q - 1) & free) {
      const double bq = b[q];
      if (bq != 0.0) r[p | q] += wedge_sign(p, q) * ap * bq;
      if (q == 0) break;
    }
  }
  r.mark_fiber_only(a.fiber_only() || b.fiber_only());
  return r;
}

// Each monomial e^{i_1..i_k} maps to sum over sorted targets S of
// det P[i, S] e^S.
SmForm SmForm::pullback(const Eigen::MatrixXd& P) const {
  if (P.rows() != ngen_) throw Error(ErrorCode::InvalidArgument, "SmForm::pullback: row count must equal generators");
  const int d = static_cast<int>(P.cols());
  if (d > kMaxGenerators) throw Error(ErrorCode::InvalidArgument, "SmForm::pullback: too many target generators");
  SmForm r(d);
  // Target monomials grouped by generator count and degree.
  using Lists = std::array<std::array<std::vector<std::uint32_t>, kMaxGenerators + 1>, kMaxGenerators + 1>;
  static const Lists lists = [] {
    Lists l;
    for (int g = 0; g <= kMaxGenerators; ++g)
      for (std::uint32_t S = 0; S < (1u << g); ++S)
        l[static_cast<std::size_t>(g)][static_cast<std::size_t>(std::popcount(S))].push_back(S);
    return l;
  }();
  const auto& by_degree = lists[static_cast<std::size_t>(d)];
  for (std::uint32_t m = 0; m < c_.size(); ++m) {
    if (c_[m] == 0.0) continue;
    const int k = std::popcount(m);
    if (k > d) continue;
    if (k == 0) {
      r.c_[0] += c_[m];
      continue;
    }
    int rows[kMaxGenerators];
    int n = 0;
    for (std::uint32_t rest = m; rest; rest &= rest - 1) rows[n++] = std::countr_zero(rest);
    for (const std::uint32_t S : by_degree[static_cast<std::size_t>(k)]) {
      int cols[kMaxGenerators];
      int c = 0;
      for (std::uint32_t rest = S; rest; rest &= rest - 1) cols[c++] = std::countr_zero(rest);
      double a[kMaxGenerators * kMaxGenerators];
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a[i * k + j] = P(rows[i], cols[j]);
      r.c_[S] += c_[m] * small_determinant(a, k);
    }
  }
  r.mark_fiber_only(fiber_only_);
  return r;
}

}  // namespace fgbc
