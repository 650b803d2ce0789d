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

// Operators on the exterior algebra of an m-dimensional space, m <= 4,
// as dense 2^m x 2^m matrices on the monomial basis e^S (S a bitmask of
// covector indices, factors in increasing order). Indices are 0-based.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fgbc/forms.hpp"

namespace fgbc {

inline constexpr int kMaxSuperDim = 4;

enum class Parity { Even, Odd, Mixed };

class SuperOp {
 public:
  SuperOp() = default;
  explicit SuperOp(int m);
  static SuperOp identity(int m);

  int dim() const noexcept { return m_; }
  const Eigen::MatrixXd& matrix() const noexcept { return a_; }
  Eigen::MatrixXd& matrix() noexcept { return a_; }
  Parity parity(double tol = 0.0) const;
  /// Parts that preserve / flip the exterior degree parity.
  SuperOp even_part() const;
  SuperOp odd_part() const;

  SuperOp& operator+=(const SuperOp& o);
  SuperOp& operator-=(const SuperOp& o);
  SuperOp& operator*=(double s);
  friend SuperOp operator*(const SuperOp& a, const SuperOp& b);

 private:
  int m_ = 0;
  Eigen::MatrixXd a_;
};

inline SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
inline SuperOp operator-(SuperOp a, const SuperOp& b) { return a -= b; }
inline SuperOp operator*(SuperOp a, double s) { return a *= s; }
inline SuperOp operator*(double s, SuperOp a) { return a *= s; }

enum class WedgeKind { Wedge, Contract };

/// e^index ^ (Wedge) or the interior product with e_index (Contract).
SuperOp wedge_contract(WedgeKind kind, int index, int m);

/// c(v) = v* ^ - i_v, hat: v* ^ + i_v, with v*_i = g_ij v^j.
SuperOp clifford(const Eigen::VectorXd& v, const Eigen::MatrixXd& g, bool hat);

/// B-natural = -sum_{i,j} B^j_i e^i ^ i_{e_j}, with B(j, i) = B^j_i.
SuperOp lift(const Eigen::MatrixXd& B);

/// sum_S (-1)^{|S|} A(S, S).
double supertrace(const SuperOp& op);

/// [A, B] = AB - (-1)^{|A||B|} BA, extended bilinearly to mixed parity.
SuperOp supercommutator(const SuperOp& a, const SuperOp& b);

/// Operators with coefficients in an auxiliary exterior algebra on
/// `generators` anticommuting symbols. The auxiliary symbols anticommute
/// past odd operators: (alpha x A)(beta x B) = (-1)^{|A||beta|} alpha^beta x AB.
class FormValuedOp {
 public:
  FormValuedOp(int m, int generators, int max_degree);
  static FormValuedOp term(const SmForm& coeff, const SuperOp& op, int max_degree);

  int dim() const noexcept { return m_; }
  int generators() const noexcept { return ngen_; }
  const std::map<std::uint32_t, Eigen::MatrixXd>& terms() const noexcept { return terms_; }

  FormValuedOp& operator+=(const FormValuedOp& o);
  friend FormValuedOp operator*(const FormValuedOp& a, const FormValuedOp& b);

  SmForm supertrace() const;

 private:
  int m_, ngen_, max_degree_;
  std::map<std::uint32_t, Eigen::MatrixXd> terms_;
};

/// delta^{upper}_{lower}: sign of the permutation taking lower to upper,
/// zero when the entries are not a permutation of distinct indices.
double generalized_delta(std::span<const int> upper, std::span<const int> lower);

/// delta^{i_1..i_N}_{j_1..j_N} X1_{i_1}^{j_1} ^ ... ^ XN_{i_N}^{j_N} with
/// each factor a dim x dim matrix of forms, X[j * dim + i] = X_i^j.
SmForm delta_contraction(std::span<const std::vector<SmForm>* const> factors, int dim);

/// Upsilon_i^j = W_i E^j and Xi_i^j = F_{y^i} E^j - (y^j / F) W_i, where
/// E^i = (nabla e)^i and W_i = (nabla* omega)_i.
struct UpsilonXi {
  std::vector<SmForm> upsilon, xi;  // [j * dim + i]
};
UpsilonXi upsilon_xi(std::span<const SmForm> E, std::span<const SmForm> W, const Eigen::VectorXd& Fy,
                     const Eigen::VectorXd& y, double F);

/// (-1)^k C(2k-2, k-1) delta R^k P^{2n-2k} Upsilon^{k-1} Xi.
SmForm g1_contraction(const std::vector<SmForm>& R, const std::vector<SmForm>& P, const UpsilonXi& ux, int n, int k);

/// Data for the supertrace side of the same identity.
struct SuperData {
  std::vector<SmForm> R, P;  // [j * dim + i]
  std::vector<SmForm> E, W;
  Eigen::VectorXd Fy, y;
  double F = 1.0;
};

/// tr_s[c(e) c(nabla e)^{2k-1} (R-nat)^k (P-nat)^{2n-2k}] evaluated in the engine.
SmForm g1_engine(const SuperData& d, int n, int k);

/// tr_s[theta-nat (P-nat)^{2n-1}] with theta-nat = -theta^j_i e^i ^ i_{e_j}.
SmForm theta_engine(const std::vector<SmForm>& P, const std::vector<SmForm>& theta, int n);

/// delta P^{2n-1} theta.
SmForm theta_contraction(const std::vector<SmForm>& P, const std::vector<SmForm>& theta, int n);

double binomial(int n, int k);

}  // namespace fgbc
