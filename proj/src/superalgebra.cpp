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

#include "fgbc/superalgebra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace fgbc {

namespace {

void check_dim(int m) {
  if (m < 1 || m > kMaxSuperDim) throw Error(ErrorCode::InvalidArgument, "superalgebra: dimension out of range");
}

bool odd_entry(Eigen::Index r, Eigen::Index c) {
  return (std::popcount(static_cast<unsigned>(r)) + std::popcount(static_cast<unsigned>(c))) % 2 != 0;
}

int permutation_sign(std::span<const int> p) {
  int inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

SuperOp::SuperOp(int m) : m_(m) {
  check_dim(m);
  a_ = Eigen::MatrixXd::Zero(1 << m, 1 << m);
}

SuperOp SuperOp::identity(int m) {
  SuperOp s(m);
  s.a_.setIdentity();
  return s;
}

Parity SuperOp::parity(double tol) const {
  bool even = false, odd = false;
  for (Eigen::Index r = 0; r < a_.rows(); ++r)
    for (Eigen::Index c = 0; c < a_.cols(); ++c)
      if (std::abs(a_(r, c)) > tol) (odd_entry(r, c) ? odd : even) = true;
  if (even && odd) return Parity::Mixed;
  return odd ? Parity::Odd : Parity::Even;
}

SuperOp SuperOp::even_part() const {
  SuperOp s = *this;
  for (Eigen::Index r = 0; r < a_.rows(); ++r)
    for (Eigen::Index c = 0; c < a_.cols(); ++c)
      if (odd_entry(r, c)) s.a_(r, c) = 0.0;
  return s;
}

SuperOp SuperOp::odd_part() const {
  SuperOp s = *this;
  for (Eigen::Index r = 0; r < a_.rows(); ++r)
    for (Eigen::Index c = 0; c < a_.cols(); ++c)
      if (!odd_entry(r, c)) s.a_(r, c) = 0.0;
  return s;
}

SuperOp& SuperOp::operator+=(const SuperOp& o) {
  if (o.m_ != m_) throw Error(ErrorCode::InvalidArgument, "SuperOp: dimension mismatch");
  a_ += o.a_;
  return *this;
}

SuperOp& SuperOp::operator-=(const SuperOp& o) {
  if (o.m_ != m_) throw Error(ErrorCode::InvalidArgument, "SuperOp: dimension mismatch");
  a_ -= o.a_;
  return *this;
}

SuperOp& SuperOp::operator*=(double s) {
  a_ *= s;
  return *this;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) {
  if (a.m_ != b.m_) throw Error(ErrorCode::InvalidArgument, "SuperOp: dimension mismatch");
  SuperOp r(a.m_);
  r.a_.noalias() = a.a_ * b.a_;
  return r;
}

SuperOp wedge_contract(WedgeKind kind, int index, int m) {
  check_dim(m);
  if (index < 0 || index >= m) throw Error(ErrorCode::InvalidArgument, "wedge_contract: index out of range");
  SuperOp s(m);
  const unsigned bit = 1u << index;
  for (unsigned S = 0; S < (1u << m); ++S) {
    const int before = std::popcount(S & (bit - 1u));
    const double sign = before % 2 ? -1.0 : 1.0;
    if (kind == WedgeKind::Wedge && !(S & bit)) s.matrix()(S | bit, S) = sign;
    if (kind == WedgeKind::Contract && (S & bit)) s.matrix()(S & ~bit, S) = sign;
  }
  return s;
}

SuperOp clifford(const Eigen::VectorXd& v, const Eigen::MatrixXd& g, bool hat) {
  const int m = static_cast<int>(v.size());
  const Eigen::VectorXd vstar = g * v;
  SuperOp s(m);
  for (int i = 0; i < m; ++i) {
    s += vstar(i) * wedge_contract(WedgeKind::Wedge, i, m);
    s += (hat ? 1.0 : -1.0) * v(i) * wedge_contract(WedgeKind::Contract, i, m);
  }
  return s;
}

SuperOp lift(const Eigen::MatrixXd& B) {
  const int m = static_cast<int>(B.rows());
  SuperOp s(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (B(j, i) != 0.0)
        s -= B(j, i) * (wedge_contract(WedgeKind::Wedge, i, m) * wedge_contract(WedgeKind::Contract, j, m));
  return s;
}

double supertrace(const SuperOp& op) {
  double t = 0.0;
  const auto& a = op.matrix();
  for (Eigen::Index S = 0; S < a.rows(); ++S) t += (std::popcount(static_cast<unsigned>(S)) % 2 ? -1.0 : 1.0) * a(S, S);
  return t;
}

SuperOp supercommutator(const SuperOp& a, const SuperOp& b) {
  // Bilinear extension over the parity decomposition.
  const SuperOp a0 = a.even_part(), a1 = a.odd_part(), b0 = b.even_part(), b1 = b.odd_part();
  return a * b - (b0 * a) - (b1 * a0) + (b1 * a1);
}

FormValuedOp::FormValuedOp(int m, int generators, int max_degree)
    : m_(m), ngen_(generators), max_degree_(max_degree) {
  check_dim(m);
}

FormValuedOp FormValuedOp::term(const SmForm& coeff, const SuperOp& op, int max_degree) {
  FormValuedOp f(op.dim(), coeff.generators(), max_degree);
  for (std::uint32_t mask = 0; mask < coeff.size(); ++mask)
    if (coeff[mask] != 0.0 && std::popcount(mask) <= max_degree) f.terms_[mask] = coeff[mask] * op.matrix();
  return f;
}

FormValuedOp& FormValuedOp::operator+=(const FormValuedOp& o) {
  for (const auto& [mask, mat] : o.terms_) {
    auto it = terms_.find(mask);
    if (it == terms_.end())
      terms_.emplace(mask, mat);
    else
      it->second += mat;
  }
  return *this;
}

FormValuedOp operator*(const FormValuedOp& a, const FormValuedOp& b) {
  if (a.m_ != b.m_ || a.ngen_ != b.ngen_) throw Error(ErrorCode::InvalidArgument, "FormValuedOp: shape mismatch");
  FormValuedOp r(a.m_, a.ngen_, std::min(a.max_degree_, b.max_degree_));
  const Eigen::Index n = Eigen::Index{1} << a.m_;
  Eigen::MatrixXd odd_mask(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) odd_mask(i, j) = odd_entry(i, j) ? 1.0 : 0.0;
  for (const auto& [ma, A] : a.terms_) {
    const Eigen::MatrixXd Aodd = A.cwiseProduct(odd_mask);
    const Eigen::MatrixXd Aeven = A - Aodd;
    for (const auto& [mb, B] : b.terms_) {
      if ((ma & mb) != 0u) continue;
      const std::uint32_t mask = ma | mb;
      if (std::popcount(mask) > r.max_degree_) continue;
      const double s = wedge_sign(ma, mb);
      const double beta = std::popcount(mb) % 2 ? -1.0 : 1.0;
      Eigen::MatrixXd prod = s * (Aeven * B + beta * (Aodd * B));
      auto it = r.terms_.find(mask);
      if (it == r.terms_.end())
        r.terms_.emplace(mask, std::move(prod));
      else
        it->second += prod;
    }
  }
  return r;
}

SmForm FormValuedOp::supertrace() const {
  SmForm f(ngen_);
  for (const auto& [mask, mat] : terms_) {
    double t = 0.0;
    for (Eigen::Index S = 0; S < mat.rows(); ++S) t += (std::popcount(static_cast<unsigned>(S)) % 2 ? -1.0 : 1.0) * mat(S, S);
    f[mask] = t;
  }
  return f;
}

double generalized_delta(std::span<const int> upper, std::span<const int> lower) {
  if (upper.size() != lower.size()) throw Error(ErrorCode::InvalidArgument, "generalized_delta: length mismatch");
  const std::size_t N = upper.size();
  std::vector<int> pos(N);
  for (std::size_t b = 0; b < N; ++b) {
    int found = -1;
    for (std::size_t a = 0; a < N; ++a) {
      if (a != b && upper[a] == upper[b]) return 0.0;
      if (upper[a] == lower[b]) found = static_cast<int>(a);
    }
    if (found < 0) return 0.0;
    pos[b] = found;
  }
  std::vector<int> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0.0;
  return permutation_sign(pos);
}

SmForm delta_contraction(std::span<const std::vector<SmForm>* const> factors, int dim) {
  const int N = static_cast<int>(factors.size());
  if (N == 0 || N > dim) throw Error(ErrorCode::InvalidArgument, "delta_contraction: bad factor count");
  for (const auto* f : factors)
    if (f->size() != static_cast<std::size_t>(dim * dim))
      throw Error(ErrorCode::InvalidArgument, "delta_contraction: index dimension mismatch");
  const int ngen = (*factors[0])[0].generators();
  SmForm sum(ngen);
  // Injective index tuples: ordered N-subsets of {0..dim-1}.
  std::vector<int> idx(static_cast<std::size_t>(dim));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> sigma(static_cast<std::size_t>(N));
  std::vector<int> tuple(static_cast<std::size_t>(N));
  std::vector<bool> pick(static_cast<std::size_t>(dim), false);
  std::fill(pick.begin(), pick.begin() + N, true);
  do {
    std::vector<int> chosen;
    for (int v = 0; v < dim; ++v)
      if (pick[static_cast<std::size_t>(v)]) chosen.push_back(v);
    tuple = chosen;
    do {
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        SmForm t = SmForm::scalar(ngen, permutation_sign(sigma));
        for (int b = 0; b < N; ++b) {
          const int i = tuple[static_cast<std::size_t>(b)];
          const int j = tuple[static_cast<std::size_t>(sigma[static_cast<std::size_t>(b)])];
          t = wedge(t, (*factors[static_cast<std::size_t>(b)])[static_cast<std::size_t>(j * dim + i)]);
          if (t.max_abs() == 0.0) break;
        }
        sum += t;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    } while (std::next_permutation(tuple.begin(), tuple.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return sum;
}

UpsilonXi upsilon_xi(std::span<const SmForm> E, std::span<const SmForm> W, const Eigen::VectorXd& Fy,
                     const Eigen::VectorXd& y, double F) {
  const int d = static_cast<int>(E.size());
  UpsilonXi r;
  r.upsilon.resize(static_cast<std::size_t>(d * d));
  r.xi.resize(static_cast<std::size_t>(d * d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      r.upsilon[static_cast<std::size_t>(j * d + i)] = wedge(W[static_cast<std::size_t>(i)], E[static_cast<std::size_t>(j)]);
      r.xi[static_cast<std::size_t>(j * d + i)] = Fy(i) * E[static_cast<std::size_t>(j)] - (y(j) / F) * W[static_cast<std::size_t>(i)];
    }
  return r;
}

SmForm g1_contraction(const std::vector<SmForm>& R, const std::vector<SmForm>& P, const UpsilonXi& ux, int n, int k) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "g1_contraction: k out of range");
  const int dim = 2 * n;
  std::vector<const std::vector<SmForm>*> f;
  for (int a = 0; a < k; ++a) f.push_back(&R);
  for (int a = 0; a < 2 * n - 2 * k; ++a) f.push_back(&P);
  for (int a = 0; a < k - 1; ++a) f.push_back(&ux.upsilon);
  f.push_back(&ux.xi);
  const double c = (k % 2 ? -1.0 : 1.0) * binomial(2 * k - 2, k - 1);
  return c * delta_contraction(f, dim);
}

namespace {

FormValuedOp natural_lift(const std::vector<SmForm>& X, int dim, int max_degree) {
  const int ngen = X[0].generators();
  FormValuedOp r(dim, ngen, max_degree);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const SuperOp op = wedge_contract(WedgeKind::Wedge, i, dim) * wedge_contract(WedgeKind::Contract, j, dim);
      r += FormValuedOp::term(-X[static_cast<std::size_t>(j * dim + i)], op, max_degree);
    }
  return r;
}

FormValuedOp power(const FormValuedOp& a, int p, FormValuedOp acc) {
  for (int i = 0; i < p; ++i) acc = acc * a;
  return acc;
}

}  // namespace

SmForm g1_engine(const SuperData& d, int n, int k) {
  const int dim = 2 * n;
  const int ngen = d.R[0].generators();
  const int top = 4 * n - 1;
  FormValuedOp ce(dim, ngen, top), cn(dim, ngen, top);
  for (int i = 0; i < dim; ++i) {
    const SuperOp w = wedge_contract(WedgeKind::Wedge, i, dim), c = wedge_contract(WedgeKind::Contract, i, dim);
    ce += FormValuedOp::term(SmForm::scalar(ngen, d.Fy(i)), w, top);
    ce += FormValuedOp::term(SmForm::scalar(ngen, -d.y(i) / d.F), c, top);
    cn += FormValuedOp::term(d.W[static_cast<std::size_t>(i)], w, top);
    cn += FormValuedOp::term(-d.E[static_cast<std::size_t>(i)], c, top);
  }
  FormValuedOp acc = power(cn, 2 * k - 1, ce);
  acc = power(natural_lift(d.R, dim, top), k, acc);
  acc = power(natural_lift(d.P, dim, top), 2 * n - 2 * k, acc);
  return acc.supertrace();
}

SmForm theta_engine(const std::vector<SmForm>& P, const std::vector<SmForm>& theta, int n) {
  const int dim = 2 * n;
  const int top = 4 * n - 1;
  FormValuedOp acc = natural_lift(theta, dim, top);
  acc = power(natural_lift(P, dim, top), 2 * n - 1, acc);
  return acc.supertrace();
}

SmForm theta_contraction(const std::vector<SmForm>& P, const std::vector<SmForm>& theta, int n) {
  std::vector<const std::vector<SmForm>*> f;
  for (int a = 0; a < 2 * n - 1; ++a) f.push_back(&P);
  f.push_back(&theta);
  return delta_contraction(f, 2 * n);
}

}  // namespace fgbc
