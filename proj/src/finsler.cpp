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

#include "fgbc/finsler.hpp"

#include <cmath>
#include <sstream>

namespace fgbc {

Mat JetMatrix::values() const {
  Mat v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) = (*this)(i, j).value();
  return v;
}

JetMatrix inverse(const JetMatrix& g) {
  const int n = g.n;
  if (n == 2) {
    const Jet det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    const Jet inv = 1.0 / det;
    JetMatrix r(2);
    r(0, 0) = g(1, 1) * inv;
    r(1, 1) = g(0, 0) * inv;
    r(0, 1) = -(g(0, 1) * inv);
    r(1, 0) = -(g(1, 0) * inv);
    return r;
  }
  JetMatrix a = g;
  JetMatrix r(n);
  const Jet& proto = g(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = Jet::constant(proto.layout(), proto.order(), i == j ? 1.0 : 0.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a(i, col).value()) > std::abs(a(piv, col).value())) piv = i;
    if (a(piv, col).value() == 0.0) throw Error(ErrorCode::DomainError, "inverse: singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(col, j), a(piv, j));
      std::swap(r(col, j), r(piv, j));
    }
    const Jet p = 1.0 / a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * p;
      r(col, j) = r(col, j) * p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const Jet f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        r(i, j) -= f * r(col, j);
      }
    }
  }
  return r;
}

namespace {

void check_metric(const Mat& g, const PhasePoint& p, const FinslerOptions& opt) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(g.rows() - 1);
  auto where = [&p] {
    std::ostringstream os;
    os << " at chart " << p.chart << " x=(" << p.x[0] << "," << p.x[1] << ") y=(" << p.y[0] << "," << p.y[1] << ")";
    return os.str();
  };
  if (!(lo > 0.0)) {
    std::ostringstream os;
    os << "fundamental tensor not positive definite, smallest eigenvalue " << lo << where();
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  if (hi / lo > opt.max_condition) {
    std::ostringstream os;
    os << "fundamental tensor condition number " << hi / lo << " exceeds " << opt.max_condition << where();
    throw Error(ErrorCode::IllConditioned, os.str());
  }
}

}  // namespace

FinslerData finsler_from_f2(const Jet& f2, const PhasePoint& point, const FinslerOptions& opt) {
  const int m = point.dim;
  if (f2.order() < 4) throw Error(ErrorCode::OrderExhausted, "finsler_from_f2: need an order-4 jet of F^2");
  FinslerData d;
  d.m = m;
  d.point = point;
  d.f2 = f2.truncated(4);
  if (!(f2.value() > 0.0)) throw Error(ErrorCode::DomainError, "finsler_from_f2: F^2 is not positive");
  d.f = sqrt(d.f2.truncated(3));
  d.F = d.f.value();

  std::vector<Jet> f2y, f2x;
  for (int i = 0; i < m; ++i) {
    f2x.push_back(d.f2.derivative(i));      // order 3
    f2y.push_back(d.f2.derivative(m + i));  // order 3
    d.fy.push_back(d.f.derivative(m + i));  // order 2
  }
  d.g = JetMatrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) d.g(i, j) = 0.5 * f2y[static_cast<std::size_t>(i)].derivative(m + j);
  d.gv = d.g.values();
  check_metric(d.gv, point, opt);
  d.ginv = inverse(d.g);
  d.ginvv = d.ginv.values();

  d.cartan.resize(static_cast<std::size_t>(m * m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Jet gij_y = d.g(i, j);
      for (int k = 0; k < m; ++k)
        d.cartan[static_cast<std::size_t>((i * m + j) * m + k)] = 0.5 * d.F * gij_y.derivative(m + k).value();
    }

  // G^i = 1/4 g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l})
  const auto vars = phase_variables(point, 2);
  std::vector<Jet> bracket;
  for (int l = 0; l < m; ++l) {
    Jet b = -f2x[static_cast<std::size_t>(l)].truncated(2);
    for (int k = 0; k < m; ++k) b += f2y[static_cast<std::size_t>(l)].derivative(k) * vars[static_cast<std::size_t>(m + k)];
    bracket.push_back(b);
  }
  d.spray.clear();
  for (int i = 0; i < m; ++i) {
    Jet s = d.ginv(i, 0) * bracket[0];
    for (int l = 1; l < m; ++l) s += d.ginv(i, l) * bracket[static_cast<std::size_t>(l)];
    d.spray.push_back(0.25 * s);
  }
  d.N = JetMatrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) d.N(i, j) = d.spray[static_cast<std::size_t>(i)].derivative(m + j);
  d.Nv = d.N.values();

  d.y = Vec(m);
  d.Fy = Vec(m);
  d.Fx = Vec(m);
  d.G = Vec(m);
  d.G_lower = Vec(m);
  for (int i = 0; i < m; ++i) {
    d.y(i) = point.y[static_cast<std::size_t>(i)];
    d.Fy(i) = d.fy[static_cast<std::size_t>(i)].value();
    d.Fx(i) = d.f.derivative(i).value();
    d.G(i) = d.spray[static_cast<std::size_t>(i)].value();
  }
  // G_i = 1/4 (y^j [F^2]_{y^i x^j} - [F^2]_{x^i}), which equals g_il G^l.
  for (int i = 0; i < m; ++i) d.G_lower(i) = 0.25 * bracket[static_cast<std::size_t>(i)].value();
  d.deltaF = d.Fx - d.Nv.transpose() * d.Fy;
  return d;
}

FinslerData finsler_data(const MetricSpec& spec, const PhasePoint& point, const FinslerOptions& opt) {
  return finsler_from_f2(lift_f2(spec, point, 4), point, opt);
}

FinslerData finsler_data_on_indicatrix(const MetricSpec& spec, const PhasePoint& point, const FinslerOptions& opt) {
  const Jet at_u = lift_f2(spec, point, 4);
  if (!(at_u.value() > 0.0)) throw Error(ErrorCode::DomainError, spec.name + ": F^2 is not positive");
  const double s = std::sqrt(at_u.value());
  PhasePoint p = point;
  for (int i = 0; i < p.dim; ++i) p.y[static_cast<std::size_t>(i)] /= s;
  return finsler_from_f2(at_u.rescaled_fiber(p.dim, s, 2, phase_tag(p)), p, opt);
}

Mat fundamental_tensor(const MetricSpec& spec, const PhasePoint& point) { return finsler_data(spec, point).gv; }

std::vector<double> cartan_tensor(const MetricSpec& spec, const PhasePoint& point) {
  return finsler_data(spec, point).cartan;
}

SprayConnection spray_and_connection(const MetricSpec& spec, const PhasePoint& point) {
  const auto d = finsler_data(spec, point);
  return {d.G, d.Nv};
}

Eigen::MatrixXd horizontal_frame(const MetricSpec& spec, const PhasePoint& point) {
  const auto d = finsler_data(spec, point);
  const int m = d.m;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2 * m, 2 * m);
  M.block(m, 0, m, m) = d.Nv;
  return M;
}

Vec hilbert_form(const MetricSpec& spec, const PhasePoint& point) { return finsler_data(spec, point).Fy; }

}  // namespace fgbc
