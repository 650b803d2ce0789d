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

#include "fgbc/gbc.hpp"

#include <cmath>
#include <numbers>

#include "fgbc/error.hpp"
#include "fgbc/rules.hpp"
#include "fgbc/superalgebra.hpp"

namespace fgbc {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t at(int i, int j, int m) { return static_cast<std::size_t>(i * m + j); }

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int half_dim(const FinslerData& fd) {
  if (fd.m % 2 != 0) throw Error(ErrorCode::InvalidArgument, "GBC integrands need an even dimension");
  return fd.m / 2;
}

Eigen::VectorXd to_dynamic(const Vec& v) { return Eigen::VectorXd(v); }

// Largest coefficient outside the given degree.
double off_degree(const SmForm& f, int degree) {
  double r = 0.0;
  for (int d = 0; d <= f.generators(); ++d)
    if (d != degree) r = std::max(r, f.max_in_degree(d));
  return r;
}

void require_degree(const SmForm& f, int degree, const char* what) {
  if (off_degree(f, degree) > 1e-12 * std::max(1.0, f.max_abs()))
    throw Error(ErrorCode::DegreeMismatch, std::string(what) + ": assembled form is not of degree " +
                                               std::to_string(degree));
}

// Generator basis tangent to the indicatrix at y.
Eigen::MatrixXd fiber_tangent(const FinslerData& fd) {
  const int m = fd.m;
  Eigen::MatrixXd T(m, m - 1);
  if (m == 2) {
    const Eigen::Vector2d y(fd.y(0), fd.y(1));
    const Eigen::Vector2d jy(-y(1), y(0));
    const double c = (fd.Fy(0) * jy(0) + fd.Fy(1) * jy(1)) / fd.F;
    T.col(0) = jy - c * y;
    return T;
  }
  const Eigen::VectorXd fy = to_dynamic(fd.Fy);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(fy);
  const Eigen::MatrixXd Q = qr.householderQ();
  T = Q.rightCols(m - 1);
  Eigen::MatrixXd full(m, m);
  full.col(0) = to_dynamic(fd.y);
  full.rightCols(m - 1) = T;
  if (full.determinant() < 0) T.col(0) = -T.col(0);
  return T;
}

}  // namespace

Eigen::MatrixXd sm_pullback(const FinslerData& fd) {
  const int m = fd.m;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(2 * m, 2 * m - 1);
  const Eigen::MatrixXd T = fiber_tangent(fd);
  for (int k = 0; k < m; ++k) P(k, k) = 1.0;
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) P(m + i, k) = fd.Nv(i, k) - fd.y(i) * fd.Fx(k) / fd.F;
    for (int a = 0; a < m - 1; ++a) P(m + i, m + a) = T(i, a);
  }
  return P;
}

SmForm restrict_to_sm(const SmForm& form, const FinslerData& fd) {
  SmForm r = form.pullback(sm_pullback(fd));
  r.mark_fiber_only(form.fiber_only());
  return r;
}

NablaE nabla_e(const FinslerData& fd, const ChernData& /*cd*/) {
  const int m = fd.m, ngen = 2 * m;
  SmForm dlog(ngen);
  for (int i = 0; i < m; ++i) {
    dlog[1u << (m + i)] += fd.Fy(i) / fd.F;
    dlog[1u << i] += fd.deltaF(i) / fd.F;
  }
  NablaE r;
  r.E.assign(static_cast<std::size_t>(m), SmForm(ngen));
  r.W.assign(static_cast<std::size_t>(m), SmForm(ngen));
  for (int i = 0; i < m; ++i) {
    SmForm e = SmForm::generator(ngen, m + i, 1.0 / fd.F);
    e -= (fd.y(i) / fd.F) * dlog;
    r.E[static_cast<std::size_t>(i)] = e;
  }
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) r.W[static_cast<std::size_t>(i)] += fd.gv(i, k) * r.E[static_cast<std::size_t>(k)];
  return r;
}

std::vector<SmForm> nabla_hilbert_direct(const FinslerData& fd, const ChernData& cd) {
  const int m = fd.m;
  std::vector<SmForm> r;
  for (int i = 0; i < m; ++i) {
    SmForm w = differential(fd.fy[static_cast<std::size_t>(i)], fd);
    for (int k = 0; k < m; ++k) w -= fd.Fy(k) * cd.varpi[at(k, i, m)];
    r.push_back(w);
  }
  return r;
}

CurvatureParts curvature_parts(const ChernData& cd) {
  const int m = cd.m, ngen = 2 * m;
  const std::uint32_t dx_mask = (1u << m) - 1;
  CurvatureParts r;
  r.R.assign(cd.curvature.size(), SmForm(ngen));
  r.P.assign(cd.curvature.size(), SmForm(ngen));
  for (std::size_t s = 0; s < cd.curvature.size(); ++s)
    for (std::uint32_t mask = 0; mask < cd.curvature[s].size(); ++mask) {
      if (std::popcount(mask) != 2) continue;
      const int horizontal = std::popcount(mask & dx_mask);
      if (horizontal == 2) r.R[s][mask] = cd.curvature[s][mask];
      if (horizontal == 1) r.P[s][mask] = cd.curvature[s][mask];
    }
  return r;
}

SmForm theorem2_term1(const FinslerData& fd, const ChernData& cd, int k) {
  const int n = half_dim(fd);
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "theorem2_term1: k out of range");
  const CurvatureParts parts = curvature_parts(cd);
  const NablaE ne = nabla_e(fd, cd);
  const UpsilonXi ux = upsilon_xi(ne.E, ne.W, to_dynamic(fd.Fy), to_dynamic(fd.y), fd.F);
  const double c = binomial(2 * n, 2 * k) / (std::pow(2.0 * kPi, 2 * n) * factorial(2 * n));
  const SmForm raw = c * g1_contraction(parts.R, parts.P, ux, n, k);
  require_degree(raw, 4 * n - 1, "theorem2_term1");
  return restrict_to_sm(raw, fd);
}

SmForm theorem2_term2_with(const FinslerData& fd, const ChernData& cd, const std::vector<SmForm>& connection) {
  const int n = half_dim(fd);
  const CurvatureParts parts = curvature_parts(cd);
  std::vector<const std::vector<SmForm>*> f;
  for (int a = 0; a < 2 * n - 1; ++a) f.push_back(&parts.P);
  f.push_back(&connection);
  const double c = 1.0 / (std::pow(2.0 * kPi, 2 * n) * factorial(2 * n));
  SmForm raw = c * delta_contraction(f, fd.m);
  require_degree(raw, 4 * n - 1, "theorem2_term2");
  raw.mark_fiber_only();
  return restrict_to_sm(raw, fd);
}

SmForm theorem2_term2(const FinslerData& fd, const ChernData& cd) { return theorem2_term2_with(fd, cd, cd.varpi); }

SurfaceCurvature surface_curvature(const FinslerData& fd, const SpecialFrame& frame) {
  if (fd.m != 2) throw Error(ErrorCode::InvalidArgument, "surface_curvature: m must be 2");
  const SmForm w1 = restrict_to_sm(frame.coframe[0], fd), w2 = restrict_to_sm(frame.coframe[1], fd),
               w3 = restrict_to_sm(frame.omega3(), fd);
  Eigen::Matrix3d Q;
  for (int g = 0; g < 3; ++g) {
    Q(0, g) = w1[1u << g];
    Q(1, g) = w2[1u << g];
    Q(2, g) = w3[1u << g];
  }
  // Old generator g = sum_a Q^{-1}(g, a) omega^a.
  const Eigen::MatrixXd to_omega = Q.inverse();
  auto in_omega = [&](const SmForm& f) { return restrict_to_sm(f, fd).pullback(to_omega); };
  SurfaceCurvature r{};
  r.R1_12_2 = in_omega(frame.curv(1, 0))[mask_of({0, 1})];
  r.P1_11_1 = in_omega(frame.curv(0, 0))[mask_of({0, 2})];
  r.P2_11_1 = in_omega(frame.curv(0, 1))[mask_of({0, 2})];
  return r;
}

Corollary1Terms corollary1_integrands(const FinslerData& fd, const ChernData& /*cd*/, const SpecialFrame& frame) {
  if (fd.m != 2) throw Error(ErrorCode::InvalidArgument, "corollary1_integrands: m must be 2");
  const SurfaceCurvature sc = surface_curvature(fd, frame);
  const SmForm vol = wedge(wedge(restrict_to_sm(frame.coframe[0], fd), restrict_to_sm(frame.coframe[1], fd)),
                           restrict_to_sm(frame.omega3(), fd));
  const double norm = 1.0 / (4.0 * kPi * kPi);
  const double F = fd.F, sg = frame.sqrt_det_g;
  const double G1 = fd.G_lower(0), G2 = fd.G_lower(1);
  Corollary1Terms r;
  r.R1_12_2 = sc.R1_12_2;
  r.P1_11_1 = sc.P1_11_1;
  r.P2_11_1 = sc.P2_11_1;
  r.curvature = (norm * sc.R1_12_2) * vol;
  r.landsberg = (-norm * (G1 * fd.y(0) + G2 * fd.y(1)) / (F * F * F) * sc.P1_11_1) * vol;
  // (log F)_{x^i} is the full partial F_{x^i} / F.
  const double bracket = fd.Fy(1) / sg * (fd.Fx(0) / F - G1 / (F * F)) - fd.Fy(0) / sg * (fd.Fx(1) / F - G2 / (F * F));
  r.cartan = (norm * bracket * sc.P2_11_1) * vol;
  return r;
}

double unit_sphere_volume(int n) { return 2.0 * std::pow(kPi, n) / factorial(n - 1); }

SmForm berwald_integrand(const FinslerData& fd, const ChernData& cd, const SpecialFrame& frame, double gate) {
  const int n = half_dim(fd), m = fd.m;
  const double pn = cd.p_norm();
  if (pn > gate)
    throw Error(ErrorCode::NonBerwald, "berwald_integrand: Chern-Minkowski curvature " + std::to_string(pn) +
                                           " exceeds the Berwald gate");
  const std::vector<SmForm> sk = skew_curvature(frame.curvature, m);
  std::vector<SmForm> S(sk.size(), SmForm(2 * m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) S[at(a, b, m)] = sk[at(b, a, m)];
  SmForm form = pfaffian(S, m);
  for (int g = 0; g < m - 1; ++g) form = wedge(form, frame.conn(m - 1, g));
  form *= std::pow(-1.0 / (2.0 * kPi), n) / unit_sphere_volume(n);
  return restrict_to_sm(form, fd);
}

SmForm fiber_length_element(const FinslerData& fd, const SpecialFrame& frame) {
  if (fd.m != 2) throw Error(ErrorCode::InvalidArgument, "fiber_length_element: m must be 2");
  return restrict_to_sm(frame.conn(1, 0), fd);
}

double gaussian_fiber_integral(double T, double cutoff, int radial_nodes, int angular_nodes) {
  if (T <= 0 || cutoff <= 0) throw Error(ErrorCode::InvalidArgument, "gaussian_fiber_integral: T and cutoff must be positive");
  const Rule r = gauss_legendre(radial_nodes, 0.0, cutoff / T);
  double radial = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    const double rho = r.nodes[i];
    radial += r.weights[i] * T * T * std::exp(-T * T * rho * rho) * rho;
  }
  const Rule a = periodic_trapezoid(angular_nodes, 0.0, 2.0 * kPi);
  double angular = 0.0;
  for (double w : a.weights) angular += w;
  return radial * angular;
}

MqCheck mq_fiber_check(const MetricSpec& spec, const PhasePoint& base, double T, double cutoff) {
  if (spec.family != MetricFamily::Riemannian)
    throw Error(ErrorCode::InvalidArgument, "mq_fiber_check: Riemannian metrics only");
  if (spec.dim != 2) throw Error(ErrorCode::InvalidArgument, "mq_fiber_check: surfaces only");
  if (T <= 0 || cutoff <= 0) throw Error(ErrorCode::InvalidArgument, "mq_fiber_check: T and cutoff must be positive");
  MqCheck out;
  out.tail_bound = std::exp(-cutoff * cutoff);
  if (out.tail_bound > 1e-10)
    throw Error(ErrorCode::CutoffTooSmall, "mq_fiber_check: Gaussian tail bound " + std::to_string(out.tail_bound) +
                                               " above 1e-10");
  const int m = 2, ngen = 2 * m, top = ngen;
  PhasePoint p = base;
  p.y[0] = 1.0;
  p.y[1] = 0.0;
  const FinslerData fd = finsler_data(spec, p);
  const ChernData cd = chern_data(fd);
  // Orthonormal frame u = L^{-T} from g = L L^T, positively oriented.
  const Eigen::MatrixXd g = fd.gv;
  const Eigen::MatrixXd L = g.llt().matrixL();
  const Eigen::MatrixXd u = L.transpose().inverse(), v = L.transpose();
  const CurvatureParts parts = curvature_parts(cd);
  FormValuedOp A(m, ngen, top);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      // Omega_a^b = v^b_i R^i_j u^j_a, a 2-form in dx.
      SmForm omega(ngen);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) omega += (v(b, i) * u(j, a)) * parts.R[at(i, j, m)];
      const SuperOp op = wedge_contract(WedgeKind::Wedge, a, m) * wedge_contract(WedgeKind::Contract, b, m);
      A += FormValuedOp::term(-omega, op, top);
    }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  for (int a = 0; a < m; ++a)
    A += FormValuedOp::term(SmForm::generator(ngen, m + a, T), clifford(id.col(a), id, false), top);
  // exp(A) truncates at auxiliary degree ngen.
  FormValuedOp sum(m, ngen, top), power(m, ngen, top);
  power += FormValuedOp::term(SmForm::scalar(ngen, 1.0), SuperOp::identity(m), top);
  sum += power;
  for (int k = 1; k <= ngen; ++k) {
    power = power * A;
    FormValuedOp scaled(m, ngen, top);
    scaled += FormValuedOp::term(SmForm::scalar(ngen, 1.0 / factorial(k)), SuperOp::identity(m), top);
    sum += scaled * power;
  }
  const SmForm st = sum.supertrace();
  out.supertrace_top = st.top();
  // Fibre integration over (dy^1, dy^2): the y-dependence is the Gaussian only.
  const double mass = gaussian_fiber_integral(T, cutoff) / (T * T);
  out.form = SmForm(m);
  out.form[mask_of({0, 1})] = out.supertrace_top * mass;
  return out;
}

}  // namespace fgbc
