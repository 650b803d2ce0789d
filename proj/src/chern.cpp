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

#include "fgbc/chern.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace fgbc {

namespace {

std::size_t at(int i, int j, int m) { return static_cast<std::size_t>(i * m + j); }

// Horizontal derivative d/dx^k - N^l_k d/dy^l of an order >= 1 jet.
Jet delta_x(const Jet& f, const FinslerData& fd, int k) {
  const int m = fd.m;
  Jet r = f.derivative(k);
  for (int l = 0; l < m; ++l) r -= fd.N(l, k) * f.derivative(m + l);
  return r;
}


int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

SmForm differential(const Jet& f, const FinslerData& fd) {
  const int m = fd.m;
  SmForm w(2 * m);
  for (int k = 0; k < m; ++k) {
    double v = f.coeff(1 + k);
    for (int l = 0; l < m; ++l) v -= fd.Nv(l, k) * f.coeff(1 + m + l);
    w[1u << k] = v;
  }
  for (int l = 0; l < m; ++l) w[1u << (m + l)] = f.coeff(1 + m + l);
  return w;
}

double ChernData::p_norm() const {
  double r = 0.0;
  for (double p : P) r = std::max(r, std::abs(p));
  return r;
}

ChernData christoffel(const FinslerData& fd) {
  const int m = fd.m;
  ChernData cd;
  cd.m = m;
  // dg_ij / dx^k (horizontal), order 1.
  std::vector<Jet> dg(static_cast<std::size_t>(m * m * m));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        dg[cd.idx3(i, j, k)] = delta_x(fd.g(i, j), fd, k);
        dg[cd.idx3(j, i, k)] = dg[cd.idx3(i, j, k)];
      }
  cd.gamma_jets.resize(static_cast<std::size_t>(m * m * m));
  cd.Gamma.resize(cd.gamma_jets.size());
  cd.dGamma_dx.resize(static_cast<std::size_t>(m * m * m * m));
  cd.dGamma_dy.resize(cd.dGamma_dx.size());
  for (int j = 0; j < m; ++j)
    for (int k = j; k < m; ++k) {
      std::vector<Jet> lower;
      for (int l = 0; l < m; ++l) lower.push_back(dg[cd.idx3(l, j, k)] + dg[cd.idx3(l, k, j)] - dg[cd.idx3(j, k, l)]);
      for (int i = 0; i < m; ++i) {
        Jet s = fd.ginv(i, 0).truncated(1) * lower[0];
        for (int l = 1; l < m; ++l) s += fd.ginv(i, l).truncated(1) * lower[static_cast<std::size_t>(l)];
        s *= 0.5;
        cd.gamma_jets[cd.idx3(i, j, k)] = s;
        cd.gamma_jets[cd.idx3(i, k, j)] = s;
      }
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Jet& g = cd.gamma_jets[cd.idx3(i, j, k)];
        cd.Gamma[cd.idx3(i, j, k)] = g.value();
        for (int l = 0; l < m; ++l) {
          cd.dGamma_dx[cd.idx4(i, j, k, l)] = g.coeff(1 + l);
          cd.dGamma_dy[cd.idx4(i, j, k, l)] = g.coeff(1 + m + l);
        }
      }
  return cd;
}

void curvature_split(ChernData& cd, const FinslerData& fd, const CurvatureOptions& opt) {
  const int m = cd.m;
  const int n = 2 * m;
  // Coordinate coframe (dx, dy): varpi and d varpi.
  std::vector<SmForm> w(static_cast<std::size_t>(m * m), SmForm(n));
  std::vector<SmForm> dw(static_cast<std::size_t>(m * m), SmForm(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SmForm& a = w[at(i, j, m)];
      SmForm& da = dw[at(i, j, m)];
      for (int k = 0; k < m; ++k) {
        a[1u << k] = cd.gamma(i, j, k);
        for (int v = 0; v < m; ++v) {
          if (v != k) da[(1u << v) | (1u << k)] += wedge_sign(1u << v, 1u << k) * cd.dGamma_dx[cd.idx4(i, j, k, v)];
          da[(1u << (m + v)) | (1u << k)] += wedge_sign(1u << (m + v), 1u << k) * cd.dGamma_dy[cd.idx4(i, j, k, v)];
        }
      }
    }
  // dy^l = dy-hat^l - N^l_p dx^p.
  Eigen::MatrixXd sub = Eigen::MatrixXd::Identity(n, n);
  for (int l = 0; l < m; ++l)
    for (int p = 0; p < m; ++p) sub(m + l, p) = -fd.Nv(l, p);

  cd.varpi.assign(static_cast<std::size_t>(m * m), SmForm(n));
  cd.curvature.assign(static_cast<std::size_t>(m * m), SmForm(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SmForm om = dw[at(i, j, m)];
      for (int k = 0; k < m; ++k) om += wedge(w[at(i, k, m)], w[at(k, j, m)]);
      cd.curvature[at(i, j, m)] = om.pullback(sub);
      cd.varpi[at(i, j, m)] = w[at(i, j, m)].pullback(sub);
    }

  cd.R.assign(static_cast<std::size_t>(m * m * m * m), 0.0);
  cd.P.assign(cd.R.size(), 0.0);
  cd.yy_block = 0.0;
  cd.p_crosscheck = 0.0;
  const std::uint32_t ymask = ((1u << m) - 1u) << m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const SmForm& om = cd.curvature[at(i, j, m)];
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          if (k != l) cd.R[cd.idx4(i, j, k, l)] = wedge_sign(1u << k, 1u << l) * om[(1u << k) | (1u << l)];
          const double p = fd.F * om[(1u << k) | (1u << (m + l))];
          cd.P[cd.idx4(i, j, k, l)] = p;
          cd.p_crosscheck = std::max(cd.p_crosscheck, std::abs(p + fd.F * cd.dGamma_dy[cd.idx4(i, j, k, l)]));
        }
      for (std::uint32_t mask = 0; mask < om.size(); ++mask)
        if (std::popcount(mask) == 2 && (mask & ~ymask) == 0u) cd.yy_block = std::max(cd.yy_block, std::abs(om[mask]));
    }
  if (cd.yy_block > opt.yy_tolerance)
    throw Error(ErrorCode::ConventionFault, "curvature: dy-hat ^ dy-hat block does not vanish (" +
                                                std::to_string(cd.yy_block) + ")");
}

ChernData chern_data(const FinslerData& fd, const CurvatureOptions& opt) {
  ChernData cd = christoffel(fd);
  curvature_split(cd, fd, opt);
  return cd;
}

StructureResiduals structure_residuals(const ChernData& cd, const FinslerData& fd) {
  const int m = cd.m;
  const int n = 2 * m;
  StructureResiduals r;
  std::vector<SmForm> w(static_cast<std::size_t>(m * m), SmForm(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) w[at(i, j, m)][1u << k] = cd.gamma(i, j, k);
  // 0 = dx^j ^ varpi^i_j
  for (int i = 0; i < m; ++i) {
    SmForm t(n);
    for (int j = 0; j < m; ++j) t += wedge(SmForm::generator(n, j), w[at(i, j, m)]);
    r.torsion = std::max(r.torsion, t.max_abs());
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) r.torsion = std::max(r.torsion, std::abs(cd.gamma(i, j, k) - cd.gamma(i, k, j)));
  }
  // dg_ij = g_ik varpi^k_j + g_jk varpi^k_i + 2 A_ijk dy-hat^k / F
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      SmForm res = differential(fd.g(i, j), fd);
      for (int k = 0; k < m; ++k) {
        res -= fd.gv(i, k) * w[at(k, j, m)];
        res -= fd.gv(j, k) * w[at(k, i, m)];
        res[1u << (m + k)] -= 2.0 * fd.A(i, j, k) / fd.F;
      }
      r.metricity = std::max(r.metricity, res.max_abs());
    }
  return r;
}

SpecialFrame special_frame(const FinslerData& fd, const ChernData& cd) {
  const int m = fd.m;
  const int n = 2 * m;
  SpecialFrame sf;
  sf.m = m;
  const auto yv = phase_variables(fd.point, 1);
  const Jet F = fd.f.truncated(1);
  std::vector<std::vector<Jet>> e(static_cast<std::size_t>(m));  // e[a][i]
  auto gdot = [&](const std::vector<Jet>& a, const std::vector<Jet>& b) {
    Jet s = 0.0 * F;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s += fd.g(i, j).truncated(1) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    return s;
  };
  auto& last = e[static_cast<std::size_t>(m - 1)];
  for (int i = 0; i < m; ++i) last.push_back(yv[static_cast<std::size_t>(m + i)] / F);
  const Jet detg = m == 2 ? fd.g(0, 0).truncated(1) * fd.g(1, 1).truncated(1) - square(fd.g(0, 1).truncated(1))
                          : Jet::constant(F.layout(), 1, fd.gv.determinant());
  sf.sqrt_det_g = std::sqrt(detg.value());
  if (m == 2) {
    const Jet sq = sqrt(detg);
    e[0] = {fd.fy[1].truncated(1) / sq, -(fd.fy[0].truncated(1) / sq)};
  } else {
    int filled = 0;
    for (int seed = 0; seed < m && filled < m - 1; ++seed) {
      std::vector<Jet> v;
      for (int i = 0; i < m; ++i) v.push_back(Jet::constant(F.layout(), 1, i == seed ? 1.0 : 0.0) + 0.0 * F);
      auto project_out = [&](const std::vector<Jet>& b) {
        const Jet c = gdot(v, b);
        for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] -= c * b[static_cast<std::size_t>(i)];
      };
      project_out(last);
      for (int a = 0; a < filled; ++a) project_out(e[static_cast<std::size_t>(a)]);
      const Jet nrm2 = gdot(v, v);
      if (nrm2.value() < 1e-6 * fd.gv(seed, seed)) continue;  // collinear seed, take the next one
      const Jet inv = 1.0 / sqrt(nrm2);
      for (auto& c : v) c = c * inv;
      e[static_cast<std::size_t>(filled++)] = v;
    }
    if (filled != m - 1) throw Error(ErrorCode::InvalidArgument, "special_frame: Gram-Schmidt failed to span");
  }
  sf.u = Mat(m, m);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) sf.u(i, a) = e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].value();
  if (sf.u.determinant() < 0) {
    for (auto& c : e[0]) c = -c;
    sf.u.col(0) = -sf.u.col(0);
  }
  sf.v = sf.u.inverse();
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) sf.u_jets.push_back(e[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]);

  sf.coframe.assign(static_cast<std::size_t>(m), SmForm(n));
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) sf.coframe[static_cast<std::size_t>(a)][1u << i] = sf.v(a, i);

  // nabla e_a = (du_a^i + varpi^i_j u_a^j) d_i
  std::vector<SmForm> nab(static_cast<std::size_t>(m * m), SmForm(n));  // [a*m+i]
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < m; ++i) {
      SmForm t = differential(sf.u_jets[at(a, i, m)], fd);
      for (int j = 0; j < m; ++j) t += sf.u(j, a) * cd.varpi[at(i, j, m)];
      nab[at(a, i, m)] = t;
    }
  sf.connection.assign(static_cast<std::size_t>(m * m), SmForm(n));
  sf.curvature.assign(static_cast<std::size_t>(m * m), SmForm(n));
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) {
      SmForm c(n), o(n);
      for (int i = 0; i < m; ++i) {
        c += sf.v(b, i) * nab[at(a, i, m)];
        for (int j = 0; j < m; ++j) o += (sf.v(b, i) * sf.u(j, a)) * cd.curvature[at(i, j, m)];
      }
      sf.connection[at(b, a, m)] = c;
      sf.curvature[at(b, a, m)] = o;
    }
  return sf;
}

std::vector<SmForm> skew_curvature(const std::vector<SmForm>& curvature, int m) {
  std::vector<SmForm> s(curvature.size());
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a) s[at(b, a, m)] = 0.5 * (curvature[at(b, a, m)] - curvature[at(a, b, m)]);
  return s;
}

double pfaffian(const Eigen::MatrixXd& S) {
  const auto d = S.rows();
  if (d != S.cols() || d % 2 != 0 || d == 0) throw Error(ErrorCode::InvalidArgument, "pfaffian: need an even square matrix");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S + S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorCode::NotAntisymmetric, "pfaffian: input is not antisymmetric");
  if (d == 2) return S(0, 1);
  if (d == 4) return S(0, 1) * S(2, 3) - S(0, 2) * S(1, 3) + S(0, 3) * S(1, 2);
  if (d > 6) throw Error(ErrorCode::InvalidArgument, "pfaffian: dimension above 6 is not supported");
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  double sum = 0.0;
  do {
    double t = permutation_sign(p);
    for (std::size_t k = 0; k < p.size(); k += 2) t *= S(p[k], p[k + 1]);
    sum += t;
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(d / 2);
  return sum / (std::pow(2.0, n) * factorial(n));
}

SmForm pfaffian(const std::vector<SmForm>& S, int dim) {
  if (dim % 2 != 0 || dim == 0) throw Error(ErrorCode::InvalidArgument, "pfaffian: odd dimension");
  if (dim > 6) throw Error(ErrorCode::InvalidArgument, "pfaffian: dimension above 6 is not supported");
  const int ngen = S.front().generators();
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const SmForm t = S[at(a, b, dim)] + S[at(b, a, dim)];
      if (t.max_abs() > 1e-12 * std::max(1.0, S[at(a, b, dim)].max_abs()))
        throw Error(ErrorCode::NotAntisymmetric, "pfaffian: form matrix is not antisymmetric");
    }
  std::vector<int> p(static_cast<std::size_t>(dim));
  std::iota(p.begin(), p.end(), 0);
  SmForm sum(ngen);
  do {
    SmForm t = SmForm::scalar(ngen, permutation_sign(p));
    for (std::size_t k = 0; k < p.size(); k += 2) t = wedge(t, S[at(p[k], p[k + 1], dim)]);
    sum += t;
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = dim / 2;
  return sum * (1.0 / (std::pow(2.0, n) * factorial(n)));
}

}  // namespace fgbc
