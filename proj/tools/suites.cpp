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


#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "fgbc/gbc.hpp"
#include "fgbc/quadrature.hpp"
#include "fgbc/superalgebra.hpp"

namespace fgbc::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<PhasePoint> sample(const MetricSpec& spec, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PhasePoint> out;
  for (int n = 0; n < count; ++n) {
    PhasePoint p;
    p.dim = 2;
    if (spec.topology == Topology::Sphere) {
      p.chart = n % 2;
      const double rho = 1.3 * std::sqrt(unit(rng)), phi = 2 * kPi * unit(rng);
      p.x = {rho * std::cos(phi), rho * std::sin(phi), 0, 0};
    } else {
      p.x = {unit(rng), unit(rng), 0, 0};
    }
    const double th = 2 * kPi * unit(rng), len = 0.5 + 1.5 * unit(rng);
    p.y = {len * std::cos(th), len * std::sin(th), 0, 0};
    out.push_back(p);
  }
  return out;
}

struct Bundle {
  FinslerData fd;
  ChernData cd;
};

Bundle at(const MetricSpec& s, const PhasePoint& p) {
  Bundle b{finsler_data(s, p), {}};
  b.cd = chern_data(b.fd);
  return b;
}

SmForm t2_total(const Bundle& b) { return theorem2_term1(b.fd, b.cd, 1) + theorem2_term2(b.fd, b.cd); }

SmForm c1_total(const Bundle& b) {
  return corollary1_integrands(b.fd, b.cd, special_frame(b.fd, b.cd)).total();
}

CheckResult check(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), false, value <= tol, value, tol, std::move(detail)};
}

CheckResult skip(std::string name, std::string why) { return {std::move(name), true, true, 0.0, 0.0, std::move(why)}; }

CheckResult structure(const MetricSpec& s, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& p : sample(s, 64, seed)) {
    const auto b = at(s, p);
    const StructureResiduals r = structure_residuals(b.cd, b.fd);
    worst = std::max({worst, r.torsion, r.metricity});
  }
  return check("structure_residuals", worst, 1e-8, "torsion and almost-metricity, 64 points");
}

CheckResult flat_curvature(const MetricSpec& s, std::uint64_t seed) {
  if (s.name != "flat-t2" && s.family != MetricFamily::MinkowskiQuartic)
    return skip("minkowski_curvature", "metric is not locally Minkowskian");
  double worst = 0.0;
  for (const auto& p : sample(s, 32, seed))
    for (const auto& w : at(s, p).cd.curvature) worst = std::max(worst, w.max_abs());
  return check("minkowski_curvature", worst, 1e-10, "every curvature component, 32 points");
}

CheckResult homogeneity(const MetricSpec& s, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& p : sample(s, 8, seed)) {
    const auto b = at(s, p);
    const SmForm t = t2_total(b), c = c1_total(b);
    for (double lambda : {0.5, 3.0}) {
      PhasePoint q = p;
      q.y[0] *= lambda;
      q.y[1] *= lambda;
      const auto bq = at(s, q);
      worst = std::max({worst, (t - t2_total(bq)).max_abs(), (c - c1_total(bq)).max_abs()});
    }
  }
  return check("homogeneity", worst, 1e-10, "integrands at lambda y, lambda in {0.5, 3}");
}

CheckResult supertrace_oracle(const MetricSpec& s, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& p : sample(s, 16, seed)) {
    const auto b = at(s, p);
    const CurvatureParts parts = curvature_parts(b.cd);
    const NablaE ne = nabla_e(b.fd, b.cd);
    SuperData d;
    d.R = parts.R;
    d.P = parts.P;
    d.E = ne.E;
    d.W = ne.W;
    d.Fy = Eigen::VectorXd(b.fd.Fy);
    d.y = Eigen::VectorXd(b.fd.y);
    d.F = b.fd.F;
    const UpsilonXi ux = upsilon_xi(ne.E, ne.W, d.Fy, d.y, d.F);
    worst = std::max(worst, (g1_engine(d, 1, 1) - g1_contraction(parts.R, parts.P, ux, 1, 1)).max_abs());
    worst = std::max(worst, (theta_engine(parts.P, b.cd.varpi, 1) - theta_contraction(parts.P, b.cd.varpi, 1)).max_abs());
  }
  return check("supertrace_oracle", worst, 1e-12, "engine vs delta contraction, 16 points");
}

CheckResult imp_vanishing(const MetricSpec& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SmForm> theta;
  for (int e = 0; e < 4; ++e) theta.push_back(SmForm::generator(4, 0, u(rng)) + SmForm::generator(4, 1, u(rng)));
  double worst = 0.0;
  for (const auto& p : sample(s, 20, seed + 1)) {
    const auto fc = fiber_chart(p.chart, {p.x[0], p.x[1]}, 64);
    const SmForm on_m = fiber_integrate(
        s, [&](const FinslerData& fd) { return theorem2_term2_with(fd, chern_data(fd), theta); }, fc);
    worst = std::max(worst, on_m.max_abs());
  }
  return check("imp_vanishing", worst, 1e-8, "fibre integral against a constant matrix, 20 points");
}

CheckResult mq_fiber(const MetricSpec& s, std::uint64_t seed) {
  if (s.family != MetricFamily::Riemannian) return skip("mq_fiber", "Riemannian metrics only");
  double worst = 0.0;
  for (const auto& p : sample(s, 5, seed)) {
    const auto b = at(s, p);
    // K sqrt(det g) = g_1k Omega^k_2 (d_1, d_2) / sqrt(det g).
    double r = 0.0;
    for (int k = 0; k < 2; ++k) r += b.fd.gv(0, k) * b.cd.curvature[static_cast<std::size_t>(k * 2 + 1)][3u];
    const double expect = 2 * kPi * r / std::sqrt(b.fd.gv.determinant());
    worst = std::max(worst, std::abs(mq_fiber_check(s, p, 3.0, 8.0).form[3u] - expect));
  }
  return check("mq_fiber", worst, 1e-6, "fibrewise supertrace vs 2 pi K sqrt(g), 5 points");
}

CheckResult pipelines(const MetricSpec& s, std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& p : sample(s, 16, seed)) {
    const auto b = at(s, p);
    worst = std::max(worst, (t2_total(b) - c1_total(b)).max_abs());
  }
  return check("pipeline_equivalence", worst, 1e-8, "t2 vs c1 integrands, 16 points");
}

CheckResult berwald_gate(const MetricSpec& s, std::uint64_t seed) {
  double p_max = 0.0;
  for (const auto& p : sample(s, 16, seed)) p_max = std::max(p_max, at(s, p).cd.p_norm());
  if (s.is_berwald_family()) return check("berwald_gate", p_max, kBerwaldGate, "|P| over 16 points");
  const bool rejected = p_max > kBerwaldGate;
  return {"berwald_gate", false, rejected, p_max, kBerwaldGate, "non-Berwald metric must exceed the gate"};
}

}  // namespace

std::vector<CheckResult> verify_suites(const MetricSpec& spec, std::uint64_t seed) {
  if (spec.dim != 2) throw Error(ErrorCode::InvalidArgument, "verify: surfaces only");
  return {structure(spec, seed),        flat_curvature(spec, seed), homogeneity(spec, seed),
          supertrace_oracle(spec, seed), imp_vanishing(spec, seed), mq_fiber(spec, seed),
          pipelines(spec, seed),        berwald_gate(spec, seed)};
}

}  // namespace fgbc::cli
