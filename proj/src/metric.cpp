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

#include "fgbc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fgbc {

namespace {

using Vec3J = std::array<Jet, 3>;

// Unit normal n(xi) and its chart derivatives for the sphere atlas.
struct SphereJets {
  Vec3J n;
  std::array<Vec3J, 2> dn;
};

SphereJets sphere_jets(std::span<const Jet> x, int chart) {
  const Jet& a = x[0];
  const Jet& b = x[1];
  const Jet r2 = a * a + b * b;
  const Jet inv = 1.0 / (1.0 + r2);
  const double sy = chart == 0 ? 1.0 : -1.0;  // sign of the second component
  const double sz = chart == 0 ? 1.0 : -1.0;  // n_z = sz (1 - r2) / (1 + r2)
  SphereJets s;
  s.n = {2.0 * a * inv, sy * 2.0 * b * inv, sz * (1.0 - r2) * inv};
  // d_i n = d_i v / s - v 2 xi_i / s^2 with v = (2a, 2 sy b, sz (1 - r2)).
  for (int i = 0; i < 2; ++i) {
    const Jet& xi = x[static_cast<std::size_t>(i)];
    const Jet w = 2.0 * xi * inv;
    s.dn[static_cast<std::size_t>(i)] = {
        (i == 0 ? 2.0 * inv : 0.0 * inv) - s.n[0] * w,
        (i == 1 ? sy * 2.0 * inv : 0.0 * inv) - s.n[1] * w,
        -sz * 2.0 * xi * inv - s.n[2] * w,
    };
  }
  return s;
}

// Per-thread memo of jets that depend on x only. Consecutive fibre nodes
// share x, so the last result is reused after comparing the x jets and the
// parameters; the copies are retagged to the current lift point.
template <std::size_t N, class F>
std::array<Jet, N> base_only(std::span<const Jet> x, int chart, const std::array<double, 3>& params, F compute) {
  struct Memo {
    bool valid = false;
    int chart = 0;
    std::array<double, 3> params{};
    Jet x0, x1;
    std::array<Jet, N> value;
  };
  thread_local Memo memo;
  auto same = [](const Jet& a, const Jet& b) {
    if (a.empty() || &a.layout() != &b.layout() || a.order() != b.order()) return false;
    const auto ca = a.coefficients(), cb = b.coefficients();
    return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
  };
  if (!(memo.valid && memo.chart == chart && memo.params == params && same(memo.x0, x[0]) && same(memo.x1, x[1]))) {
    memo.value = compute();
    memo.chart = chart;
    memo.params = params;
    memo.x0 = x[0];
    memo.x1 = x[1];
    memo.valid = true;
  }
  std::array<Jet, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = memo.value[i].retagged(x[0].base_tag());
  return out;
}

Jet quad_form(const Jet& a11, const Jet& a12, const Jet& a22, std::span<const Jet> y) {
  return a11 * y[0] * y[0] + 2.0 * a12 * y[0] * y[1] + a22 * y[1] * y[1];
}

MetricSpec base(const std::string& name, MetricFamily fam, Topology top, std::map<std::string, double> p) {
  MetricSpec s;
  s.name = name;
  s.family = fam;
  s.topology = top;
  s.dim = 2;
  s.params = std::move(p);
  return s;
}

struct RandersParts {
  Jet alpha, beta;
};

// alpha = c(x) |y|, beta = b_i(x) y^i.
RandersParts randers_parts(std::span<const Jet> x, std::span<const Jet> y, int chart, double r, double eps) {
  const auto cb = base_only<3>(x, chart, {r, eps, 0.0}, [&] {
    const SphereJets sj = sphere_jets(x, chart);
    const double k = eps * r / std::numbers::sqrt2;
    std::array<Jet, 3> out;
    out[0] = (2.0 * r) / (1.0 + x[0] * x[0] + x[1] * x[1]);
    for (int i = 0; i < 2; ++i) {
      const auto& d = sj.dn[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i + 1)] = k * (sj.n[0] * d[1] - sj.n[1] * d[0] + d[2]);
    }
    return out;
  });
  return {cb[0] * sqrt(y[0] * y[0] + y[1] * y[1]), cb[1] * y[0] + cb[2] * y[1]};
}

// Sampled strong-convexity scan: |beta(y)| < alpha(y) on both charts.
void randers_preflight(double r, double eps) {
  constexpr int kRadial = 8, kAngular = 16, kDirections = 16;
  const JetLayout& layout = JetLayout::for_vars(4);
  for (int chart = 0; chart < 2; ++chart)
    for (int a = 0; a <= kRadial; ++a)
      for (int b = 0; b < kAngular; ++b) {
        const double rho = 1.5 * a / kRadial, phi = 2 * std::numbers::pi * b / kAngular;
        const Jet x[2] = {Jet::constant(layout, 0, rho * std::cos(phi)), Jet::constant(layout, 0, rho * std::sin(phi))};
        for (int d = 0; d < kDirections; ++d) {
          const double th = 2 * std::numbers::pi * d / kDirections;
          const Jet y[2] = {Jet::constant(layout, 0, std::cos(th)), Jet::constant(layout, 0, std::sin(th))};
          const auto [alpha, beta] = randers_parts(x, y, chart, r, eps);
          if (!(std::abs(beta.value()) < alpha.value()))
            throw Error(ErrorCode::BadConfig, "randers-s2: |beta|_alpha >= 1, F is not strongly convex");
        }
      }
}

void bind(MetricSpec& s) {
  const auto& p = s.params;
  if (s.name == "flat-t2") {
    s.f2 = [](std::span<const Jet>, std::span<const Jet> y, int) { return y[0] * y[0] + y[1] * y[1]; };
  } else if (s.name == "conformal-t2") {
    const double k = p.at("kappa");
    s.f2 = [k](std::span<const Jet> x, std::span<const Jet> y, int) {
      constexpr double tau = 2 * std::numbers::pi;
      const Jet e = exp(2.0 * k * sin(tau * x[0]) * cos(tau * x[1]));
      return e * (y[0] * y[0] + y[1] * y[1]);
    };
  } else if (s.name == "quartic-t2") {
    const double c = p.at("c");
    // Strong convexity is checked where g is built, not here; c = 0 is
    // degenerate only on the coordinate axes.
    if (!(c > -2.0)) throw Error(ErrorCode::BadConfig, "quartic-t2: c must exceed -2 for F > 0");
    s.f2 = [c](std::span<const Jet>, std::span<const Jet> y, int) {
      const Jet a = y[0] * y[0], b = y[1] * y[1];
      return sqrt(a * a + c * a * b + b * b);
    };
  } else if (s.name == "round-s2") {
    const double r = p.at("r");
    if (!(r > 0.0)) throw Error(ErrorCode::BadConfig, "round-s2: r must be positive");
    s.f2 = [r](std::span<const Jet> x, std::span<const Jet> y, int chart) {
      const auto c = base_only<1>(x, chart, {r, 0.0, 0.0}, [&] {
        const Jet inv = 1.0 / (1.0 + x[0] * x[0] + x[1] * x[1]);
        return std::array<Jet, 1>{(4.0 * r * r) * inv * inv};
      });
      return c[0] * (y[0] * y[0] + y[1] * y[1]);
    };
  } else if (s.name == "ellipsoid-s2") {
    const double ax = p.at("a"), by = p.at("b"), cz = p.at("c");
    if (!(ax > 0 && by > 0 && cz > 0)) throw Error(ErrorCode::BadConfig, "ellipsoid-s2: semi-axes must be positive");
    s.f2 = [ax, by, cz](std::span<const Jet> x, std::span<const Jet> y, int chart) {
      const auto a = base_only<3>(x, chart, {ax, by, cz}, [&] {
        const SphereJets sj = sphere_jets(x, chart);
        const double w[3] = {ax * ax, by * by, cz * cz};
        auto dot = [&](int i, int j) {
          const auto& u = sj.dn[static_cast<std::size_t>(i)];
          const auto& v = sj.dn[static_cast<std::size_t>(j)];
          return w[0] * u[0] * v[0] + w[1] * u[1] * v[1] + w[2] * u[2] * v[2];
        };
        return std::array<Jet, 3>{dot(0, 0), dot(0, 1), dot(1, 1)};
      });
      return quad_form(a[0], a[1], a[2], y);
    };
  } else if (s.name == "randers-s2") {
    const double r = p.at("r"), eps = p.at("eps");
    if (!(r > 0.0)) throw Error(ErrorCode::BadConfig, "randers-s2: r must be positive");
    if (!(std::abs(eps) < 1.0)) throw Error(ErrorCode::BadConfig, "randers-s2: |eps| must be below 1");
    s.f2 = [r, eps](std::span<const Jet> x, std::span<const Jet> y, int chart) {
      const auto [alpha, beta] = randers_parts(x, y, chart, r, eps);
      return square(alpha + beta);
    };
    randers_preflight(r, eps);
  } else {
    throw Error(ErrorCode::UnknownMetric, "unknown metric '" + s.name + "'");
  }
}

}  // namespace

std::string_view to_string(MetricFamily f) noexcept {
  switch (f) {
    case MetricFamily::Riemannian: return "riemannian";
    case MetricFamily::Randers: return "randers";
    case MetricFamily::MinkowskiQuartic: return "minkowski-quartic";
    case MetricFamily::Custom: return "custom";
  }
  return "custom";
}

double MetricSpec::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::BadConfig, name + ": no parameter '" + key + "'");
  return it->second;
}

std::vector<std::string> catalog_names() {
  return {"flat-t2", "conformal-t2", "quartic-t2", "round-s2", "ellipsoid-s2", "randers-s2"};
}

MetricSpec make_metric(const std::string& name, const std::map<std::string, double>& overrides) {
  MetricSpec s;
  if (name == "flat-t2")
    s = base(name, MetricFamily::Riemannian, Topology::Torus, {});
  else if (name == "conformal-t2")
    s = base(name, MetricFamily::Riemannian, Topology::Torus, {{"kappa", 0.2}});
  else if (name == "quartic-t2")
    s = base(name, MetricFamily::MinkowskiQuartic, Topology::Torus, {{"c", 1.0}});
  else if (name == "round-s2")
    s = base(name, MetricFamily::Riemannian, Topology::Sphere, {{"r", 1.0}});
  else if (name == "ellipsoid-s2")
    s = base(name, MetricFamily::Riemannian, Topology::Sphere, {{"a", 1.0}, {"b", 1.0}, {"c", 1.5}});
  else if (name == "randers-s2")
    s = base(name, MetricFamily::Randers, Topology::Sphere, {{"eps", 0.1}, {"r", 1.0}});
  else
    throw Error(ErrorCode::UnknownMetric, "unknown metric '" + name + "'");
  for (const auto& [k, v] : overrides) {
    auto it = s.params.find(k);
    if (it == s.params.end()) throw Error(ErrorCode::BadConfig, name + ": unknown parameter '" + k + "'");
    if (!std::isfinite(v)) throw Error(ErrorCode::BadConfig, name + ": parameter '" + k + "' is not finite");
    it->second = v;
  }
  bind(s);
  return s;
}

Jet lift_f2(const MetricSpec& spec, const PhasePoint& point, int order) {
  const int chart = point.chart;
  return jet_lift([&spec, chart](std::span<const Jet> x, std::span<const Jet> y) { return spec.f2(x, y, chart); },
                  point, order);
}

double finsler_norm(const MetricSpec& spec, const PhasePoint& point) {
  const double f2 = lift_f2(spec, point, 0).value();
  if (!(f2 > 0.0)) throw Error(ErrorCode::DomainError, spec.name + ": F^2 is not positive");
  return std::sqrt(f2);
}

std::array<double, 3> sphere_point(int chart, const std::array<double, 2>& xi) {
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
  const double s = 1.0 / (1.0 + r2);
  const double sgn = chart == 0 ? 1.0 : -1.0;
  return {2 * xi[0] * s, sgn * 2 * xi[1] * s, sgn * (1 - r2) * s};
}

std::array<double, 2> sphere_coords(int chart, const std::array<double, 3>& n) {
  if (chart == 0) return {n[0] / (1 + n[2]), n[1] / (1 + n[2])};
  return {n[0] / (1 - n[2]), -n[1] / (1 - n[2])};
}

ChartTransition sphere_transition(int, const std::array<double, 2>& xi) {
  // Both directions are xi -> (xi1, -xi2) / |xi|^2.
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
  if (r2 == 0.0) throw Error(ErrorCode::InvalidArgument, "sphere_transition: chart origin has no image");
  const double r4 = r2 * r2;
  ChartTransition t;
  t.coords = {xi[0] / r2, -xi[1] / r2};
  t.jacobian = {{{1 / r2 - 2 * xi[0] * xi[0] / r4, -2 * xi[0] * xi[1] / r4},
                 {2 * xi[0] * xi[1] / r4, -1 / r2 + 2 * xi[1] * xi[1] / r4}}};
  return t;
}

}  // namespace fgbc
