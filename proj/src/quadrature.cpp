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

#include "fgbc/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fgbc/chern.hpp"
#include "fgbc/error.hpp"
#include "fgbc/gbc.hpp"

namespace fgbc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint32_t kThetaBit = 1u << 2;

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Polar angle from the cap centre of a chart point.
double cap_angle(const std::array<double, 2>& xi) { return 2.0 * std::atan(std::hypot(xi[0], xi[1])); }

std::vector<SmForm> theorem_terms(Theorem theorem, const FinslerData& fd, const ChernData& cd, const SpecialFrame* sf) {
  switch (theorem) {
    case Theorem::T2:
      return {theorem2_term1(fd, cd, 1), theorem2_term2(fd, cd)};
    case Theorem::C1: {
      const Corollary1Terms c = corollary1_integrands(fd, cd, *sf);
      return {c.curvature, c.landsberg, c.cartan};
    }
    case Theorem::Berwald:
      return {berwald_integrand(fd, cd, *sf)};
  }
  return {};
}

}  // namespace

std::vector<SmForm> theorem_integrands(Theorem theorem, const FinslerData& fd, const ChernData& cd) {
  if (theorem == Theorem::T2) return theorem_terms(theorem, fd, cd, nullptr);
  const SpecialFrame sf = special_frame(fd, cd);
  return theorem_terms(theorem, fd, cd, &sf);
}

std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::T2: return "t2";
    case Theorem::C1: return "c1";
    case Theorem::Berwald: return "berwald";
  }
  return "t2";
}

Theorem parse_theorem(std::string_view s) {
  if (s == "t2") return Theorem::T2;
  if (s == "c1") return Theorem::C1;
  if (s == "berwald") return Theorem::Berwald;
  throw Error(ErrorCode::BadConfig, "unknown theorem '" + std::string(s) + "' (expected t2, c1 or berwald)");
}

std::vector<std::string> term_labels(Theorem t) {
  switch (t) {
    case Theorem::T2: return {"t2.curvature_k1", "t2.minkowski_varpi"};
    case Theorem::C1: return {"c1.curvature", "c1.landsberg", "c1.cartan"};
    case Theorem::Berwald: return {"berwald.pfaffian"};
  }
  return {};
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

FiberChart fiber_chart(int chart, const std::array<double, 2>& x, int nodes) {
  FiberChart fc;
  fc.base.dim = 2;
  fc.base.chart = chart;
  fc.base.x[0] = x[0];
  fc.base.x[1] = x[1];
  fc.rule = periodic_trapezoid(nodes, 0.0, 2.0 * kPi);
  return fc;
}

PhasePoint fiber_point(const FiberChart& fc, std::size_t i) {
  PhasePoint p = fc.base;
  p.y[0] = std::cos(fc.rule.nodes[i]);
  p.y[1] = std::sin(fc.rule.nodes[i]);
  return p;
}

std::vector<SmForm> fiber_integrate(const MetricSpec& spec, const FiberField& field, const FiberChart& fc) {
  if (spec.dim != 2) throw Error(ErrorCode::InvalidArgument, "fiber_integrate: surfaces only");
  if (fc.orientation != 1 && fc.orientation != -1)
    throw Error(ErrorCode::InvalidArgument, "fiber_integrate: orientation must be +1 or -1");
  const std::size_t N = fc.rule.nodes.size();
  // samples[f][mask][node]
  std::vector<std::vector<std::vector<double>>> samples;
  bool has_fiber = false, has_other = false;
  for (std::size_t i = 0; i < N; ++i) {
    const FinslerData fd = finsler_data_on_indicatrix(spec, fiber_point(fc, i));
    const std::vector<SmForm> forms = field(fd);
    if (samples.empty()) samples.assign(forms.size(), std::vector<std::vector<double>>(4, std::vector<double>(N)));
    for (std::size_t f = 0; f < forms.size(); ++f) {
      const SmForm& w = forms[f];
      if (w.generators() != 3) throw Error(ErrorCode::InvalidArgument, "fiber_integrate: expected forms on SM");
      for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const double c = w[mask];
        if (!std::isfinite(c))
          throw Error(ErrorCode::NonFinite, "fiber_integrate: non-finite coefficient at theta = " +
                                                std::to_string(fc.rule.nodes[i]));
        if (mask & kThetaBit) {
          if (c != 0.0) has_fiber = true;
          samples[f][mask & ~kThetaBit][i] = fc.orientation * c * fc.rule.weights[i];
        } else if (c != 0.0) {
          has_other = true;
        }
      }
    }
  }
  if (!has_fiber && has_other)
    throw Error(ErrorCode::DegreeMismatch, "fiber_integrate: form has no component along the fibre");
  std::vector<SmForm> out;
  for (const auto& per_form : samples) {
    SmForm r(2);
    for (std::uint32_t mask = 0; mask < 4; ++mask) r[mask] = pairwise_sum(per_form[mask].data(), N);
    out.push_back(r);
  }
  return out;
}

SmForm fiber_integrate(const MetricSpec& spec, const std::function<SmForm(const FinslerData&)>& field,
                       const FiberChart& fc) {
  return fiber_integrate(spec, [&](const FinslerData& fd) { return std::vector<SmForm>{field(fd)}; }, fc).at(0);
}

double base_density(const SmForm& form_on_m) {
  if (form_on_m.fiber_only())
    throw Error(ErrorCode::FiberOnlyForm, "base integration of a fibre-only form; integrate along the fibre first");
  if (form_on_m.generators() != 2) throw Error(ErrorCode::InvalidArgument, "base_density: expected a form on M");
  return form_on_m[3u];
}

double partition_weight(const MetricSpec& spec, int /*chart*/, const std::array<double, 2>& xi) {
  if (spec.topology == Topology::Torus) return 1.0;
  return smooth_step((2.0 * kPi / 3.0 - cap_angle(xi)) / (kPi / 3.0));
}

std::vector<BaseNode> base_nodes(const MetricSpec& spec, int w, int h) {
  if (w < 1 || h < 1) throw Error(ErrorCode::BadConfig, "base grid must be positive");
  std::vector<BaseNode> nodes;
  if (spec.topology == Topology::Torus) {
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < w; ++i) nodes.push_back({0, {double(i) / w, double(j) / h}, 1.0 / (double(w) * h)});
    return nodes;
  }
  if (h % 2 != 0) throw Error(ErrorCode::BadConfig, "sphere base grid needs an even radial node count");
  Rule t = gauss_legendre(h / 2, 0.0, kPi / 3.0);
  const Rule t2 = gauss_legendre(h / 2, kPi / 3.0, 2.0 * kPi / 3.0);
  t.nodes.insert(t.nodes.end(), t2.nodes.begin(), t2.nodes.end());
  t.weights.insert(t.weights.end(), t2.weights.begin(), t2.weights.end());
  const Rule p = periodic_trapezoid(w, 0.0, 2.0 * kPi);
  for (int chart = 0; chart < 2; ++chart)
    for (std::size_t a = 0; a < t.nodes.size(); ++a) {
      const double rho = std::tan(0.5 * t.nodes[a]);
      const double drho = 0.5 / (std::cos(0.5 * t.nodes[a]) * std::cos(0.5 * t.nodes[a]));
      const double pu = smooth_step((2.0 * kPi / 3.0 - t.nodes[a]) / (kPi / 3.0));
      if (pu == 0.0) continue;
      for (std::size_t b = 0; b < p.nodes.size(); ++b)
        nodes.push_back({chart,
                         {rho * std::cos(p.nodes[b]), rho * std::sin(p.nodes[b])},
                         t.weights[a] * p.weights[b] * rho * drho * pu});
    }
  return nodes;
}

double base_integrate(const MetricSpec& spec, int w, int h,
                      const std::function<double(int, const std::array<double, 2>&)>& density) {
  const std::vector<BaseNode> nodes = base_nodes(spec, w, h);
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = nodes[i].weight * density(nodes[i].chart, nodes[i].x);
  return pairwise_sum(v.data(), v.size());
}

NodeResult integrate_node(const MetricSpec& spec, Theorem theorem, int chart, const std::array<double, 2>& x,
                          int fiber_nodes) {
  const FiberChart fc = fiber_chart(chart, x, fiber_nodes);
  const bool want_frame = theorem != Theorem::T2;
  double p_norm = 0.0;
  const FiberField field = [&](const FinslerData& fd) {
    const ChernData cd = chern_data(fd);
    p_norm = std::max(p_norm, cd.p_norm());
    if (!want_frame) return theorem_terms(theorem, fd, cd, nullptr);
    const SpecialFrame sf = special_frame(fd, cd);
    std::vector<SmForm> r = theorem_terms(theorem, fd, cd, &sf);
    r.push_back(fiber_length_element(fd, sf));
    return r;
  };
  const std::vector<SmForm> forms = fiber_integrate(spec, field, fc);
  NodeResult out;
  const std::size_t nterms = term_labels(theorem).size();
  for (std::size_t t = 0; t < nterms; ++t) out.terms.push_back(base_density(forms[t]));
  if (want_frame) out.fiber_volume = forms[nterms][0u];
  out.p_norm = p_norm;
  return out;
}

RungResult integrate_rung(const MetricSpec& spec, Theorem theorem, int fiber_nodes, int base_w, int base_h,
                          bool parallel) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<BaseNode> nodes = base_nodes(spec, base_w, base_h);
  const std::size_t nterms = term_labels(theorem).size();
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<NodeResult> results(nodes.size());
  std::vector<std::exception_ptr> errors(nodes.size());
  auto body = [&](std::ptrdiff_t i) {
    const auto s = static_cast<std::size_t>(i);
    try {
      results[s] = integrate_node(spec, theorem, nodes[s].chart, nodes[s].x, fiber_nodes);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  RungResult r;
  r.fiber_nodes = fiber_nodes;
  r.base_w = base_w;
  r.base_h = base_h;
  std::vector<double> v(nodes.size());
  for (std::size_t t = 0; t < nterms; ++t) {
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = nodes[i].weight * results[i].terms[t];
    r.terms.push_back(pairwise_sum(v.data(), v.size()));
  }
  r.chi = pairwise_sum(r.terms.data(), r.terms.size());
  r.residual = std::abs(r.chi - std::round(r.chi));
  r.fiber_volume_min = r.fiber_volume_max = results.empty() ? 0.0 : results[0].fiber_volume;
  for (const auto& n : results) {
    r.p_norm = std::max(r.p_norm, n.p_norm);
    r.fiber_volume_min = std::min(r.fiber_volume_min, n.fiber_volume);
    r.fiber_volume_max = std::max(r.fiber_volume_max, n.fiber_volume);
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double overlap_disagreement(const MetricSpec& spec, Theorem theorem, int fiber_nodes, int samples) {
  if (spec.topology != Topology::Sphere) return 0.0;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double phi = 2.0 * kPi * (s + 0.25) / samples;
    const std::array<double, 2> xi{std::cos(phi), std::sin(phi)};  // t = pi / 2
    const ChartTransition tr = sphere_transition(0, xi);
    const NodeResult a = integrate_node(spec, theorem, 0, xi, fiber_nodes);
    const NodeResult b = integrate_node(spec, theorem, 1, tr.coords, fiber_nodes);
    const auto& J = tr.jacobian;
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    for (std::size_t t = 0; t < a.terms.size(); ++t) worst = std::max(worst, std::abs(a.terms[t] - b.terms[t] * det));
  }
  return worst;
}

const std::string& convention_ledger() {
  static const std::string text =
      "fgbc convention ledger v1\n"
      "curvature: Omega = d varpi + varpi ^ varpi, stored [out * m + in]\n"
      "R^i_jkl: coefficient of dx^k ^ dx^l; P^i_jkl: F times coefficient of dx^k ^ delta y^l\n"
      "delta y^i = dy^i + N^i_j dx^j, N^i_j = dG^i / dy^j\n"
      "frame: e_m = y / F, surfaces e_1 = (F_y2, -F_y1) / sqrt(det g)\n"
      "omega^3 = omega_2^1; fibre length element -omega^3 = omega_1^2\n"
      "SM orientation: dx^1 ^ dx^2 ^ dtheta, theta counterclockwise in the chart\n"
      "fibre integral: int alpha ^ dtheta = alpha\n"
      "sphere charts: xi = (n_x, n_y) / (1 + n_z) and (n_x, -n_y) / (1 - n_z), both positively oriented\n"
      "torus: unit square, periodic\n";
  return text;
}

std::string ledger_hash() {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : convention_ledger()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ChiReport euler_characteristic(const MetricSpec& spec, Theorem theorem, const Scheme& scheme) {
  if (scheme.ladder < 1) throw Error(ErrorCode::BadConfig, "ladder must be at least 1");
  if (scheme.fiber_nodes < 4) throw Error(ErrorCode::BadConfig, "fiber node count must be at least 4");
#ifdef _OPENMP
  if (scheme.threads > 0) omp_set_num_threads(scheme.threads);
#endif
  const auto t0 = std::chrono::steady_clock::now();
  ChiReport rep;
  rep.metric = spec.name;
  rep.params = spec.params;
  rep.theorem = std::string(to_string(theorem));
  rep.scheme = scheme;
  rep.term_labels = term_labels(theorem);
  rep.ledger_hash = ledger_hash();
  for (int r = 0; r < scheme.ladder; ++r) {
    const int div = 1 << (scheme.ladder - 1 - r);
    const int fn = std::max(4, scheme.fiber_nodes / div);
    const int bw = std::max(4, scheme.base_w / div);
    int bh = std::max(4, scheme.base_h / div);
    if (spec.topology == Topology::Sphere && bh % 2) ++bh;
    rep.ladder.push_back(integrate_rung(spec, theorem, fn, bw, bh, scheme.parallel));
  }
  const RungResult& fine = rep.ladder.back();
  rep.terms = fine.terms;
  rep.chi = fine.chi;
  rep.nearest_integer = std::lround(fine.chi);
  rep.residual = fine.residual;
  rep.status = rep.residual <= 0.1 ? "converged" : "inconclusive";
  rep.p_norm = fine.p_norm;
  rep.fiber_volume_min = fine.fiber_volume_min;
  rep.fiber_volume_max = fine.fiber_volume_max;
  rep.overlap_disagreement = overlap_disagreement(spec, theorem, scheme.fiber_nodes);
  if (scheme.strict && rep.overlap_disagreement > 1e-8)
    throw Error(ErrorCode::ChartDisagreement, "chart overlap disagreement " + std::to_string(rep.overlap_disagreement));
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace fgbc
