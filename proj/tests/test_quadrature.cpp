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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fgbc/gbc.hpp"
#include "fgbc/quadrature.hpp"
#include "fgbc/rules.hpp"
#include "oracles/classical.hpp"
#include "support.hpp"

namespace fgbc {
namespace {

constexpr double kPi = std::numbers::pi;

SmForm omega3_field(const FinslerData& fd) {
  const ChernData cd = chern_data(fd);
  return -fiber_length_element(fd, special_frame(fd, cd));
}

TEST(Rules, GaussLegendreIsExactForPolynomials) {
  const Rule r = gauss_legendre(6, 0.0, 2.0);
  for (int p = 0; p <= 11; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
    EXPECT_NEAR(s, std::pow(2.0, p + 1) / (p + 1), 1e-12 * std::pow(2.0, p + 1)) << p;
  }
}

TEST(Rules, PeriodicTrapezoidClosesExactly) {
  const Rule r = periodic_trapezoid(16, 0.3, 2 * kPi);
  double w = 0.0;
  for (double x : r.weights) w += x;
  EXPECT_NEAR(w, 2 * kPi, 1e-14);
  for (int k = 1; k < 16; ++k) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      c += r.weights[i] * std::cos(k * r.nodes[i]);
      s += r.weights[i] * std::sin(k * r.nodes[i]);
    }
    EXPECT_NEAR(c, 0.0, 1e-13) << k;
    EXPECT_NEAR(s, 0.0, 1e-13) << k;
  }
  EXPECT_THROW(periodic_trapezoid(0, 0.0, 1.0), Error);
}

TEST(Rules, PairwiseSumIsExactOnIntegers) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i);
  EXPECT_EQ(pairwise_sum(v.data(), v.size()), 500500.0);
  EXPECT_EQ(pairwise_sum(v.data(), 0), 0.0);
}

TEST(Fiber, ConstantDThetaIsExact) {
  const auto s = make_metric("randers-s2");
  const auto fc = fiber_chart(0, {0.2, 0.4}, 7);
  const SmForm r = fiber_integrate(s, [](const FinslerData&) { return SmForm::generator(3, 2, 1.5); }, fc);
  EXPECT_NEAR(r[0u], 3 * kPi, 1e-14);
  EXPECT_EQ(r[3u], 0.0);
}

TEST(Fiber, RoundSphereOmega3IsMinusTwoPi) {
  const auto s = make_metric("round-s2");
  for (const auto& p : testing::sample_points(s, 5, 31)) {
    const auto fc = fiber_chart(p.chart, {p.x[0], p.x[1]}, 32);
    EXPECT_NEAR(fiber_integrate(s, omega3_field, fc)[0u], -2 * kPi, 1e-12);
  }
}

TEST(Fiber, ReversedOrientationFlipsSign) {
  for (const std::string name : {"randers-s2", "ellipsoid-s2"}) {
    const auto s = make_metric(name);
    auto fc = fiber_chart(1, {0.3, -0.5}, 32);
    const auto field = [](const FinslerData& fd) {
      const ChernData cd = chern_data(fd);
      return std::vector<SmForm>{theorem2_term1(fd, cd, 1), omega3_field(fd)};
    };
    const auto a = fiber_integrate(s, field, fc);
    fc.orientation = -1;
    const auto b = fiber_integrate(s, field, fc);
    for (std::size_t f = 0; f < a.size(); ++f)
      for (std::uint32_t m = 0; m < 4; ++m) EXPECT_EQ(a[f][m], -b[f][m]) << name;
    EXPECT_GT(a[0].max_abs(), 1e-3);
  }
}

TEST(Fiber, RejectsBadFields) {
  const auto s = make_metric("round-s2");
  const auto fc = fiber_chart(0, {0.1, 0.1}, 8);
  try {
    fiber_integrate(s, [](const FinslerData&) { return SmForm::generator(3, 0); }, fc);
    FAIL() << "expected DegreeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
  try {
    fiber_integrate(s, [](const FinslerData&) { return SmForm::generator(3, 2, std::nan("")); }, fc);
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
  }
  SmForm f = wedge(SmForm::generator(2, 0), SmForm::generator(2, 1));
  f.mark_fiber_only();
  EXPECT_THROW(base_density(f), Error);
}

TEST(Fiber, QuarticVolumeIsSelfConvergent) {
  const auto s = make_metric("quartic-t2");
  const auto vol = [&](int n) {
    return -fiber_integrate(s, omega3_field, fiber_chart(0, {0.25, 0.5}, n))[0u];
  };
  const double v64 = vol(64), v128 = vol(128), v256 = vol(256);
  EXPECT_LT(std::abs(v128 - v64), 1e-9);
  EXPECT_LT(std::abs(v256 - v128), 1e-9);
  EXPECT_GT(std::abs(v256 - 2 * kPi), 1e-3);
}

TEST(Base, PartitionOfUnitySumsToOne) {
  const auto s = make_metric("round-s2");
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 0; n < 200; ++n) {
    const std::array<double, 2> xi{u(rng), u(rng)};
    const auto t = sphere_transition(0, xi);
    EXPECT_NEAR(partition_weight(s, 0, xi) + partition_weight(s, 1, t.coords), 1.0, 1e-12);
  }
  EXPECT_EQ(partition_weight(make_metric("flat-t2"), 0, {0.3, 0.3}), 1.0);
}

TEST(Base, SphereAreaAndTorusVolume) {
  const auto s = make_metric("round-s2");
  const double area = base_integrate(s, 24, 24, [](int, const std::array<double, 2>& x) {
    return oracle::round_sphere(1.0, x[0], x[1]).a();
  });
  EXPECT_NEAR(area, 4 * kPi, 1e-12);
  EXPECT_NEAR(base_integrate(make_metric("flat-t2"), 8, 8, [](int, const std::array<double, 2>&) { return 1.0; }),
              1.0, 1e-15);
  EXPECT_THROW(base_nodes(s, 8, 7), Error);
}

TEST(Base, EllipsoidClassicalGaussBonnet) {
  const auto s = make_metric("ellipsoid-s2");
  const double total = base_integrate(s, 32, 32, [](int chart, const std::array<double, 2>& x) {
    const auto g = oracle::ellipsoid_metric(1.0, 1.0, 1.5, chart, x[0], x[1]);
    const double dA = std::sqrt(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
    return oracle::ellipsoid_curvature(1.0, 1.0, 1.5, oracle::stereo(chart, x[0], x[1])) * dA;
  });
  EXPECT_NEAR(total / (2 * kPi), 2.0, 1e-4);
}

TEST(Chi, SmallGrids) {
  struct Case {
    const char* metric;
    Theorem theorem;
    double chi, tol;
  };
  for (const Case& c : {Case{"round-s2", Theorem::C1, 2.0, 1e-6}, Case{"round-s2", Theorem::T2, 2.0, 1e-6},
                        Case{"flat-t2", Theorem::T2, 0.0, 1e-12}, Case{"conformal-t2", Theorem::T2, 0.0, 1e-6},
                        Case{"quartic-t2", Theorem::Berwald, 0.0, 1e-12}, Case{"randers-s2", Theorem::T2, 2.0, 1e-4},
                        Case{"randers-s2", Theorem::C1, 2.0, 1e-4}}) {
    const RungResult r = integrate_rung(make_metric(c.metric), c.theorem, 16, 12, 12, true);
    EXPECT_NEAR(r.chi, c.chi, c.tol) << c.metric << " " << to_string(c.theorem);
  }
}

TEST(Chi, SerialAndParallelAgree) {
  const auto s = make_metric("randers-s2");
  const RungResult a = integrate_rung(s, Theorem::T2, 8, 6, 6, true);
  const RungResult b = integrate_rung(s, Theorem::T2, 8, 6, 6, false);
  EXPECT_EQ(a.chi, b.chi);
  EXPECT_EQ(a.terms, b.terms);
}

TEST(Chi, ReportLadderAndStatus) {
  Scheme sc;
  sc.fiber_nodes = 16;
  sc.base_w = sc.base_h = 12;
  sc.ladder = 2;
  const ChiReport r = euler_characteristic(make_metric("randers-s2"), Theorem::T2, sc);
  ASSERT_EQ(r.ladder.size(), 2u);
  EXPECT_EQ(r.ladder[0].fiber_nodes, 8);
  EXPECT_EQ(r.ladder[1].base_w, 12);
  EXPECT_EQ(r.nearest_integer, 2);
  EXPECT_EQ(r.status, "converged");
  EXPECT_EQ(r.term_labels, term_labels(Theorem::T2));
  EXPECT_NE(r.terms[1], 0.0);
  EXPECT_LT(r.overlap_disagreement, 1e-8);
  EXPECT_EQ(r.ledger_hash.size(), 16u);
}

TEST(Chi, BerwaldGateOnRanders) {
  Scheme sc;
  sc.fiber_nodes = 8;
  sc.base_w = sc.base_h = 4;
  sc.ladder = 1;
  try {
    euler_characteristic(make_metric("randers-s2"), Theorem::Berwald, sc);
    FAIL() << "expected NonBerwald";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonBerwald);
  }
}

TEST(Chi, TheoremNames) {
  EXPECT_EQ(parse_theorem("c1"), Theorem::C1);
  EXPECT_EQ(to_string(parse_theorem("berwald")), "berwald");
  EXPECT_THROW(parse_theorem("t3"), Error);
}

}  // namespace
}  // namespace fgbc
