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


#include <bit>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fgbc/gbc.hpp"
#include "fgbc/quadrature.hpp"
#include "oracles/classical.hpp"
#include "support.hpp"

namespace fgbc {
namespace {

using testing::make_point;
using testing::sample_points;
constexpr double kPi = std::numbers::pi;

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
  const SpecialFrame sf = special_frame(b.fd, b.cd);
  return corollary1_integrands(b.fd, b.cd, sf).total();
}

double max_diff(const SmForm& a, const SmForm& b) { return (a - b).max_abs(); }

// K sqrt(det a) for the conformal oracles.
double gauss_density(const oracle::Conformal2D& c) { return c.gauss_curvature() * c.a(); }

const std::vector<std::string> kSurfaces = {"flat-t2", "conformal-t2", "quartic-t2",
                                            "round-s2", "ellipsoid-s2", "randers-s2"};

TEST(NablaE, OrthogonalToHilbertForm) {
  for (const auto& name : kSurfaces) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 10, 11)) {
      const auto b = at(s, p);
      const NablaE ne = nabla_e(b.fd, b.cd);
      SmForm c(4);
      for (int i = 0; i < 2; ++i) c += ne.E[static_cast<std::size_t>(i)] * b.fd.Fy[static_cast<std::size_t>(i)];
      EXPECT_LT(c.max_abs(), 1e-12) << name;
    }
  }
}

TEST(NablaE, EuclideanIsProjectedDeltaY) {
  const auto s = make_metric("flat-t2");
  const auto p = make_point(0.3, 0.7, 0.6, 0.8);
  const auto b = at(s, p);
  const NablaE ne = nabla_e(b.fd, b.cd);
  const double y[2] = {0.6, 0.8};
  for (int i = 0; i < 2; ++i) {
    SmForm expect = SmForm::generator(4, 2 + i);
    for (int k = 0; k < 2; ++k) expect -= SmForm::generator(4, 2 + k, y[i] * y[k]);
    EXPECT_LT(max_diff(ne.E[static_cast<std::size_t>(i)], expect), 1e-14);
  }
}

TEST(NablaE, DualMatchesDirect) {
  for (const std::string name : {"randers-s2", "quartic-t2", "ellipsoid-s2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 10, 12)) {
      const auto b = at(s, p);
      const NablaE ne = nabla_e(b.fd, b.cd);
      const auto direct = nabla_hilbert_direct(b.fd, b.cd);
      for (int i = 0; i < 2; ++i)
        EXPECT_LT(max_diff(ne.W[static_cast<std::size_t>(i)], direct[static_cast<std::size_t>(i)]), 1e-9) << name;
    }
  }
}

TEST(CurvatureParts, SplitByMonomialType) {
  const auto s = make_metric("randers-s2");
  for (const auto& p : sample_points(s, 5, 13)) {
    const auto b = at(s, p);
    const CurvatureParts cp = curvature_parts(b.cd);
    for (std::size_t e = 0; e < cp.R.size(); ++e) {
      EXPECT_LT(max_diff(cp.R[e] + cp.P[e], b.cd.curvature[e]), 1e-15);
      for (std::uint32_t mask = 0; mask < 16; ++mask) {
        if (mask != 3u) EXPECT_EQ(cp.R[e][mask], 0.0);
        const bool mixed = std::popcount(mask & 3u) == 1 && std::popcount(mask & 12u) == 1;
        if (!mixed) EXPECT_EQ(cp.P[e][mask], 0.0);
      }
    }
  }
}

TEST(Theorem2, FirstTermIsGaussDensity) {
  const auto sphere = make_metric("round-s2");
  const auto torus = make_metric("conformal-t2");
  for (int which = 0; which < 2; ++which) {
    const auto& s = which ? torus : sphere;
    for (const auto& p : sample_points(s, 8, 14)) {
      const auto fc = fiber_chart(p.chart, {p.x[0], p.x[1]}, 32);
      const SmForm on_m = fiber_integrate(
          s, [](const FinslerData& fd) { return theorem2_term1(fd, chern_data(fd), 1); }, fc);
      const auto c = which ? oracle::conformal_torus(0.2, p.x[0], p.x[1]) : oracle::round_sphere(1.0, p.x[0], p.x[1]);
      EXPECT_NEAR(base_density(on_m), gauss_density(c) / (2 * kPi), 1e-10) << s.name;
    }
  }
}

TEST(Theorem2, FlatTermsVanish) {
  for (const std::string name : {"flat-t2", "quartic-t2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 10, 15)) {
      const auto b = at(s, p);
      EXPECT_LT(theorem2_term1(b.fd, b.cd, 1).max_abs(), 1e-10) << name;
      EXPECT_LT(theorem2_term2(b.fd, b.cd).max_abs(), 1e-10) << name;
    }
  }
}

TEST(Theorem2, DegreeOutOfRange) {
  const auto s = make_metric("round-s2");
  const auto b = at(s, make_point(0.2, 0.1, 1.0, 0.0));
  EXPECT_THROW(theorem2_term1(b.fd, b.cd, 0), Error);
  EXPECT_THROW(theorem2_term1(b.fd, b.cd, 2), Error);
}

TEST(Theorem2, SecondTermVanishesForBerwald) {
  for (const std::string name : {"round-s2", "ellipsoid-s2", "conformal-t2", "quartic-t2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 5, 16)) {
      const auto b = at(s, p);
      EXPECT_LT(theorem2_term2(b.fd, b.cd).max_abs(), 1e-10) << name;
    }
  }
}

TEST(Theorem2, SecondTermIsFiberOnlyAndNonzeroOnRanders) {
  const auto s = make_metric("randers-s2");
  double biggest = 0.0;
  for (const auto& p : sample_points(s, 10, 17)) {
    const auto b = at(s, p);
    const SmForm t = theorem2_term2(b.fd, b.cd);
    EXPECT_TRUE(t.fiber_only());
    biggest = std::max(biggest, t.max_abs());
  }
  EXPECT_GT(biggest, 1e-4);
}

TEST(Theorem2, ConstantConnectionIntegratesToZero) {
  const auto s = make_metric("randers-s2");
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SmForm> theta(4, SmForm(4));
  for (auto& t : theta) t = SmForm::generator(4, 0, u(rng)) + SmForm::generator(4, 1, u(rng));
  double pointwise = 0.0;
  for (const auto& p : sample_points(s, 20, 19)) {
    const auto b = at(s, p);
    pointwise = std::max(pointwise, theorem2_term2_with(b.fd, b.cd, theta).max_abs());
    const auto fc = fiber_chart(p.chart, {p.x[0], p.x[1]}, 64);
    const SmForm on_m = fiber_integrate(
        s, [&](const FinslerData& fd) { return theorem2_term2_with(fd, chern_data(fd), theta); }, fc);
    EXPECT_LT(on_m.max_abs(), 1e-8);
  }
  EXPECT_GT(pointwise, 1e-4);
}

TEST(Theorem2, OverlapAgreesAcrossCharts) {
  EXPECT_LT(overlap_disagreement(make_metric("randers-s2"), Theorem::T2, 64), 1e-8);
  EXPECT_LT(overlap_disagreement(make_metric("ellipsoid-s2"), Theorem::C1, 64), 1e-8);
}

TEST(Corollary1, RiemannianHasOnlyCurvatureTerm) {
  for (const std::string name : {"round-s2", "ellipsoid-s2", "conformal-t2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 8, 20)) {
      const auto b = at(s, p);
      const auto c = corollary1_integrands(b.fd, b.cd, special_frame(b.fd, b.cd));
      EXPECT_LT(c.landsberg.max_abs(), 1e-10) << name;
      EXPECT_LT(c.cartan.max_abs(), 1e-10) << name;
      EXPECT_GT(c.curvature.max_abs(), 1e-3) << name;
    }
  }
}

TEST(Corollary1, MinkowskiVanishes) {
  for (const std::string name : {"flat-t2", "quartic-t2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 8, 21)) {
      const auto b = at(s, p);
      EXPECT_LT(c1_total(b).max_abs(), 1e-10) << name;
    }
  }
}

TEST(Corollary1, RandersHasFinslerTerms) {
  const auto s = make_metric("randers-s2");
  double lands = 0.0, cart = 0.0;
  for (const auto& p : sample_points(s, 10, 22)) {
    const auto b = at(s, p);
    const auto c = corollary1_integrands(b.fd, b.cd, special_frame(b.fd, b.cd));
    lands = std::max(lands, c.landsberg.max_abs());
    cart = std::max(cart, c.cartan.max_abs());
  }
  EXPECT_GT(lands, 1e-5);
  EXPECT_GT(cart, 1e-5);
}

TEST(PipelineEquivalence, Theorem2MatchesCorollary1Pointwise) {
  for (const auto& name : kSurfaces) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 20, 23)) {
      const auto b = at(s, p);
      EXPECT_LT(max_diff(t2_total(b), c1_total(b)), 1e-8) << name;
    }
  }
}

TEST(Homogeneity, IntegrandsAreInvariantUnderFiberScaling) {
  for (const std::string name : {"randers-s2", "ellipsoid-s2", "quartic-t2"}) {
    const auto s = make_metric(name);
    for (const auto& p : sample_points(s, 5, 24)) {
      const auto b = at(s, p);
      for (double lambda : {0.5, 3.0}) {
        PhasePoint q = p;
        q.y[0] *= lambda;
        q.y[1] *= lambda;
        const auto bq = at(s, q);
        EXPECT_LT(max_diff(t2_total(b), t2_total(bq)), 1e-10) << name;
        EXPECT_LT(max_diff(c1_total(b), c1_total(bq)), 1e-10) << name;
      }
    }
  }
}

TEST(Berwald, GateRejectsRanders) {
  const auto s = make_metric("randers-s2");
  const auto b = at(s, make_point(0.3, -0.2, 0.4, 1.0));
  try {
    berwald_integrand(b.fd, b.cd, special_frame(b.fd, b.cd));
    FAIL() << "expected NonBerwald";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonBerwald);
  }
}

TEST(Berwald, QuarticIntegrandVanishes) {
  const auto s = make_metric("quartic-t2");
  for (const auto& p : sample_points(s, 10, 25)) {
    const auto b = at(s, p);
    EXPECT_LT(berwald_integrand(b.fd, b.cd, special_frame(b.fd, b.cd)).max_abs(), 1e-10);
  }
}

TEST(Berwald, RiemannianMatchesGaussDensity) {
  const auto s = make_metric("round-s2");
  for (const auto& p : sample_points(s, 6, 26)) {
    const auto fc = fiber_chart(p.chart, {p.x[0], p.x[1]}, 32);
    const SmForm on_m = fiber_integrate(
        s,
        [](const FinslerData& fd) {
          const ChernData cd = chern_data(fd);
          return berwald_integrand(fd, cd, special_frame(fd, cd));
        },
        fc);
    EXPECT_NEAR(base_density(on_m), gauss_density(oracle::round_sphere(1.0, p.x[0], p.x[1])) / (2 * kPi), 1e-10);
  }
}

TEST(Berwald, SphereVolumes) {
  EXPECT_NEAR(unit_sphere_volume(1), 2 * kPi, 1e-15);
  EXPECT_NEAR(unit_sphere_volume(2), 2 * kPi * kPi, 1e-14);
}

TEST(MathaiQuillen, GaussianMass) {
  EXPECT_NEAR(gaussian_fiber_integral(1.0, 8.0), kPi, 1e-12);
  EXPECT_NEAR(gaussian_fiber_integral(5.0, 8.0), kPi, 1e-12);
}

TEST(MathaiQuillen, RoundSphereFiberwise) {
  const auto s = make_metric("round-s2");
  for (const auto& p : sample_points(s, 5, 27)) {
    const MqCheck r = mq_fiber_check(s, p, 3.0, 8.0);
    const auto c = oracle::round_sphere(1.0, p.x[0], p.x[1]);
    EXPECT_NEAR(r.form[3u], 2 * kPi * gauss_density(c), 1e-6);
    EXPECT_LT(r.tail_bound, 1e-10);
  }
}

TEST(MathaiQuillen, FlatGivesZero) {
  const auto s = make_metric("flat-t2");
  for (const auto& p : sample_points(s, 3, 28)) EXPECT_LT(mq_fiber_check(s, p, 3.0, 8.0).form.max_abs(), 1e-12);
}

TEST(MathaiQuillen, RejectsShortCutoffAndFinsler) {
  const auto p = make_point(0.1, 0.2, 1.0, 0.0);
  try {
    mq_fiber_check(make_metric("round-s2"), p, 3.0, 2.0);
    FAIL() << "expected CutoffTooSmall";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CutoffTooSmall);
  }
  EXPECT_THROW(mq_fiber_check(make_metric("randers-s2"), p, 3.0, 8.0), Error);
}

}  // namespace
}  // namespace fgbc
