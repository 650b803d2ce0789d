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

#include <random>

#include <gtest/gtest.h>

#include "fgbc/forms.hpp"

namespace fgbc {
namespace {

SmForm random_form(int ngen, int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  SmForm f(ngen);
  for (std::uint32_t m = 0; m < f.size(); ++m)
    if (std::popcount(m) == degree) f[m] = u(rng);
  return f;
}

TEST(SmForm, GeneratorsAnticommute) {
  const auto a = SmForm::generator(4, 0), b = SmForm::generator(4, 2);
  const SmForm ab = wedge(a, b), ba = wedge(b, a);
  EXPECT_EQ(ab[mask_of({0, 2})], 1.0);
  EXPECT_EQ(ba[mask_of({0, 2})], -1.0);
  EXPECT_EQ(wedge(a, a).max_abs(), 0.0);
}

TEST(SmForm, OddFormsSquareToZero) {
  std::mt19937_64 rng(1);
  for (int d : {1, 3}) {
    const SmForm f = random_form(6, d, rng);
    EXPECT_LT(wedge(f, f).max_abs(), 1e-15);
  }
}

TEST(SmForm, DegreesAddAndGradedCommutativity) {
  std::mt19937_64 rng(2);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      const SmForm a = random_form(6, p, rng), b = random_form(6, q, rng);
      const SmForm ab = wedge(a, b), ba = wedge(b, a);
      if (ab.max_abs() > 0) {
        EXPECT_EQ(ab.degree(1e-300), p + q);
      }
      const double s = (p * q) % 2 ? -1.0 : 1.0;
      EXPECT_LT((ab - s * ba).max_abs(), 1e-14);
    }
}

TEST(SmForm, WedgeIsAssociative) {
  std::mt19937_64 rng(3);
  SmForm a = random_form(5, 1, rng) + random_form(5, 2, rng);
  SmForm b = random_form(5, 1, rng), c = random_form(5, 2, rng);
  EXPECT_LT((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs(), 1e-14);
}

TEST(SmForm, PullbackOfTopFormIsDeterminant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd P(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) P(i, j) = u(rng);
  SmForm top(3);
  top[7] = 2.5;
  EXPECT_NEAR(top.pullback(P).top(), 2.5 * P.determinant(), 1e-14);
}

TEST(SmForm, PullbackIsLinearAndMultiplicative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd P(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) P(i, j) = u(rng);
  const SmForm a = random_form(4, 1, rng), b = random_form(4, 2, rng), c = random_form(4, 1, rng);
  EXPECT_LT(((a + 2.0 * c).pullback(P) - (a.pullback(P) + 2.0 * c.pullback(P))).max_abs(), 1e-14);
  EXPECT_LT((wedge(a, b).pullback(P) - wedge(a.pullback(P), b.pullback(P))).max_abs(), 1e-14);
}

TEST(SmForm, FiberOnlyFlagPropagates) {
  SmForm a = SmForm::generator(3, 0);
  a.mark_fiber_only();
  EXPECT_TRUE(wedge(a, SmForm::generator(3, 1)).fiber_only());
  EXPECT_TRUE((SmForm(3) + a).fiber_only());
}

}  // namespace
}  // namespace fgbc
