/*
 * Copyright 2026 The noncoll Authors
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

#include <gtest/gtest.h>

#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "noncoll/kernels.hpp"
#include "oracles.hpp"

namespace {

using noncoll::oracles::survival_oracle;

using noncoll::Chamber;
using noncoll::Error;
using noncoll::ErrorKind;
using noncoll::IntervalGeometry;
using noncoll::IntervalSeries;
using noncoll::KernelSelector;
using noncoll::OrderedConfiguration;

TEST(OrderedConfiguration, Validation) {
  EXPECT_NO_THROW(OrderedConfiguration(Chamber::TypeA, {-1.0, 0.0, 2.0}));
  EXPECT_THROW(OrderedConfiguration(Chamber::TypeA, {0.0, 0.0}), Error);
  EXPECT_THROW(OrderedConfiguration(Chamber::TypeA, {1.0, 0.5}), Error);
  EXPECT_THROW(OrderedConfiguration(Chamber::TypeC, {0.0, 1.0}), Error);
  EXPECT_THROW(OrderedConfiguration(Chamber::TypeA, {}), Error);
  try {
    OrderedConfiguration(Chamber::TypeC, {-0.5});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidConfiguration);
  }
}

TEST(HeatKernel, NormalizedAndSymmetric) {
  const auto q = noncoll::integrate_1d([](double y) { return noncoll::heat_kernel(0.7, y, 0.3); }, -15.0, 15.0);
  EXPECT_NEAR(q.value, 1.0, 1e-13);
  EXPECT_DOUBLE_EQ(noncoll::heat_kernel(0.7, 1.1, 0.3), noncoll::heat_kernel(0.7, 0.3, 1.1));
  EXPECT_THROW(noncoll::heat_kernel(0.0, 1.0, 0.0), Error);
}

TEST(HalfLineKernel, MethodOfImages) {
  for (double y : {0.01, 0.4, 2.0}) {
    const double ref = noncoll::heat_kernel(0.5, y, 0.8) - noncoll::heat_kernel(0.5, y, -0.8);
    EXPECT_NEAR(noncoll::absorbing_halfline(0.5, y, 0.8), ref, 1e-15);
  }
  // Near the wall the kernel is linear in y with full relative accuracy.
  const double tiny = noncoll::absorbing_halfline(1.0, 1e-12, 1.0);
  EXPECT_NEAR(tiny / 1e-12, 2 * noncoll::heat_kernel(1.0, 0.0, 1.0), 1e-9);
}

TEST(HalfLineKernel, MassIsSurvivalProbability) {
  const double s = 0.9, x = 0.6;
  const auto q = noncoll::integrate_1d([&](double y) { return noncoll::absorbing_halfline(s, y, x); }, 0.0, 20.0);
  EXPECT_NEAR(q.value, std::erf(x / std::sqrt(2 * s)), 1e-13);
}

TEST(IntervalKernel, SeriesAgree) {
  for (double t : {0.05, 0.3, 1.0, 4.0}) {
    for (auto [x, y] : {std::pair{0.2, 0.9}, {-0.5, 1.2}, {0.0, 0.0}}) {
      const double a = noncoll::absorbing_interval(t, y, x, -1.0, 1.5, IntervalSeries::Spectral);
      const double b = noncoll::absorbing_interval(t, y, x, -1.0, 1.5, IntervalSeries::Images);
      EXPECT_NEAR(a, b, 1e-13 * (1 + std::abs(b))) << t << " " << x << " " << y;
    }
  }
}

TEST(IntervalKernel, SymmetricVanishingAtWallsAndBelowFreeKernel) {
  const double t = 0.6;
  EXPECT_NEAR(noncoll::absorbing_interval(t, 0.3, -0.2, -1.0, 1.0), noncoll::absorbing_interval(t, -0.2, 0.3, -1.0, 1.0),
              1e-15);
  EXPECT_LT(noncoll::absorbing_interval(t, 1.0 - 1e-9, 0.0, -1.0, 1.0), 1e-8);
  EXPECT_LT(noncoll::absorbing_interval(t, 0.1, 0.0, -1.0, 1.0), noncoll::heat_kernel(t, 0.1, 0.0));
}

TEST(IntervalKernel, WideIntervalIsFreeKernel) {
  for (double half : {20.0, 40.0, 200.0}) {
    for (auto [x, y] : {std::pair{-0.1, 0.4}, {1.3, -0.7}}) {
      const double p = noncoll::absorbing_interval(1.0, y, x, -half, half);
      ASSERT_TRUE(std::isfinite(p));
      EXPECT_NEAR(p, noncoll::heat_kernel(1.0, y, x), 1e-15);
    }
  }
}

TEST(IntervalKernel, MassMatchesExitSeries) {
  // P(BM from 0 stays in (-a, b) up to t) by images of the normal CDF.
  const double t = 0.8, a = 0.7, b = 1.1, w = a + b;
  double ref = 0;
  for (int n = -20; n <= 20; ++n) {
    auto Phi = [&](double z) { return 0.5 * std::erfc(-z / std::sqrt(2 * t)); };
    ref += (Phi(b + 2 * n * w) - Phi(-a + 2 * n * w)) - (Phi(b + 2 * a + 2 * n * w) - Phi(-a + 2 * a + 2 * n * w));
  }
  const auto q = noncoll::integrate_1d([&](double y) { return noncoll::absorbing_interval(t, y, 0.0, -a, b); }, -a, b);
  EXPECT_NEAR(q.value, ref, 1e-13);
}

TEST(IntervalKernel, RejectsPointsOutside) {
  try {
    noncoll::absorbing_interval(1.0, 2.0, 0.0, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfInterval);
  }
}

TEST(IntervalGeometry, Validation) {
  EXPECT_THROW(IntervalGeometry::make(1.0, 1.0, 1.0), Error);
  EXPECT_THROW(IntervalGeometry::make(0.0, 1.0, 0.0), Error);
  EXPECT_DOUBLE_EQ(IntervalGeometry::make(-0.5, 2.0, 1.0).width(), 2.5);
}

TEST(KarlinMcGregor, TwoByTwoExplicit) {
  const OrderedConfiguration x(Chamber::TypeA, {-0.3, 0.4}), y(Chamber::TypeA, {0.1, 0.9});
  const double t = 0.5;
  auto p = [&](double b, double a) { return noncoll::heat_kernel(t, b, a); };
  const double ref = p(y[0], x[0]) * p(y[1], x[1]) - p(y[0], x[1]) * p(y[1], x[0]);
  EXPECT_NEAR(noncoll::km_determinant(t, y, x, KernelSelector::free()), ref, 1e-15);
  EXPECT_GT(ref, 0);
}

TEST(KarlinMcGregor, RestrictedBelowUnrestricted) {
  const OrderedConfiguration x(Chamber::TypeC, {0.2, 0.5, 0.9}), y(Chamber::TypeC, {0.3, 0.6, 1.0});
  const auto g = IntervalGeometry::make(0.0, 1.5, 1.0);
  const double half = noncoll::km_determinant(1.0, y, x, KernelSelector::half_line());
  const double box = noncoll::km_determinant(1.0, y, x, KernelSelector::interval(g));
  EXPECT_GT(box, 0);
  EXPECT_LT(box, half);
}

TEST(KarlinMcGregor, ArgumentChecks) {
  const OrderedConfiguration a(Chamber::TypeA, {-0.3, 0.4});
  const OrderedConfiguration c(Chamber::TypeC, {0.3, 0.4});
  const OrderedConfiguration a3(Chamber::TypeA, {-0.3, 0.4, 0.6});
  EXPECT_THROW(noncoll::km_determinant(1.0, a, c, KernelSelector::free()), Error);
  EXPECT_THROW(noncoll::km_determinant(1.0, a, a3, KernelSelector::free()), Error);
  EXPECT_THROW(noncoll::km_determinant(1.0, a, a, KernelSelector::half_line()), Error);
  const auto g = IntervalGeometry::make(-0.2, 1.0, 1.0);
  try {
    noncoll::km_determinant(1.0, a, a, KernelSelector::interval(g));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfInterval);
  }
  EXPECT_THROW(noncoll::km_determinant(0.0, a, a, KernelSelector::free()), Error);
}

TEST(SurvivalA, TwoParticlesIsErf) {
  const OrderedConfiguration x(Chamber::TypeA, {0.2, 1.0});
  EXPECT_NEAR(noncoll::survival_A(1.3, x), std::erf(0.8 / (2 * std::sqrt(1.3))), 1e-15);
  EXPECT_NEAR(noncoll::survival_A(1.0, OrderedConfiguration(Chamber::TypeA, {0.5})), 1.0, 1e-15);
}

TEST(SurvivalA, MatchesNestedQuadrature) {
  for (const std::vector<double>& x : {std::vector<double>{-0.4, 0.3}, {-0.5, 0.1, 0.9}, {0.0, 0.05, 0.12}}) {
    const double got = noncoll::survival_A(0.8, OrderedConfiguration(Chamber::TypeA, x));
    EXPECT_NEAR(got, survival_oracle(0.8, x, false), 1e-6) << x.size();
  }
}

TEST(SurvivalC, OneParticleIsErf) {
  EXPECT_NEAR(noncoll::survival_C(0.7, OrderedConfiguration(Chamber::TypeC, {0.4})), std::erf(0.4 / std::sqrt(1.4)),
              1e-15);
}

TEST(SurvivalC, MatchesNestedQuadrature) {
  for (const std::vector<double>& x : {std::vector<double>{0.3, 0.8}, {0.2, 0.6, 1.3}, {0.05, 0.1, 0.2}}) {
    const double got = noncoll::survival_C(1.1, OrderedConfiguration(Chamber::TypeC, x));
    EXPECT_NEAR(got, survival_oracle(1.1, x, true), 1e-6) << x.size();
  }
}

TEST(Survival, DecreasesInTime) {
  const OrderedConfiguration a(Chamber::TypeA, {-0.5, 0.1, 0.9});
  const OrderedConfiguration c(Chamber::TypeC, {0.2, 0.6, 1.3});
  double prev_a = 1, prev_c = 1;
  for (double s : {0.1, 0.5, 1.0, 3.0}) {
    const double va = noncoll::survival_A(s, a), vc = noncoll::survival_C(s, c);
    EXPECT_LT(va, prev_a);
    EXPECT_LT(vc, prev_c);
    EXPECT_LT(vc, va);
    prev_a = va;
    prev_c = vc;
  }
}

}  // namespace
