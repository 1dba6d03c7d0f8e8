/*
 * Copyright 2026 The vrsim Authors
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vrsim/error.hpp"
#include "vrsim/perception.hpp"
#include "vrsim/rng.hpp"
#include "vrsim/sensing.hpp"

namespace vrsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Walk, Examples) {
  auto r = real_walk_distance({2.25, 1.0, 0.0});
  EXPECT_EQ(r.overshoot, 0.0);
  r = real_walk_distance({2.25, 0.8, 0.0});
  EXPECT_DOUBLE_EQ(r.real_distance, 2.8125);
  EXPECT_DOUBLE_EQ(r.overshoot, 0.5625);
  EXPECT_NEAR(real_walk_distance({2.25, 0.9, 0.0}).overshoot, 0.25, 1e-15);
}

TEST(Walk, ZeroGainRejected) {
  try {
    real_walk_distance({2.25, 0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDomain);
    EXPECT_EQ(e.field(), "gain");
  }
  EXPECT_THROW(real_walk_distance({2.25, 1.1, 0.0}), Error);
}

TEST(Walk, OvershootStrictlyDecreasingInGain) {
  double previous = INFINITY;
  for (double k = 0.05; k <= 1.0; k += 0.05) {
    const double o = real_walk_distance({2.25, k, 0.0}).overshoot;
    EXPECT_LT(o, previous);
    previous = o;
  }
}

TEST(SpeedJnd, Examples) {
  ThresholdSet th;
  EXPECT_FALSE(is_speed_attack_detectable(0.27, 1.35, th));
  EXPECT_FALSE(is_speed_attack_detectable(0.0, 1.35, th));
  EXPECT_TRUE(is_speed_attack_detectable(0.5, 1.35, th));
  EXPECT_THROW(is_speed_attack_detectable(0.1, 0.0, th), Error);
}

TEST(HandJnd, Examples) {
  ThresholdSet th;
  EXPECT_FALSE(is_hand_offset_detectable(0.05, th));
  EXPECT_FALSE(is_hand_offset_detectable(0.0, th));
  EXPECT_TRUE(is_hand_offset_detectable(0.09, th));
}

TEST(Jnd, Monotone) {
  ThresholdSet th;
  bool seen_speed = false, seen_hand = false;
  for (double x = 0.0; x < 1.0; x += 0.001) {
    const bool s = is_speed_attack_detectable(x, 1.35, th);
    const bool h = is_hand_offset_detectable(x, th);
    if (seen_speed) {
      EXPECT_TRUE(s);
    }
    if (seen_hand) {
      EXPECT_TRUE(h);
    }
    seen_speed |= s;
    seen_hand |= h;
  }
  EXPECT_TRUE(seen_speed && seen_hand);
}

TEST(ArmIk, FullyExtended) {
  const auto p = arm_ik({0.55, 0.0}, 0.3, 0.25);
  EXPECT_NEAR(p.shoulder, 0.0, 1e-12);
  EXPECT_NEAR(p.elbow, 0.0, 1e-6);
}

TEST(ArmIk, EquilateralElbow) {
  // |target| = L with L1 = L2 = L closes an equilateral triangle.
  const double L = 0.3;
  const auto p = arm_ik({0.0, L}, L, L);
  EXPECT_NEAR(p.elbow, 2 * kPi / 3, 1e-12);
  EXPECT_NEAR((p.wrist - Eigen::Vector2d(0.0, L)).norm(), 0.0, 1e-12);
}

TEST(ArmIk, RightAngleElbow) {
  const double L = 0.3;
  const auto p = arm_ik({L, L}, L, L);
  EXPECT_NEAR(p.elbow, kPi / 2, 1e-12);
  EXPECT_NEAR(p.shoulder, 0.0, 1e-12);
}

TEST(ArmIk, UnreachableThrows) {
  try {
    arm_ik({1.0, 0.0}, 0.3, 0.25);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kReach);
  }
  EXPECT_THROW(arm_ik({0.01, 0.0}, 0.3, 0.25), Error);
}

TEST(ArmIk, ForwardKinematicsRoundTrip) {
  CounterRng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.06 + rng.uniform() * 0.48;
    const double a = rng.uniform() * 2 * kPi;
    const Eigen::Vector2d target(r * std::cos(a), r * std::sin(a));
    const auto p = arm_ik(target, 0.3, 0.25);
    EXPECT_LT((arm_fk(p.shoulder, p.elbow, 0.3, 0.25) - target).norm(), 1e-9);
    EXPECT_GE(p.elbow, 0.0);
  }
}

TEST(ArmIk, JointDeltasGrowWithOffset) {
  const Eigen::Vector2d base(0.3, 0.25);
  const auto p0 = arm_ik(base, 0.3, 0.25);
  double previous = 0.0;
  for (double d : {0.01, 0.02, 0.05, 0.09}) {
    const auto p = arm_ik(base + Eigen::Vector2d(d, 0.0), 0.3, 0.25);
    const double delta = std::abs(p.shoulder - p0.shoulder) + std::abs(p.elbow - p0.elbow);
    EXPECT_GT(delta, previous);
    previous = delta;
  }
}

SampleSeries series(std::vector<double> v, double rate = 72.0) {
  SampleSeries s;
  s.dt = 1.0 / rate;
  s.values = std::move(v);
  return s;
}

TEST(Triples, ConstantDisplayHasNoFlow) {
  const auto c = dizziness_triples(series({3, 3, 3, 3}), series({1, 1, 1, 1}), series({20, 20, 20, 20}));
  ASSERT_EQ(c.frames.size(), 3u);
  for (const auto& f : c.frames) {
    EXPECT_EQ(f.h_flow, 0.0);
    EXPECT_EQ(f.v_flow, 0.0);
    EXPECT_EQ(f.disparity, 20.0);
  }
}

TEST(Triples, SinusoidPeakFlow) {
  const double A = 40.0, f = 0.5, F = 72.0;
  std::vector<double> x, y, d;
  for (int i = 0; i < 720; ++i) {
    x.push_back(A * std::sin(2 * kPi * f * i / F));
    y.push_back(0.0);
    d.push_back(20.0);
  }
  const auto c = dizziness_triples(series(x), series(y), series(d));
  double peak = 0.0;
  for (const auto& fr : c.frames) peak = std::max(peak, std::abs(fr.h_flow));
  EXPECT_NEAR(peak, 2 * kPi * f * A / F, 0.05 * 2 * kPi * f * A / F);
}

TEST(Triples, VerticalMotionOnly) {
  const auto c = dizziness_triples(series({0, 0, 0}), series({0, 1, 3}), series({1, 1, 1}));
  for (const auto& f : c.frames) EXPECT_EQ(f.h_flow, 0.0);
  EXPECT_EQ(c.frames[1].v_flow, 2.0);
}

TEST(Triples, LengthMismatch) {
  try {
    dizziness_triples(series({0, 0, 0}), series({0, 0}), series({0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kShape);
  }
}

DizzinessCloud random_cloud(std::uint64_t seed, std::size_t n) {
  CounterRng rng(seed);
  DizzinessCloud c;
  for (std::size_t i = 0; i < n; ++i) {
    c.frames.push_back({static_cast<std::int64_t>(i), rng.normal(), rng.normal(), 20.0 + rng.normal()});
  }
  return c;
}

TEST(Dispersion, ZeroForConstantCloud) {
  DizzinessCloud c;
  for (int i = 0; i < 10; ++i) c.frames.push_back({i, 0.0, 0.0, 0.0});
  EXPECT_EQ(dispersion_score(c), 0.0);
  for (auto& f : c.frames) f = {f.frame, 1.5, -2.0, 7.0};
  EXPECT_EQ(dispersion_score(c), 0.0);
  c.frames[3].v_flow = -1.0;
  EXPECT_GT(dispersion_score(c), 0.0);
}

TEST(Dispersion, Homogeneous) {
  auto c = random_cloud(1, 500);
  const double s = dispersion_score(c);
  for (auto& f : c.frames) {
    f.h_flow *= 3.0;
    f.v_flow *= 3.0;
    f.disparity *= 3.0;
  }
  EXPECT_NEAR(dispersion_score(c), 3.0 * s, 1e-9 * s);
}

TEST(Dispersion, PermutationInvariant) {
  auto c = random_cloud(2, 400);
  const double s = dispersion_score(c);
  std::reverse(c.frames.begin(), c.frames.end());
  std::rotate(c.frames.begin(), c.frames.begin() + 97, c.frames.end());
  EXPECT_NEAR(dispersion_score(c), s, 1e-12 * s);
}

TEST(Dispersion, MatchesWeightedFormula) {
  DizzinessCloud c;
  c.frames = {{1, 1.0, 0.0, 10.0}, {2, -1.0, 2.0, 14.0}};
  // var h = 1, var v = 1, var d = 4
  EXPECT_NEAR(dispersion_score(c), std::sqrt(2.0 * 1 + 1.0 * 1 + 1.0 * 4), 1e-15);
  DispersionWeights inv;
  inv.inverse_disparity = true;
  const double dv = 0.25 * std::pow(1.0 / 10 - 1.0 / 14, 2);
  EXPECT_NEAR(dispersion_score(c, inv), std::sqrt(2.0 + 1.0 + dv), 1e-15);
  EXPECT_THROW(dispersion_score(DizzinessCloud{}), Error);
}

TEST(Display, OrderingAcrossSeeds) {
  DisplayModel m;
  const auto ipd = ipd_jitter_series(make_sinusoid_current(2.0, 0.5), HallSpec{}, m.frame_rate, 30.0);
  const auto still = stationary_display(m, 30.0);
  const auto score = [](const DisplayTrack& t) { return dispersion_score(dizziness_triples(t.x, t.y, t.depth)); };
  const double s_attack = score(apply_ipd_jitter(still, ipd, m));
  EXPECT_EQ(score(still), 0.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double s_play = score(gameplay_display(m, 30.0, seed));
    EXPECT_GT(s_play, 0.0);
    EXPECT_LT(s_play, s_attack);
  }
}

TEST(Display, GameplayFlowHasConfiguredSpread) {
  DisplayModel m;
  const auto t = gameplay_display(m, 600.0, 4);
  const auto c = dizziness_triples(t.x, t.y, t.depth);
  double sh = 0.0, sv = 0.0;
  for (const auto& f : c.frames) {
    sh += f.h_flow * f.h_flow;
    sv += f.v_flow * f.v_flow;
  }
  EXPECT_NEAR(std::sqrt(sh / c.frames.size()), m.gameplay_h_flow, 0.1);
  EXPECT_NEAR(std::sqrt(sv / c.frames.size()), m.gameplay_v_flow, 0.05);
}

TEST(Display, JitterShiftsDisparityByFullBias) {
  DisplayModel m;
  const auto still = stationary_display(m, 1.0);
  SampleSeries bias = still.x;
  std::fill(bias.values.begin(), bias.values.end(), 2.0);
  const auto j = apply_ipd_jitter(still, bias, m);
  EXPECT_DOUBLE_EQ(j.depth.values[5], m.base_disparity + 20.0);
  EXPECT_DOUBLE_EQ(j.x.values[5], 10.0);
  bias.values.pop_back();
  EXPECT_THROW(apply_ipd_jitter(still, bias, m), Error);
}

TEST(CloudCsv, RoundTrip) {
  const auto c = random_cloud(3, 50);
  std::stringstream ss;
  write_csv(ss, c);
  const auto back = read_dizziness_csv(ss);
  ASSERT_EQ(back.frames.size(), c.frames.size());
  EXPECT_NEAR(dispersion_score(back), dispersion_score(c), 1e-7);
  std::stringstream bad("frame,h_flow,v_flow,disparity\n1,2,3\n");
  EXPECT_THROW(read_dizziness_csv(bad), Error);
}

}  // namespace
}  // namespace vrsim
