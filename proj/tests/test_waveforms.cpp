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

#include <cmath>
#include <numbers>

#include "vrsim/error.hpp"
#include "vrsim/rng.hpp"
#include "vrsim/waveforms.hpp"

namespace vrsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(DecayingTone, StartsAtZero) {
  const auto w = make_decaying_tone(2.0, 1.0, 27880.0);
  EXPECT_EQ(eval_waveform(w, 0.0), 0.0);
}

TEST(DecayingTone, EnvelopeEndpointsAndMidpoint) {
  const auto w = make_decaying_tone(3.0, 2.0, 10.0);
  EXPECT_DOUBLE_EQ(envelope(w, 0.0), 3.0);
  EXPECT_DOUBLE_EQ(envelope(w, 1.0), 1.5);
  EXPECT_DOUBLE_EQ(envelope(w, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(envelope(w, 2.5), 0.0);
}

TEST(DecayingTone, MatchesClosedFormInsideWindow) {
  const auto w = make_decaying_tone(1.7, 0.8, 13.0);
  for (double t = 0.0; t <= 0.8; t += 0.01) {
    EXPECT_NEAR(eval_waveform(w, t), (-1.7 / 0.8 * t + 1.7) * std::sin(2 * kPi * 13.0 * t), 1e-12);
  }
}

TEST(DecayingTone, ZeroPastWindow) {
  EXPECT_EQ(eval_waveform(make_decaying_tone(2.0, 1.0, 5.0), 1.5), 0.0);
}

TEST(DecayingTone, RejectsBadParameters) {
  EXPECT_THROW(make_decaying_tone(1.0, 0.0, 5.0), Error);
  EXPECT_THROW(make_decaying_tone(1.0, 1.0, -5.0), Error);
  EXPECT_THROW(make_decaying_tone(-1.0, 1.0, 5.0), Error);
  try {
    make_decaying_tone(1.0, -1.0, 5.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDomain);
  }
}

TEST(SweptTone, FrequencyLandmarks) {
  const double f0 = 27850.0, fa = 27910.0, T = 0.4;
  const auto w = make_swept_tone(1.0, f0, fa, T);
  EXPECT_DOUBLE_EQ(instantaneous_frequency(w, 0.0), 0.5 * (f0 + fa));
  EXPECT_NEAR(instantaneous_frequency(w, T / 4), fa, 1e-9);
  EXPECT_NEAR(instantaneous_frequency(w, 3 * T / 4), f0, 1e-9);
}

TEST(SweptTone, FrequencyStaysInBoundsForRandomTimes) {
  const auto w = make_swept_tone(1.0, 400.0, 250.0, 0.7);
  CounterRng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double f = instantaneous_frequency(w, rng.uniform() * 50.0);
    EXPECT_GE(f, 250.0 - 1e-9);
    EXPECT_LE(f, 400.0 + 1e-9);
  }
}

TEST(SweptTone, CyclesAreTheIntegralOfFrequency) {
  const auto w = make_swept_tone(1.0, 100.0, 160.0, 0.5);
  // Central difference of the closed-form phase recovers f(t).
  for (double t = 0.01; t < 2.0; t += 0.137) {
    const double h = 1e-6;
    const double df = (accumulated_cycles(w, t + h) - accumulated_cycles(w, t - h)) / (2 * h);
    EXPECT_NEAR(df, instantaneous_frequency(w, t), 1e-5);
  }
  EXPECT_EQ(accumulated_cycles(w, 0.0), 0.0);
}

TEST(SweptTone, UsesCosineForm) {
  const auto w = make_swept_tone(2.0, 50.0, 80.0, 1.0);
  EXPECT_DOUBLE_EQ(eval_waveform(w, 0.0), 2.0);
  const double t = 0.3;
  EXPECT_NEAR(eval_waveform(w, t), 2.0 * std::cos(2 * kPi * accumulated_cycles(w, t)), 1e-12);
}

TEST(ConstantTone, QuarterPeriodPeak) {
  EXPECT_NEAR(eval_waveform(make_constant_tone(1.0, 10.0), 0.025), 1.0, 1e-15);
}

TEST(SinusoidCurrent, PeakAtQuarterPeriod) {
  const auto w = make_sinusoid_current(2.0, 0.5);
  EXPECT_NEAR(eval_waveform(w, 0.5), 2.0, 1e-15);
  EXPECT_FALSE(w.is_acoustic());
}

TEST(Waveform, EvaluationIsPure) {
  const auto w = make_swept_tone(1.3, 27860.0, 27900.0, 0.25, 0.3);
  for (double t : {0.0, 0.123456, 7.5, 1234.5}) {
    EXPECT_EQ(eval_waveform(w, t), eval_waveform(w, t));
  }
}

TEST(Waveform, LinearInAmplitude) {
  CounterRng rng(5);
  const Waveform kinds[] = {make_constant_tone(0.7, 33.0, 0.2), make_decaying_tone(0.7, 1.2, 40.0),
                            make_swept_tone(0.7, 20.0, 60.0, 0.9), make_sinusoid_current(0.7, 0.5)};
  for (const auto& w : kinds) {
    const auto w3 = scaled(w, 3.0);
    for (int i = 0; i < 200; ++i) {
      const double t = rng.uniform() * 3.0;
      EXPECT_NEAR(eval_waveform(w3, t), 3.0 * eval_waveform(w, t), 1e-12);
    }
  }
}

TEST(Waveform, PhaseShiftsConstantTone) {
  const auto w = make_constant_tone(1.0, 4.0, kPi / 2);
  EXPECT_NEAR(eval_waveform(w, 0.0), 1.0, 1e-15);
}

}  // namespace
}  // namespace vrsim
