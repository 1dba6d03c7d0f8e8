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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vrsim/cases.hpp"
#include "vrsim/config.hpp"
#include "vrsim/error.hpp"

namespace vrsim {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("vrsim_harness_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Error parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(Errc::kDomain, "none");
}

TEST(Config, Defaults) {
  const auto cfg = parse_config(R"({"case":"trajectory"})");
  EXPECT_EQ(cfg.kind, CaseKind::kTrajectory);
  EXPECT_EQ(cfg.imu.sample_rate, 100.0);
  EXPECT_EQ(cfg.thresholds.walking_speed, 1.35);
  EXPECT_EQ(cfg.thresholds.speed_ratio_jnd, 0.2);
  EXPECT_EQ(cfg.thresholds.hand_offset_jnd, 0.09);
  EXPECT_EQ(cfg.trajectory.walk.gain, 0.8);
  const auto d = parse_config(R"({"case":"dizziness"})");
  EXPECT_EQ(d.duration, 30.0);
  EXPECT_EQ(d.detector.window, 1024u);
}

TEST(Config, FileRoundTripsThroughEcho) {
  const auto cfg = load_config(VRSIM_SCENARIOS "/case2_avatar.json");
  EXPECT_EQ(cfg.kind, CaseKind::kAvatar);
  const auto again = parse_config(config_to_json(cfg));
  EXPECT_EQ(config_to_json(again), config_to_json(cfg));
}

TEST(Config, OutOfDomainNamesField) {
  const auto e = parse_error(R"({"case":"trajectory","walk":{"gain":0}})");
  EXPECT_EQ(e.code(), Errc::kValidation);
  EXPECT_EQ(e.field(), "walk.gain");
}

TEST(Config, UnknownKeyIsListed) {
  const auto e = parse_error(R"({"case":"avatar","avatar":{"band":[1,2],"bogus":1}})");
  EXPECT_EQ(e.code(), Errc::kValidation);
  EXPECT_NE(std::string(e.what()).find("avatar.bogus"), std::string::npos) << e.what();
  EXPECT_EQ(parse_error(R"({"case":"teleport"})").field(), "case");
  EXPECT_EQ(parse_error(R"({"duration":3})").code(), Errc::kValidation);
  EXPECT_EQ(parse_error("{").code(), Errc::kValidation);
}

TEST(Config, MissingFileIsIo) {
  try {
    load_config("/nonexistent/vrsim.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
}

TEST(Plan, SeedsAndNames) {
  const auto plan = parse_plan(R"({"seed":10,"scenarios":[{"case":"trajectory"},{"case":"avatar","seed":4}]})");
  ASSERT_EQ(plan.scenarios.size(), 2u);
  EXPECT_EQ(plan.scenarios[0].seed, 10u);
  EXPECT_EQ(plan.scenarios[1].seed, 4u);
  EXPECT_EQ(plan.scenarios[0].name, "trajectory-0");
  EXPECT_THROW(parse_plan(R"({"scenarios":[{"case":"avatar","name":"a"},{"case":"avatar","name":"a"}]})"), Error);
  EXPECT_EQ(parse_plan(R"({"case":"avatar"})").scenarios.size(), 1u);
}

TEST(Case1, DriftAndWalk) {
  const auto r = run_case1(parse_config(R"({"case":"trajectory","seed":1})"));
  ASSERT_TRUE(r.trajectory);
  const auto& m = *r.trajectory;
  EXPECT_GE(m.sweep_ratio, 1.5);
  EXPECT_DOUBLE_EQ(m.walk.overshoot, 0.5625);
  EXPECT_TRUE(m.overshoot_within_band);
  EXPECT_FALSE(m.detectable);
  EXPECT_TRUE(m.alias.observed > 4.999 && m.alias.observed < 5.001);
  EXPECT_GT(m.theta_T, 0.0);
}

TEST(Case1, NoAttackNoOvershoot) {
  const auto r = run_case1(parse_config(R"({"case":"trajectory","trajectory":{"omega_o":0},"walk":{"gain":1}})"));
  ASSERT_TRUE(r.trajectory);
  EXPECT_EQ(r.trajectory->walk.overshoot, 0.0);
  EXPECT_EQ(r.trajectory->theta_T, 0.0);
  EXPECT_FALSE(r.trajectory->detectable);
}

TEST(Case2, BypassAndHandOffset) {
  const auto r = run_case2(load_config(VRSIM_SCENARIOS "/case2_avatar.json"));
  ASSERT_TRUE(r.avatar);
  const auto& m = *r.avatar;
  ASSERT_EQ(m.candidates.size(), 2u);
  EXPECT_DOUBLE_EQ(m.candidates[0].frequency, 27120.0);
  EXPECT_DOUBLE_EQ(m.candidates[1].frequency, 27150.0);
  EXPECT_TRUE(m.feasible);
  EXPECT_GE(m.bias_ratio, 5.0);
  EXPECT_LE(m.residual_ratio, 0.1);
  EXPECT_LT(m.hand_offset, 0.09);
  EXPECT_FALSE(m.detectable);
}

TEST(Case2, EmptyBandReportsNoAttack) {
  const auto r = run_case2(parse_config(R"({"case":"avatar","avatar":{"band":[27100,27110]}})"));
  EXPECT_EQ(r.status, "no_feasible_attack");
  ASSERT_TRUE(r.avatar);
  EXPECT_TRUE(r.avatar->candidates.empty());
}

TEST(Case3, JitterAndOrdering) {
  const auto r = run_case3(parse_config(R"({"case":"dizziness","seed":3})"));
  ASSERT_TRUE(r.dizziness);
  const auto& m = *r.dizziness;
  EXPECT_NEAR(m.ipd_bias_peak, 10.0, 1e-9);
  EXPECT_NEAR(m.jitter_frequency, 0.5, 1.0 / 30.0);
  EXPECT_EQ(m.score_stationary, 0.0);
  EXPECT_TRUE(m.ordering_holds);
  EXPECT_LT(m.score_gameplay, m.score_attack);
}

TEST(Case3, ZeroCurrentZeroScore) {
  const auto r = run_case3(parse_config(R"({"case":"dizziness","dizziness":{"current_amplitude":0}})"));
  ASSERT_TRUE(r.dizziness);
  EXPECT_EQ(r.dizziness->ipd_bias_peak, 0.0);
  EXPECT_EQ(r.dizziness->score_attack, 0.0);
}

TEST(Report, ArtifactsListedWithDigests) {
  const auto r = run_scenario(parse_config(R"({"case":"dizziness","duration":5})"));
  const auto j = nlohmann::json::parse(report_to_json(r));
  EXPECT_EQ(j.at("status"), "ok");
  ASSERT_EQ(j.at("artifacts").size(), r.artifacts.size());
  for (std::size_t i = 0; i < r.artifacts.size(); ++i) {
    EXPECT_EQ(j["artifacts"][i]["file"], r.artifacts[i].name);
    EXPECT_EQ(j["artifacts"][i]["sha256"], sha256_hex(r.artifacts[i].content));
  }
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Export, DeterministicBytes) {
  const auto plan = load_plan(VRSIM_SCENARIOS "/all_cases.json");
  const auto a = scratch("det_a"), b = scratch("det_b");
  simulate_plan(plan, a.string(), 1);
  simulate_plan(plan, b.string(), 4);
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), a);
    EXPECT_EQ(sha256_hex(slurp(entry.path())), sha256_hex(slurp(b / rel))) << rel;
    ++files;
  }
  EXPECT_GT(files, 10u);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Export, SeedChangesOnlyNoiseDrivenFields) {
  const auto one = run_case2(parse_config(R"({"case":"avatar","seed":1})"));
  const auto two = run_case2(parse_config(R"({"case":"avatar","seed":2})"));
  EXPECT_EQ(one.avatar->selected.frequency, two.avatar->selected.frequency);
  EXPECT_EQ(one.avatar->candidates.size(), two.avatar->candidates.size());
  EXPECT_EQ(one.avatar->alias.observed, two.avatar->alias.observed);
  EXPECT_EQ(one.avatar->detectable, two.avatar->detectable);
  EXPECT_NE(one.avatar->aligned.final_bias, two.avatar->aligned.final_bias);
}

TEST(Export, EmptyPlanWritesEmptyManifest) {
  const auto dir = scratch("empty");
  const auto entries = simulate_plan(Plan{}, dir.string(), 2);
  EXPECT_TRUE(entries.empty());
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest.at("count"), 0);
  EXPECT_TRUE(manifest.at("scenarios").empty());
  fs::remove_all(dir);
}

TEST(Export, ManifestMatchesReports) {
  const auto dir = scratch("manifest");
  const auto plan = parse_plan(R"({"seed":5,"scenarios":[{"case":"dizziness","duration":4},{"case":"avatar","avatar":{"band":[27100,27110]}}]})");
  const auto entries = simulate_plan(plan, dir.string(), 2);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1].status, "no_feasible_attack");
  for (const auto& e : entries) {
    EXPECT_EQ(sha256_hex(slurp(dir / e.directory / "report.json")), e.report_sha256);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace vrsim
