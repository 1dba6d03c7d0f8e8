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

#include <unistd.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrsim/vrsim.h"

namespace {

namespace fs = std::filesystem;

std::string take(char* s) {
  std::string out = s ? s : "";
  vrsim_string_free(s);
  return out;
}

TEST(CApi, Version) { EXPECT_GT(std::strlen(vrsim_version()), 0u); }

TEST(CApi, PlanParseReportsField) {
  vrsim_plan* plan = nullptr;
  EXPECT_EQ(vrsim_plan_parse(R"({"case":"trajectory","walk":{"gain":2}})", &plan), VRSIM_ERR_VALIDATION);
  EXPECT_EQ(plan, nullptr);
  EXPECT_STREQ(vrsim_last_error_field(), "walk.gain");
  EXPECT_NE(std::string(vrsim_last_error()).find("walk.gain"), std::string::npos);
  EXPECT_EQ(vrsim_plan_parse(nullptr, &plan), VRSIM_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(vrsim_plan_load("/nonexistent.json", &plan), VRSIM_ERR_IO);
}

TEST(CApi, SimulateWritesManifest) {
  vrsim_plan* plan = nullptr;
  ASSERT_EQ(vrsim_plan_parse(R"({"seed":3,"scenarios":[{"case":"dizziness","duration":3}]})", &plan), VRSIM_OK);
  EXPECT_EQ(vrsim_plan_size(plan), 1u);
  const auto dir = fs::temp_directory_path() / ("vrsim_capi_" + std::to_string(::getpid()));
  char* manifest = nullptr;
  ASSERT_EQ(vrsim_simulate(plan, dir.c_str(), 2, &manifest), VRSIM_OK) << vrsim_last_error();
  const auto j = nlohmann::json::parse(take(manifest));
  EXPECT_EQ(j.at("count"), 1);
  const std::string sub = j["scenarios"][0]["directory"];
  EXPECT_TRUE(fs::exists(dir / sub / "report.json"));

  char* summary = nullptr;
  ASSERT_EQ(vrsim_report_summary((dir / sub / "report.json").c_str(), &summary), VRSIM_OK);
  EXPECT_NE(take(summary).find("dizziness"), std::string::npos);

  double score = -1.0;
  ASSERT_EQ(vrsim_dizziness_score((dir / sub / "cloud_stationary.csv").c_str(), 2, 1, 1, 0, &score), VRSIM_OK);
  EXPECT_EQ(score, 0.0);
  ASSERT_EQ(vrsim_dizziness_score((dir / sub / "cloud_attack.csv").c_str(), 2, 1, 1, 0, &score), VRSIM_OK);
  EXPECT_GT(score, 0.0);

  vrsim_series* s = nullptr;
  ASSERT_EQ(vrsim_series_load_csv((dir / sub / "ipd_bias.csv").c_str(), &s), VRSIM_OK) << vrsim_last_error();
  EXPECT_NEAR(vrsim_series_dt(s), 1.0 / 72.0, 1e-9);
  EXPECT_EQ(vrsim_series_length(s), 216u);
  vrsim_series_free(s);

  vrsim_plan_free(plan);
  fs::remove_all(dir);
}

TEST(CApi, SelectBypass) {
  char* out = nullptr;
  ASSERT_EQ(vrsim_select_bypass(27100, 27150, 1000, 30, 16, &out), VRSIM_OK);
  const auto j = nlohmann::json::parse(take(out));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["frequency"], 27120.0);
  EXPECT_EQ(j[1]["frequency"], 27150.0);
  EXPECT_EQ(vrsim_select_bypass(27100, 27150, -1, 30, 16, &out), VRSIM_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SpectralDetect) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(2 * std::numbers::pi * 17.0 * i * 0.01);
  vrsim_series* s = nullptr;
  ASSERT_EQ(vrsim_series_from_array(v.data(), v.size(), 0.0, 0.01, &s), VRSIM_OK);
  vrsim_detector_config cfg;
  vrsim_detector_config_default(&cfg);
  EXPECT_EQ(cfg.window, 256u);
  size_t count = 0;
  char* lines = nullptr;
  ASSERT_EQ(vrsim_spectral_detect(s, &cfg, &count, &lines), VRSIM_OK);
  EXPECT_GT(count, 0u);
  EXPECT_NE(take(lines).find("NarrowbandPeak"), std::string::npos);
  cfg.window = 4096;
  EXPECT_EQ(vrsim_spectral_detect(s, &cfg, &count, nullptr), VRSIM_ERR_VALIDATION);
  vrsim_series_free(s);
  EXPECT_EQ(vrsim_series_from_array(v.data(), v.size(), 0.0, 0.0, &s), VRSIM_ERR_INVALID_ARGUMENT);
}

TEST(CApi, LoopMagnitude) {
  const char* one = R"({"num":[1],"den":[1]})";
  double g = 0.0, p = 0.0;
  ASSERT_EQ(vrsim_loop_magnitude(one, one, one, one, R"({"num":[-0.5],"den":[1]})", 1.0, &g, &p), VRSIM_OK);
  EXPECT_NEAR(g, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(vrsim_loop_magnitude(one, one, one, one, one, 1.0, &g, &p), VRSIM_ERR_RUNTIME);
  EXPECT_EQ(vrsim_loop_magnitude(one, one, one, one, "{", 1.0, &g, &p), VRSIM_ERR_VALIDATION);
}

}  // namespace
