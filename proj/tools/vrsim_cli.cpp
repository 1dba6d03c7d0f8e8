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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vrsim/vrsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

int exit_code(vrsim_status s) {
  switch (s) {
    case VRSIM_OK: return kExitOk;
    case VRSIM_ERR_INVALID_ARGUMENT:
    case VRSIM_ERR_VALIDATION: return kExitValidation;
    default: return kExitRuntime;
  }
}

int report_failure(vrsim_status s) {
  std::cerr << "vrsim: " << vrsim_last_error() << '\n';
  return exit_code(s);
}

// Owns a library-allocated string.
struct LibString {
  char* p = nullptr;
  ~LibString() { vrsim_string_free(p); }
};

bool parse_range(const std::string& text, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t used = 0;
    lo = std::stod(text.substr(0, colon), &used);
    if (used != colon) return false;
    const std::string rest = text.substr(colon + 1);
    hi = std::stod(rest, &used);
    return used == rest.size();
  } catch (const std::exception&) {
    return false;
  }
}

int cmd_simulate(const std::string& config, unsigned jobs, const std::string& out) {
  vrsim_plan* plan = nullptr;
  if (auto s = vrsim_plan_load(config.c_str(), &plan); s != VRSIM_OK) return report_failure(s);
  LibString manifest;
  const auto s = vrsim_simulate(plan, out.c_str(), jobs, &manifest.p);
  const std::size_t count = vrsim_plan_size(plan);
  vrsim_plan_free(plan);
  if (s != VRSIM_OK) return report_failure(s);
  const auto j = nlohmann::json::parse(manifest.p);
  for (const auto& e : j["scenarios"]) {
    std::cout << e["name"].get<std::string>() << '\t' << e["status"].get<std::string>() << '\t' << out << '/'
              << e["directory"].get<std::string>() << "/report.json\n";
  }
  std::cout << count << " scenario(s) written to " << out << '\n';
  return kExitOk;
}

int cmd_design(const std::string& band, double imu_rate, double cam_rate, int n_max) {
  double lo = 0.0, hi = 0.0;
  if (!parse_range(band, lo, hi)) {
    std::cerr << "vrsim: --band must look like LO:HI\n";
    return kExitValidation;
  }
  LibString out;
  if (auto s = vrsim_select_bypass(lo, hi, imu_rate, cam_rate, n_max, &out.p); s != VRSIM_OK) {
    return report_failure(s);
  }
  std::cout << nlohmann::ordered_json::parse(out.p).dump(2) << '\n';
  return kExitOk;
}

int cmd_detect(const std::string& input, std::size_t window, double snr_db, const std::string& exclude) {
  vrsim_detector_config cfg;
  vrsim_detector_config_default(&cfg);
  if (window) cfg.window = window;
  cfg.snr_threshold_db = snr_db;
  if (!exclude.empty() && !parse_range(exclude, cfg.exclusion_low, cfg.exclusion_high)) {
    std::cerr << "vrsim: --exclude must look like LO:HI\n";
    return kExitValidation;
  }
  vrsim_series* series = nullptr;
  if (auto s = vrsim_series_load_csv(input.c_str(), &series); s != VRSIM_OK) return report_failure(s);
  std::size_t count = 0;
  LibString lines;
  const auto s = vrsim_spectral_detect(series, &cfg, &count, &lines.p);
  vrsim_series_free(series);
  if (s != VRSIM_OK) return report_failure(s);
  std::cout << lines.p;
  std::cerr << count << " alarm(s)\n";
  return kExitOk;
}

int cmd_report(const std::string& input) {
  LibString text;
  if (auto s = vrsim_report_summary(input.c_str(), &text.p); s != VRSIM_OK) return report_failure(s);
  std::cout << text.p;
  return kExitOk;
}

int cmd_dizziness(const std::string& input, const std::vector<double>& w, bool inverse) {
  double score = 0.0;
  if (auto s = vrsim_dizziness_score(input.c_str(), w[0], w[1], w[2], inverse ? 1 : 0, &score); s != VRSIM_OK) {
    return report_failure(s);
  }
  nlohmann::ordered_json j{{"input", input}, {"score", score}};
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int cmd_loop(const std::string& blocks_path, double frequency) {
  std::ifstream is(blocks_path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "vrsim: " << blocks_path << ": " << e.what() << '\n';
    return kExitValidation;
  }
  std::string blocks[5];
  const char* names[5] = {"F_s", "F_p", "F_a", "H_s", "H_a"};
  for (int i = 0; i < 5; ++i) {
    if (!j.is_object() || !j.contains(names[i])) {
      std::cerr << "vrsim: " << names[i] << ": missing block\n";
      return kExitValidation;
    }
    blocks[i] = j[names[i]].dump();
  }
  double g = 0.0, p = 0.0;
  const auto s = vrsim_loop_magnitude(blocks[0].c_str(), blocks[1].c_str(), blocks[2].c_str(), blocks[3].c_str(),
                                      blocks[4].c_str(), frequency, &g, &p);
  if (s != VRSIM_OK) return report_failure(s);
  nlohmann::ordered_json out{{"frequency", frequency}, {"G", g}, {"P", p}};
  std::cout << out.dump() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for sensor-injection attacks on VR perception pipelines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vrsim_version()));

  std::string config, out = "out";
  unsigned jobs = 1;
  auto* sim = app.add_subcommand("simulate", "Run the scenarios of a config file");
  sim->add_option("--config", config, "Scenario or plan JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--jobs", jobs, "Scenarios run in parallel")->check(CLI::Range(1u, 256u));
  sim->add_option("--out", out, "Output directory")->capture_default_str();

  std::string band;
  double imu_rate = 0.0, cam_rate = 0.0;
  int n_max = 16;
  auto* design = app.add_subcommand("design-signal", "List resonance frequencies that bypass fusion");
  design->add_option("--band", band, "Resonance band LO:HI in Hz")->required();
  design->add_option("--imu-rate", imu_rate, "IMU sample rate, Hz")->required();
  design->add_option("--cam-rate", cam_rate, "Camera rate, Hz")->required();
  design->add_option("--n-max", n_max, "Largest camera multiple")->capture_default_str();

  std::string input;
  std::size_t window = 0;
  double snr_db = 10.0;
  std::string exclude;
  auto* detect = app.add_subcommand("detect", "Spectral anomaly detection on a t,value CSV");
  detect->add_option("--input", input, "Series CSV")->required()->check(CLI::ExistingFile);
  detect->add_option("--window", window, "Samples per window (default 256)");
  detect->add_option("--snr-db", snr_db, "Peak-over-median threshold")->capture_default_str();
  detect->add_option("--exclude", exclude, "Ignored band LO:HI in Hz (default 0:2)");

  std::string report_input;
  auto* report = app.add_subcommand("report", "Summarize a report.json");
  report->add_option("--input", report_input, "report.json")->required()->check(CLI::ExistingFile);

  std::string cloud_input;
  std::vector<double> weights{2.0, 1.0, 1.0};
  bool inverse = false;
  auto* dizzy = app.add_subcommand("dizziness", "Dispersion score of a frame,h_flow,v_flow,disparity CSV");
  dizzy->add_option("--input", cloud_input, "Cloud CSV")->required()->check(CLI::ExistingFile);
  dizzy->add_option("--weights", weights, "w_h w_v w_d")->expected(3)->delimiter(',');
  dizzy->add_flag("--inverse-disparity", inverse, "Score 1/disparity");

  std::string blocks;
  double frequency = 1.0;
  auto* loop = app.add_subcommand("loop", "Closed-loop gain magnitudes at one frequency");
  loop->add_option("--blocks", blocks, "JSON with F_s, F_p, F_a, H_s, H_a")->required()->check(CLI::ExistingFile);
  loop->add_option("--freq", frequency, "Hz")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (*sim) return cmd_simulate(config, jobs, out);
  if (*design) return cmd_design(band, imu_rate, cam_rate, n_max);
  if (*detect) return cmd_detect(input, window, snr_db, exclude);
  if (*report) return cmd_report(report_input);
  if (*dizzy) return cmd_dizziness(cloud_input, weights, inverse);
  if (*loop) return cmd_loop(blocks, frequency);
  return kExitValidation;
}
