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

#include "vrsim/vrsim.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <new>
#include <sstream>
#include <string>

#include "vrsim/cases.hpp"
#include "vrsim/config.hpp"
#include "vrsim/defense.hpp"
#include "vrsim/error.hpp"
#include "vrsim/looptf.hpp"
#include "vrsim/perception.hpp"
#include "vrsim/sensing.hpp"

struct vrsim_plan {
  vrsim::Plan plan;
};

struct vrsim_series {
  vrsim::SampleSeries series;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_field;

vrsim_status status_for(vrsim::Errc code) {
  using vrsim::Errc;
  switch (code) {
    case Errc::kDomain:
    case Errc::kKind:
      return VRSIM_ERR_INVALID_ARGUMENT;
    case Errc::kValidation:
    case Errc::kLength:
      return VRSIM_ERR_VALIDATION;
    case Errc::kIo:
      return VRSIM_ERR_IO;
    default:
      return VRSIM_ERR_RUNTIME;
  }
}

vrsim_status fail(vrsim_status s, const std::string& msg, const std::string& field = {}) {
  g_error = msg;
  g_field = field;
  return s;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
vrsim_status guarded(F&& body) {
  g_error.clear();
  g_field.clear();
  try {
    body();
    return VRSIM_OK;
  } catch (const vrsim::Error& e) {
    return fail(status_for(e.code()), e.what(), e.field());
  } catch (const std::bad_alloc&) {
    return fail(VRSIM_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(VRSIM_ERR_RUNTIME, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw vrsim::Error(vrsim::Errc::kDomain, what);
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && j.front().is_structured()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << "  " << prefix << " = " << j.dump() << '\n';
  }
}

}  // namespace

extern "C" {

const char* vrsim_last_error(void) { return g_error.c_str(); }

const char* vrsim_last_error_field(void) { return g_field.c_str(); }

const char* vrsim_version(void) { return "0.1.0"; }

void vrsim_string_free(char* s) { std::free(s); }

vrsim_status vrsim_plan_load(const char* path, vrsim_plan** out) {
  if (!path || !out) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new vrsim_plan{vrsim::load_plan(path)}; });
}

vrsim_status vrsim_plan_parse(const char* json_text, vrsim_plan** out) {
  if (!json_text || !out) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new vrsim_plan{vrsim::parse_plan(json_text)}; });
}

size_t vrsim_plan_size(const vrsim_plan* plan) { return plan ? plan->plan.scenarios.size() : 0; }

void vrsim_plan_free(vrsim_plan* plan) { delete plan; }

vrsim_status vrsim_simulate(const vrsim_plan* plan, const char* out_dir, unsigned jobs, char** manifest_json) {
  if (!plan || !out_dir) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  if (manifest_json) *manifest_json = nullptr;
  return guarded([&] {
    vrsim::simulate_plan(plan->plan, out_dir, jobs == 0 ? 1 : jobs);
    if (manifest_json) {
      std::ifstream is(std::string(out_dir) + "/manifest.json", std::ios::binary);
      std::stringstream ss;
      ss << is.rdbuf();
      *manifest_json = dup_string(ss.str());
    }
  });
}

vrsim_status vrsim_select_bypass(double band_low, double band_high, double imu_rate, double camera_rate,
                                 int n_max, char** json_out) {
  if (!json_out) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *json_out = nullptr;
  return guarded([&] {
    vrsim::FusionConfig cfg;
    cfg.imu_rate = imu_rate;
    cfg.camera_rate = camera_rate;
    const auto cands = vrsim::select_bypass_frequencies(band_low, band_high, cfg, n_max);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : cands) {
      const auto a = vrsim::alias_frequency(c.frequency, imu_rate);
      bool alignable = a.observed > 0.0;
      if (alignable) {
        try {
          vrsim::phase_align(a.observed, cfg);
        } catch (const vrsim::Error&) {
          alignable = false;
        }
      }
      arr.push_back({{"frequency", c.frequency},
                     {"m", c.m},
                     {"n", c.n},
                     {"observed", a.observed},
                     {"sign", a.sign},
                     {"alignable", alignable}});
    }
    *json_out = dup_string(arr.dump());
  });
}

vrsim_status vrsim_series_load_csv(const char* path, vrsim_series** out) {
  if (!path || !out) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new vrsim_series{vrsim::read_csv_file(path)}; });
}

vrsim_status vrsim_series_from_array(const double* values, size_t count, double t0, double dt,
                                     vrsim_series** out) {
  if (!out || (!values && count > 0)) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    vrsim::SampleSeries s;
    s.t0 = t0;
    s.dt = dt;
    s.values.assign(values, values + count);
    vrsim::validate(s);
    *out = new vrsim_series{std::move(s)};
  });
}

size_t vrsim_series_length(const vrsim_series* s) { return s ? s->series.size() : 0; }

double vrsim_series_dt(const vrsim_series* s) { return s ? s->series.dt : 0.0; }

void vrsim_series_free(vrsim_series* s) { delete s; }

void vrsim_detector_config_default(vrsim_detector_config* cfg) {
  if (!cfg) return;
  const vrsim::DetectorConfig d;
  cfg->window = d.window;
  cfg->snr_threshold_db = d.snr_threshold_db;
  cfg->exclusion_low = d.exclusion_low;
  cfg->exclusion_high = d.exclusion_high;
}

vrsim_status vrsim_spectral_detect(const vrsim_series* s, const vrsim_detector_config* cfg, size_t* alarm_count,
                                   char** jsonl_out) {
  if (!s || !cfg || !alarm_count) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  if (jsonl_out) *jsonl_out = nullptr;
  return guarded([&] {
    vrsim::DetectorConfig d;
    d.window = cfg->window;
    d.snr_threshold_db = cfg->snr_threshold_db;
    d.exclusion_low = cfg->exclusion_low;
    d.exclusion_high = cfg->exclusion_high;
    const auto alarms = vrsim::spectral_detect(s->series, d);
    *alarm_count = alarms.size();
    if (jsonl_out) {
      std::ostringstream os;
      vrsim::write_alarms(os, alarms);
      *jsonl_out = dup_string(os.str());
    }
  });
}

vrsim_status vrsim_report_summary(const char* report_path, char** text_out) {
  if (!report_path || !text_out) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  *text_out = nullptr;
  return guarded([&] {
    std::ifstream is(report_path, std::ios::binary);
    if (!is) throw vrsim::Error(vrsim::Errc::kIo, std::string("cannot open ") + report_path);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw vrsim::Error(vrsim::Errc::kValidation, "input", std::string("not a report: ") + e.what());
    }
    if (!j.is_object() || !j.contains("scenario") || !j.contains("status") || !j.contains("metrics")) {
      throw vrsim::Error(vrsim::Errc::kValidation, "input", "missing scenario, status or metrics");
    }
    const auto& sc = j["scenario"];
    std::ostringstream os;
    os << "scenario " << sc.value("name", std::string("?")) << " (" << sc.value("case", std::string("?"))
       << ", seed " << sc.value("seed", std::uint64_t{0}) << ", " << sc.value("duration", 0.0) << " s)\n";
    os << "status   " << j["status"].get<std::string>() << '\n';
    os << "metrics\n";
    flatten(j["metrics"], "", os);
    if (j.contains("artifacts") && j["artifacts"].is_array()) {
      os << "artifacts\n";
      for (const auto& a : j["artifacts"]) {
        os << "  " << a.value("file", std::string("?")) << "  " << a.value("bytes", std::uint64_t{0}) << " B  "
           << a.value("sha256", std::string()).substr(0, 16) << '\n';
      }
    }
    *text_out = dup_string(os.str());
  });
}

vrsim_status vrsim_dizziness_score(const char* csv_path, double w_h, double w_v, double w_d, int inverse_disparity,
                                   double* score) {
  if (!csv_path || !score) return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto cloud = vrsim::read_dizziness_csv_file(csv_path);
    vrsim::DispersionWeights w{w_h, w_v, w_d, inverse_disparity != 0};
    *score = vrsim::dispersion_score(cloud, w);
  });
}

vrsim_status vrsim_loop_magnitude(const char* f_s, const char* f_p, const char* f_a, const char* h_s,
                                  const char* h_a, double frequency, double* g_magnitude, double* p_magnitude) {
  if (!f_s || !f_p || !f_a || !h_s || !h_a || !g_magnitude || !p_magnitude) {
    return fail(VRSIM_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    require(std::isfinite(frequency), "frequency must be finite");
    const auto ha = vrsim::parse_tf(h_a);
    const auto g = vrsim::compose_G(vrsim::parse_tf(f_s), vrsim::parse_tf(f_p), vrsim::parse_tf(f_a),
                                    vrsim::parse_tf(h_s), ha);
    *g_magnitude = vrsim::eval_magnitude(g, frequency);
    *p_magnitude = vrsim::eval_magnitude(vrsim::compose_P(g, ha), frequency);
  });
}

}  // extern "C"
