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

#include "vrsim/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>

#include "vrsim/error.hpp"

namespace vrsim {
namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(Errc::kValidation, field, what);
}

// Walks one JSON object, consuming known keys and rejecting the rest.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "config" : path_, "must be an object");
  }

  // Rejects every key that no accessor asked for.
  void finish() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) unknown.push_back(join(path_, key));
    }
    if (!unknown.empty()) {
      std::string list;
      for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
      fail(unknown.front(), "unknown key(s): " + list);
    }
  }

  Section(const Section&) = delete;
  Section& operator=(const Section&) = delete;

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(path(key), "must be a number");
      out = v->get<double>();
      if (!std::isfinite(out)) fail(path(key), "must be finite");
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(path(key), "must be an integer");
      const auto wide = v->get<std::int64_t>();
      if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
        fail(path(key), "out of range");
      }
      out = static_cast<int>(wide);
    }
  }

  void size(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) fail(path(key), "must be a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(path(key), "must be true or false");
      out = v->get<bool>();
    }
  }

  void numbers(const std::string& key, std::vector<double>& out, std::size_t exact = 0) {
    if (const json* v = find(key)) {
      if (!v->is_array()) fail(path(key), "must be an array of numbers");
      if (exact != 0 && v->size() != exact) fail(path(key), "must have " + std::to_string(exact) + " entries");
      out.clear();
      for (const auto& e : *v) {
        if (!e.is_number()) fail(path(key), "must be an array of numbers");
        out.push_back(e.get<double>());
        if (!std::isfinite(out.back())) fail(path(key), "must be finite");
      }
    }
  }

  void triple(const std::string& key, std::array<double, 3>& out) {
    std::vector<double> v(out.begin(), out.end());
    numbers(key, v, 3);
    std::copy(v.begin(), v.end(), out.begin());
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

CaseKind parse_case(const json& v) {
  if (!v.is_string()) fail("case", "must be one of trajectory, avatar, dizziness");
  const auto s = v.get<std::string>();
  if (s == "trajectory") return CaseKind::kTrajectory;
  if (s == "avatar") return CaseKind::kAvatar;
  if (s == "dizziness") return CaseKind::kDizziness;
  fail("case", "must be one of trajectory, avatar, dizziness (got '" + s + "')");
}

std::uint64_t parse_seed(const json& v, const std::string& field) {
  if (!v.is_number_unsigned()) fail(field, "must be a non-negative 64-bit integer");
  return v.get<std::uint64_t>();
}

// Case-dependent defaults applied before the overlay.
void apply_case_defaults(ScenarioConfig& cfg) {
  switch (cfg.kind) {
    case CaseKind::kTrajectory:
      cfg.name = "trajectory";
      cfg.duration = 10.0;
      break;
    case CaseKind::kAvatar:
      cfg.name = "avatar";
      cfg.duration = 10.0;
      break;
    case CaseKind::kDizziness:
      cfg.name = "dizziness";
      cfg.duration = 30.0;
      cfg.detector.window = 1024;
      cfg.detector.exclusion_low = 0.0;
      cfg.detector.exclusion_high = 0.2;
      break;
  }
}

// Re-raises a domain error from a module validator under the config path.
template <typename F>
void check(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == Errc::kValidation) throw;
    fail(join(prefix, e.field().empty() ? std::string("value") : e.field()), e.detail());
  }
}

ScenarioConfig parse_scenario(const json& root, const std::string& base, bool& seed_given) {
  ScenarioConfig cfg;
  Section top(root, base);
  const json* kind = top.find("case");
  if (!kind) fail(top.path("case"), "is required");
  try {
    cfg.kind = parse_case(*kind);
  } catch (const Error& e) {
    fail(top.path("case"), e.detail());
  }
  apply_case_defaults(cfg);

  if (const json* v = top.find("name")) {
    if (!v->is_string() || v->get<std::string>().empty()) fail(top.path("name"), "must be a non-empty string");
    cfg.name = v->get<std::string>();
    for (char c : cfg.name) {
      const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
      if (!ok || cfg.name == "." || cfg.name == "..") {
        fail(top.path("name"), "may contain only letters, digits, '-', '_' and '.'");
      }
    }
  }
  seed_given = false;
  if (const json* v = top.find("seed")) {
    cfg.seed = parse_seed(*v, top.path("seed"));
    seed_given = true;
  }
  top.number("duration", cfg.duration);
  if (!(cfg.duration > 0.0) || cfg.duration > 3600.0) fail(top.path("duration"), "must lie in (0, 3600] s");

  if (const json* v = top.find("imu")) {
    Section s(*v, top.path("imu"));
    s.number("sample_rate", cfg.imu.sample_rate);
    s.number("resonance_center", cfg.imu.resonance_center);
    s.number("resonance_bandwidth", cfg.imu.resonance_bandwidth);
    s.number("transduction_gain", cfg.imu.transduction_gain);
    s.triple("gyro_bias", cfg.imu.gyro_bias);
    s.triple("accel_bias", cfg.imu.accel_bias);
    s.finish();
  }
  check(top.path("imu"), [&] { validate(cfg.imu); });

  if (const json* v = top.find("hall")) {
    Section s(*v, top.path("hall"));
    s.number("k_ipd", cfg.hall.k_ipd);
    s.number("ipd_rest", cfg.hall.ipd_rest);
    s.number("ipd_min", cfg.hall.ipd_min);
    s.number("ipd_max", cfg.hall.ipd_max);
    s.finish();
  }
  check(top.path("hall"), [&] { validate(cfg.hall); });

  if (const json* v = top.find("fusion")) {
    Section s(*v, top.path("fusion"));
    s.number("imu_rate", cfg.fusion.imu_rate);
    s.number("camera_rate", cfg.fusion.camera_rate);
    s.number("measurement_variance", cfg.fusion.measurement_variance);
    s.number("process_variance", cfg.fusion.process_variance);
    s.integer("adapt_window", cfg.fusion.adapt_window);
    s.number("camera_noise", cfg.fusion.camera_noise);
    s.number("initial_variance", cfg.fusion.initial_variance);
    s.number("process_floor", cfg.fusion.process_floor);
    s.number("process_ceiling", cfg.fusion.process_ceiling);
    s.number("bias_window", cfg.fusion.bias_window);
    s.finish();
  }
  check(top.path("fusion"), [&] { validate(cfg.fusion); });

  if (const json* v = top.find("thresholds")) {
    Section s(*v, top.path("thresholds"));
    s.number("speed_ratio_jnd", cfg.thresholds.speed_ratio_jnd);
    s.number("hand_offset_jnd", cfg.thresholds.hand_offset_jnd);
    s.number("walking_speed", cfg.thresholds.walking_speed);
    s.finish();
  }
  check(top.path("thresholds"), [&] { validate(cfg.thresholds); });

  if (const json* v = top.find("detector")) {
    Section s(*v, top.path("detector"));
    s.size("window", cfg.detector.window);
    s.number("snr_threshold_db", cfg.detector.snr_threshold_db);
    s.number("corr_threshold", cfg.detector.corr_threshold);
    std::vector<double> band{cfg.detector.exclusion_low, cfg.detector.exclusion_high};
    s.numbers("exclusion_band", band, 2);
    cfg.detector.exclusion_low = band[0];
    cfg.detector.exclusion_high = band[1];
    s.size("max_lag", cfg.detector.max_lag);
    s.finish();
  }
  check(top.path("detector"), [&] { validate(cfg.detector); });

  if (const json* v = top.find("trajectory")) {
    Section s(*v, top.path("trajectory"));
    auto& t = cfg.trajectory;
    s.number("omega_o", t.omega_o);
    s.number("observed_frequency", t.observed_frequency);
    s.number("decay_period", t.decay_period);
    s.integer("axis", t.axis);
    s.number("heading", t.heading);
    s.numbers("sweep", t.sweep);
    s.finish();
  }
  {
    const auto& t = cfg.trajectory;
    if (!(t.omega_o >= 0.0)) fail(top.path("trajectory.omega_o"), "must be >= 0");
    if (!(t.observed_frequency > 0.0)) fail(top.path("trajectory.observed_frequency"), "must be positive");
    if (!(t.decay_period > 0.0)) fail(top.path("trajectory.decay_period"), "must be positive");
    if (t.axis < 0 || t.axis > 2) fail(top.path("trajectory.axis"), "must be 0, 1 or 2");
    for (double f : t.sweep) {
      if (!(f > 0.0)) fail(top.path("trajectory.sweep"), "entries must be positive");
    }
  }

  if (const json* v = top.find("walk")) {
    Section s(*v, top.path("walk"));
    s.number("virtual_distance", cfg.trajectory.walk.virtual_distance);
    s.number("gain", cfg.trajectory.walk.gain);
    s.number("boundary_offset", cfg.trajectory.walk.boundary_offset);
    s.finish();
  }
  check(top.path("walk"), [&] { real_walk_distance(cfg.trajectory.walk); });

  if (const json* v = top.find("avatar")) {
    Section s(*v, top.path("avatar"));
    auto& a = cfg.avatar;
    std::vector<double> band{a.band_low, a.band_high};
    s.numbers("band", band, 2);
    a.band_low = band[0];
    a.band_high = band[1];
    s.integer("n_max", a.n_max);
    s.number("attack_amp", a.attack_amp);
    s.number("control_frequency", a.control_frequency);
    s.number("upper_arm", a.upper_arm);
    s.number("forearm", a.forearm);
    std::vector<double> wrist{a.wrist_x, a.wrist_y};
    s.numbers("wrist", wrist, 2);
    a.wrist_x = wrist[0];
    a.wrist_y = wrist[1];
    s.finish();
  }
  {
    const auto& a = cfg.avatar;
    if (!(a.band_low > 0.0)) fail(top.path("avatar.band"), "must be positive");
    if (a.n_max < 1) fail(top.path("avatar.n_max"), "must be >= 1");
    if (!(a.attack_amp >= 0.0)) fail(top.path("avatar.attack_amp"), "must be >= 0");
    if (!(a.control_frequency > 0.0)) fail(top.path("avatar.control_frequency"), "must be positive");
    if (!(a.upper_arm > 0.0)) fail(top.path("avatar.upper_arm"), "must be positive");
    if (!(a.forearm > 0.0)) fail(top.path("avatar.forearm"), "must be positive");
    const double r = std::hypot(a.wrist_x, a.wrist_y);
    if (r > a.upper_arm + a.forearm || r < std::abs(a.upper_arm - a.forearm)) {
      fail(top.path("avatar.wrist"), "is outside the reachable annulus");
    }
  }

  if (const json* v = top.find("dizziness")) {
    Section s(*v, top.path("dizziness"));
    auto& d = cfg.dizziness;
    s.number("current_amplitude", d.current_amplitude);
    s.number("current_frequency", d.current_frequency);
    if (const json* dv = s.find("display")) {
      Section ds(*dv, s.path("display"));
      ds.number("frame_rate", d.display.frame_rate);
      ds.number("pixels_per_mm", d.display.pixels_per_mm);
      ds.number("base_disparity", d.display.base_disparity);
      ds.number("gameplay_h_flow", d.display.gameplay_h_flow);
      ds.number("gameplay_v_flow", d.display.gameplay_v_flow);
      ds.number("gameplay_disparity", d.display.gameplay_disparity);
      ds.finish();
    }
    if (const json* wv = s.find("weights")) {
      Section ws(*wv, s.path("weights"));
      ws.number("h_flow", d.weights.h_flow);
      ws.number("v_flow", d.weights.v_flow);
      ws.number("disparity", d.weights.disparity);
      ws.boolean("inverse_disparity", d.weights.inverse_disparity);
      ws.finish();
    }
    s.finish();
  }
  {
    const auto& d = cfg.dizziness;
    const std::string p = top.path("dizziness");
    if (!(d.current_amplitude >= 0.0)) fail(p + ".current_amplitude", "must be >= 0");
    if (!(d.current_frequency > 0.0)) fail(p + ".current_frequency", "must be positive");
    if (!(d.display.frame_rate > 0.0)) fail(p + ".display.frame_rate", "must be positive");
    if (!(d.display.pixels_per_mm > 0.0)) fail(p + ".display.pixels_per_mm", "must be positive");
    if (!(d.display.gameplay_h_flow >= 0.0)) fail(p + ".display.gameplay_h_flow", "must be >= 0");
    if (!(d.display.gameplay_v_flow >= 0.0)) fail(p + ".display.gameplay_v_flow", "must be >= 0");
    if (!(d.display.gameplay_disparity >= 0.0)) fail(p + ".display.gameplay_disparity", "must be >= 0");
    if (d.weights.h_flow < 0.0 || d.weights.v_flow < 0.0 || d.weights.disparity < 0.0) {
      fail(p + ".weights", "must be >= 0");
    }
  }
  top.finish();
  return cfg;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("config", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Errc::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(CaseKind k) noexcept {
  switch (k) {
    case CaseKind::kTrajectory: return "trajectory";
    case CaseKind::kAvatar: return "avatar";
    case CaseKind::kDizziness: return "dizziness";
  }
  return "unknown";
}

ScenarioConfig parse_config(const std::string& json_text) {
  bool seed_given = false;
  return parse_scenario(parse_json(json_text), "", seed_given);
}

Plan parse_plan(const std::string& json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) fail("config", "must be an object");
  Plan plan;
  if (root.contains("case")) {
    bool seed_given = false;
    plan.scenarios.push_back(parse_scenario(root, "", seed_given));
    plan.seed = plan.scenarios.front().seed;
    return plan;
  }
  Section top(root, "");
  if (const json* v = top.find("seed")) plan.seed = parse_seed(*v, "seed");
  const json* list = top.find("scenarios");
  if (!list) fail("scenarios", "is required when no top-level \"case\" is given");
  if (!list->is_array()) fail("scenarios", "must be an array");
  top.finish();
  std::set<std::string> names;
  for (std::size_t i = 0; i < list->size(); ++i) {
    bool seed_given = false;
    auto cfg = parse_scenario((*list)[i], "scenarios[" + std::to_string(i) + "]", seed_given);
    if (!seed_given) cfg.seed = plan.seed ^ static_cast<std::uint64_t>(i);
    if (!(*list)[i].contains("name")) cfg.name += "-" + std::to_string(i);
    if (!names.insert(cfg.name).second) {
      fail("scenarios[" + std::to_string(i) + "].name", "duplicates an earlier scenario");
    }
    plan.scenarios.push_back(std::move(cfg));
  }
  return plan;
}

ScenarioConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

Plan load_plan(const std::string& path) { return parse_plan(read_file(path)); }

std::string config_to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["case"] = std::string(to_string(c.kind));
  j["seed"] = c.seed;
  j["duration"] = c.duration;
  j["imu"] = {{"sample_rate", c.imu.sample_rate},
              {"resonance_center", c.imu.resonance_center},
              {"resonance_bandwidth", c.imu.resonance_bandwidth},
              {"transduction_gain", c.imu.transduction_gain},
              {"gyro_bias", c.imu.gyro_bias},
              {"accel_bias", c.imu.accel_bias}};
  j["hall"] = {{"k_ipd", c.hall.k_ipd}, {"ipd_rest", c.hall.ipd_rest}, {"ipd_min", c.hall.ipd_min},
               {"ipd_max", c.hall.ipd_max}};
  j["fusion"] = {{"imu_rate", c.fusion.imu_rate},
                 {"camera_rate", c.fusion.camera_rate},
                 {"measurement_variance", c.fusion.measurement_variance},
                 {"process_variance", c.fusion.process_variance},
                 {"adapt_window", c.fusion.adapt_window},
                 {"camera_noise", c.fusion.camera_noise},
                 {"initial_variance", c.fusion.initial_variance},
                 {"process_floor", c.fusion.process_floor},
                 {"process_ceiling", c.fusion.process_ceiling},
                 {"bias_window", c.fusion.bias_window}};
  j["thresholds"] = {{"speed_ratio_jnd", c.thresholds.speed_ratio_jnd},
                     {"hand_offset_jnd", c.thresholds.hand_offset_jnd},
                     {"walking_speed", c.thresholds.walking_speed}};
  j["detector"] = {{"window", c.detector.window},
                   {"snr_threshold_db", c.detector.snr_threshold_db},
                   {"corr_threshold", c.detector.corr_threshold},
                   {"exclusion_band", {c.detector.exclusion_low, c.detector.exclusion_high}},
                   {"max_lag", c.detector.max_lag}};
  j["trajectory"] = {{"omega_o", c.trajectory.omega_o},
                     {"observed_frequency", c.trajectory.observed_frequency},
                     {"decay_period", c.trajectory.decay_period},
                     {"axis", c.trajectory.axis},
                     {"heading", c.trajectory.heading},
                     {"sweep", c.trajectory.sweep}};
  j["walk"] = {{"virtual_distance", c.trajectory.walk.virtual_distance},
               {"gain", c.trajectory.walk.gain},
               {"boundary_offset", c.trajectory.walk.boundary_offset}};
  j["avatar"] = {{"band", {c.avatar.band_low, c.avatar.band_high}},
                 {"n_max", c.avatar.n_max},
                 {"attack_amp", c.avatar.attack_amp},
                 {"control_frequency", c.avatar.control_frequency},
                 {"upper_arm", c.avatar.upper_arm},
                 {"forearm", c.avatar.forearm},
                 {"wrist", {c.avatar.wrist_x, c.avatar.wrist_y}}};
  const auto& d = c.dizziness;
  j["dizziness"] = {{"current_amplitude", d.current_amplitude},
                    {"current_frequency", d.current_frequency},
                    {"display",
                     {{"frame_rate", d.display.frame_rate},
                      {"pixels_per_mm", d.display.pixels_per_mm},
                      {"base_disparity", d.display.base_disparity},
                      {"gameplay_h_flow", d.display.gameplay_h_flow},
                      {"gameplay_v_flow", d.display.gameplay_v_flow},
                      {"gameplay_disparity", d.display.gameplay_disparity}}},
                    {"weights",
                     {{"h_flow", d.weights.h_flow},
                      {"v_flow", d.weights.v_flow},
                      {"disparity", d.weights.disparity},
                      {"inverse_disparity", d.weights.inverse_disparity}}}};
  return j.dump(2);
}

}  // namespace vrsim
