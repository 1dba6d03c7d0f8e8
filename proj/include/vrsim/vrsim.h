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

#ifndef VRSIM_VRSIM_H
#define VRSIM_VRSIM_H

#include <stddef.h>

#if defined(VRSIM_BUILDING_LIBRARY)
#define VRSIM_API __attribute__((visibility("default")))
#else
#define VRSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vrsim_status {
  VRSIM_OK = 0,
  VRSIM_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or null pointer */
  VRSIM_ERR_VALIDATION = 2,       /* config or input file rejected */
  VRSIM_ERR_RUNTIME = 3,          /* numeric or model failure during a run */
  VRSIM_ERR_IO = 4                /* filesystem failure */
} vrsim_status;

typedef struct vrsim_plan vrsim_plan;
typedef struct vrsim_series vrsim_series;

/* Message and offending field of the last failure on this thread. The
 * pointers stay valid until the next call from the same thread. */
VRSIM_API const char* vrsim_last_error(void);
VRSIM_API const char* vrsim_last_error_field(void);

VRSIM_API const char* vrsim_version(void);

/* Strings returned through char** out-parameters are owned by the caller
 * and released with vrsim_string_free. */
VRSIM_API void vrsim_string_free(char* s);

VRSIM_API vrsim_status vrsim_plan_load(const char* path, vrsim_plan** out);
VRSIM_API vrsim_status vrsim_plan_parse(const char* json_text, vrsim_plan** out);
VRSIM_API size_t vrsim_plan_size(const vrsim_plan* plan);
VRSIM_API void vrsim_plan_free(vrsim_plan* plan);

/* Runs every scenario and writes out_dir/<name>/... plus manifest.json.
 * manifest_json may be null. */
VRSIM_API vrsim_status vrsim_simulate(const vrsim_plan* plan, const char* out_dir, unsigned jobs,
                                      char** manifest_json);

/* JSON array of {frequency, m, n, observed, sign, alignable}. */
VRSIM_API vrsim_status vrsim_select_bypass(double band_low, double band_high, double imu_rate,
                                           double camera_rate, int n_max, char** json_out);

VRSIM_API vrsim_status vrsim_series_load_csv(const char* path, vrsim_series** out);
VRSIM_API vrsim_status vrsim_series_from_array(const double* values, size_t count, double t0, double dt,
                                               vrsim_series** out);
VRSIM_API size_t vrsim_series_length(const vrsim_series* s);
VRSIM_API double vrsim_series_dt(const vrsim_series* s);
VRSIM_API void vrsim_series_free(vrsim_series* s);

typedef struct vrsim_detector_config {
  size_t window;
  double snr_threshold_db;
  double exclusion_low;
  double exclusion_high;
} vrsim_detector_config;

VRSIM_API void vrsim_detector_config_default(vrsim_detector_config* cfg);

/* Alarms as JSON lines; jsonl_out may be null. */
VRSIM_API vrsim_status vrsim_spectral_detect(const vrsim_series* s, const vrsim_detector_config* cfg,
                                             size_t* alarm_count, char** jsonl_out);

/* Human-readable summary of a report.json file. */
VRSIM_API vrsim_status vrsim_report_summary(const char* report_path, char** text_out);

/* Dispersion score of a `frame,h_flow,v_flow,disparity` CSV. */
VRSIM_API vrsim_status vrsim_dizziness_score(const char* csv_path, double w_h, double w_v, double w_d,
                                             int inverse_disparity, double* score);

/* |G(i 2 pi f)| and |P(i 2 pi f)| of the closed loop built from five
 * `{"num":[..],"den":[..]}` blocks. */
VRSIM_API vrsim_status vrsim_loop_magnitude(const char* f_s, const char* f_p, const char* f_a,
                                            const char* h_s, const char* h_a, double frequency,
                                            double* g_magnitude, double* p_magnitude);

#ifdef __cplusplus
}
#endif

#endif /* VRSIM_VRSIM_H */
