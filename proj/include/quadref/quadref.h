// Copyright 2026 The quadref Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the quadref reference generator and simulator. */

#ifndef QUADREF_QUADREF_H_
#define QUADREF_QUADREF_H_

#include <stddef.h>

#if defined(QUADREF_BUILDING_LIBRARY)
#define QUADREF_API __attribute__((visibility("default")))
#else
#define QUADREF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum quadref_status {
  QUADREF_OK = 0,
  QUADREF_ERR_CONFIG = 1,
  QUADREF_ERR_SOLVER = 2,
  QUADREF_ERR_SIMULATION = 3,
  QUADREF_ERR_IO = 4,
  QUADREF_ERR_INVALID_ARGUMENT = 5,
  QUADREF_ERR_INTERNAL = 6
} quadref_status;

typedef struct quadref_scenario quadref_scenario;
typedef struct quadref_run quadref_run;

typedef struct quadref_metrics {
  int settled; /* 0 when settling_time_s is undefined */
  double settling_time_s;
  double steady_state_error_m;
  double max_slack_m;
  int fallback_ticks;
  double mean_lip_solve_ms;
  double mean_grf_solve_ms;
  double settling_reference_s;
  double settling_tol_m;
} quadref_metrics;

/* Message of the last failed call on this thread; never NULL. */
QUADREF_API const char* quadref_last_error(void);
QUADREF_API const char* quadref_status_string(quadref_status status);

QUADREF_API quadref_status quadref_scenario_load(const char* path, quadref_scenario** out);
QUADREF_API quadref_status quadref_scenario_parse(const char* json_text,
                                                  quadref_scenario** out);
QUADREF_API double quadref_scenario_duration(const quadref_scenario* scenario);
QUADREF_API double quadref_scenario_sample_time(const quadref_scenario* scenario);
QUADREF_API void quadref_scenario_free(quadref_scenario* scenario);

/* Runs the closed loop. *out is set whenever the run started, also on a
   mid-run fault, and then holds the rows recorded before the fault. */
QUADREF_API quadref_status quadref_run_scenario(const quadref_scenario* scenario,
                                                quadref_run** out);
QUADREF_API size_t quadref_run_rows(const quadref_run* run);
/* Fills QUADREF_OK only for completed runs. */
QUADREF_API quadref_status quadref_run_metrics(const quadref_run* run, quadref_metrics* out);
/* Copies column `name` of the time series into values[0..capacity). */
QUADREF_API quadref_status quadref_run_column(const quadref_run* run, const char* name,
                                              double* values, size_t capacity);
QUADREF_API quadref_status quadref_run_write_csv(const quadref_run* run, const char* path);
QUADREF_API quadref_status quadref_run_write_metrics(const quadref_run* run,
                                                     const char* path);
QUADREF_API quadref_status quadref_run_write_plots(const quadref_run* run,
                                                   const char* out_dir);
QUADREF_API void quadref_run_free(quadref_run* run);

/* Critically damped PD gains with the given settling time. */
QUADREF_API quadref_status quadref_pd_gains_from_settling(double mass, double settling_time,
                                                          double* kp, double* kd);

#ifdef __cplusplus
}
#endif

#endif /* QUADREF_QUADREF_H_ */
