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


#include "quadref/quadref.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "quadref/baseline_pd.hpp"
#include "quadref/error.hpp"
#include "quadref/output.hpp"
#include "quadref/scenario.hpp"
#include "quadref/sim.hpp"

struct quadref_scenario {
  quadref::sim::Scenario value;
};

struct quadref_run {
  quadref::sim::TimeSeries series;
  bool complete = false;
};

namespace {

thread_local std::string g_last_error;

quadref_status Code(quadref::ErrorKind kind) {
  using quadref::ErrorKind;
  switch (kind) {
    case ErrorKind::kConfig:
      return QUADREF_ERR_CONFIG;
    case ErrorKind::kSimulation:
      return QUADREF_ERR_SIMULATION;
    case ErrorKind::kIo:
      return QUADREF_ERR_IO;
    case ErrorKind::kDegenerateSupport:
    case ErrorKind::kMapping:
    case ErrorKind::kUndefinedZmp:
    case ErrorKind::kAssembly:
      return QUADREF_ERR_SOLVER;
  }
  return QUADREF_ERR_INTERNAL;
}

quadref_status Fail(quadref_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <typename F>
quadref_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QUADREF_OK;
  } catch (const quadref::Error& e) {
    return Fail(Code(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(QUADREF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(QUADREF_ERR_INTERNAL, e.what());
  }
}

bool Column(const quadref::sim::TickRecord& r, const std::string& name, double* v) {
  const auto& cols = quadref::output::CsvColumns();
  std::size_t i = 0;
  while (i < cols.size() && cols[i] != name) ++i;
  if (i == cols.size()) return false;
  const double head[] = {r.t,           r.p.x(),       r.p.y(),      r.v.x(),
                         r.v.y(),       r.ref_v.x(),   r.ref_v.y(),  r.zmp.x(),
                         r.zmp.y(),     r.zmp_recon.x(), r.zmp_recon.y(), r.goal.x(),
                         r.goal.y(),
                         static_cast<double>(quadref::output::StatusCode(r.status)),
                         static_cast<double>(r.window_m), r.slack_y_max};
  constexpr std::size_t kHead = sizeof(head) / sizeof(head[0]);
  if (i < kHead) {
    *v = head[i];
  } else if (i < kHead + 12) {
    *v = r.u(static_cast<int>(i - kHead));
  } else {
    *v = r.push(static_cast<int>(i - kHead - 12));
  }
  return true;
}

}  // namespace

extern "C" {

const char* quadref_last_error(void) { return g_last_error.c_str(); }

const char* quadref_status_string(quadref_status status) {
  switch (status) {
    case QUADREF_OK:
      return "ok";
    case QUADREF_ERR_CONFIG:
      return "config error";
    case QUADREF_ERR_SOLVER:
      return "solver error";
    case QUADREF_ERR_SIMULATION:
      return "simulation fault";
    case QUADREF_ERR_IO:
      return "i/o error";
    case QUADREF_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QUADREF_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

quadref_status quadref_scenario_load(const char* path, quadref_scenario** out) {
  if (path == nullptr || out == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] { *out = new quadref_scenario{quadref::scenario::Load(path)}; });
}

quadref_status quadref_scenario_parse(const char* json_text, quadref_scenario** out) {
  if (json_text == nullptr || out == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return Guard([&] { *out = new quadref_scenario{quadref::scenario::Parse(json_text)}; });
}

double quadref_scenario_duration(const quadref_scenario* s) {
  return s ? s->value.sim.duration : 0.0;
}

double quadref_scenario_sample_time(const quadref_scenario* s) {
  return s ? s->value.lip.sample_time : 0.0;
}

void quadref_scenario_free(quadref_scenario* s) { delete s; }

quadref_status quadref_run_scenario(const quadref_scenario* s, quadref_run** out) {
  if (s == nullptr || out == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = new (std::nothrow) quadref_run;
  if (*out == nullptr) return Fail(QUADREF_ERR_INTERNAL, "out of memory");
  quadref_run* run = *out;
  return Guard([&] {
    quadref::sim::RunScenario(s->value, &run->series);
    run->complete = true;
  });
}

size_t quadref_run_rows(const quadref_run* run) { return run ? run->series.rows.size() : 0; }

quadref_status quadref_run_metrics(const quadref_run* run, quadref_metrics* out) {
  if (run == nullptr || out == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (!run->complete) return Fail(QUADREF_ERR_SIMULATION, "run did not complete");
  const auto& m = run->series.metrics;
  out->settled = m.settling_time_s.has_value() ? 1 : 0;
  out->settling_time_s = m.settling_time_s.value_or(0.0);
  out->steady_state_error_m = m.steady_state_error_m;
  out->max_slack_m = m.max_slack_m;
  out->fallback_ticks = m.fallback_ticks;
  out->mean_lip_solve_ms = m.mean_lip_solve_ms;
  out->mean_grf_solve_ms = m.mean_grf_solve_ms;
  out->settling_reference_s = m.settling_reference_s;
  out->settling_tol_m = m.settling_tol_m;
  g_last_error.clear();
  return QUADREF_OK;
}

quadref_status quadref_run_column(const quadref_run* run, const char* name, double* values,
                                  size_t capacity) {
  if (run == nullptr || name == nullptr || (values == nullptr && capacity > 0)) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  const auto& rows = run->series.rows;
  if (capacity < rows.size()) return Fail(QUADREF_ERR_INVALID_ARGUMENT, "buffer too small");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!Column(rows[i], name, &values[i])) {
      return Fail(QUADREF_ERR_INVALID_ARGUMENT, std::string("unknown column ") + name);
    }
  }
  g_last_error.clear();
  return QUADREF_OK;
}

quadref_status quadref_run_write_csv(const quadref_run* run, const char* path) {
  if (run == nullptr || path == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] { quadref::output::WriteCsv(run->series.rows, path); });
}

quadref_status quadref_run_write_metrics(const quadref_run* run, const char* path) {
  if (run == nullptr || path == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (!run->complete) return Fail(QUADREF_ERR_SIMULATION, "run did not complete");
  return Guard([&] { quadref::output::WriteMetrics(run->series.metrics, path); });
}

quadref_status quadref_run_write_plots(const quadref_run* run, const char* out_dir) {
  if (run == nullptr || out_dir == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] { quadref::output::WritePlots(run->series, out_dir); });
}

void quadref_run_free(quadref_run* run) { delete run; }

quadref_status quadref_pd_gains_from_settling(double mass, double settling_time, double* kp,
                                              double* kd) {
  if (kp == nullptr || kd == nullptr) {
    return Fail(QUADREF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return Guard([&] {
    const auto g = quadref::baseline::GainsFromSettling(mass, settling_time);
    *kp = g.kp;
    *kd = g.kd;
  });
}

}  // extern "C"
