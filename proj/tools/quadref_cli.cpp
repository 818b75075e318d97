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


// quadref: runs a scenario file and writes timeseries.csv, metrics.json and
// SVG plots. Exit codes: 0 ok, 2 solver/simulation/IO fault, 3 config error.

#include <cstdio>
#include <filesystem>
#include <string>
#include <system_error>

#include <CLI11.hpp>

#include "quadref/quadref.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFault = 2;
constexpr int kExitConfig = 3;

int ExitCode(quadref_status s) {
  if (s == QUADREF_OK) return kExitOk;
  if (s == QUADREF_ERR_CONFIG || s == QUADREF_ERR_INVALID_ARGUMENT) return kExitConfig;
  return kExitFault;
}

int Report(const char* what, quadref_status s) {
  std::fprintf(stderr, "quadref: %s: %s: %s\n", what, quadref_status_string(s),
               quadref_last_error());
  return ExitCode(s);
}

void PrintSummary(const quadref_metrics& m, std::size_t rows) {
  std::printf("ticks                 %zu\n", rows);
  if (m.settled) {
    std::printf("settling_time_s       %.4f (tol %.4g m, from t = %.4g s)\n", m.settling_time_s,
                m.settling_tol_m, m.settling_reference_s);
  } else {
    std::printf("settling_time_s       not settled (tol %.4g m, from t = %.4g s)\n",
                m.settling_tol_m, m.settling_reference_s);
  }
  std::printf("steady_state_error_m  %.6f\n", m.steady_state_error_m);
  std::printf("max_slack_m           %.6f\n", m.max_slack_m);
  std::printf("fallback_ticks        %d\n", m.fallback_ticks);
  std::printf("mean_lip_solve_ms     %.3f\n", m.mean_lip_solve_ms);
  std::printf("mean_grf_solve_ms     %.4f\n", m.mean_grf_solve_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Reference generation for a trotting quadruped: runs one closed-loop scenario.",
               "quadref");
  std::string scenario_path;
  std::string out_dir = "./out";
  long long seed = 0;
  bool no_plots = false;
  app.add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed,
                 "Seed for randomized runs; the bundled scenarios are deterministic");
  app.add_flag("--no-plots", no_plots, "Skip the SVG plots");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  quadref_scenario* scenario = nullptr;
  quadref_status s = quadref_scenario_load(scenario_path.c_str(), &scenario);
  if (s != QUADREF_OK) return Report("loading scenario", s);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "quadref: cannot create %s: %s\n", out_dir.c_str(),
                 ec.message().c_str());
    quadref_scenario_free(scenario);
    return kExitFault;
  }
  const std::filesystem::path dir(out_dir);
  const std::string csv = (dir / "timeseries.csv").string();

  quadref_run* run = nullptr;
  s = quadref_run_scenario(scenario, &run);
  quadref_scenario_free(scenario);
  if (s != QUADREF_OK) {
    const int code = Report("run aborted", s);
    if (run != nullptr && quadref_run_write_csv(run, csv.c_str()) == QUADREF_OK) {
      std::fprintf(stderr, "quadref: wrote %zu rows before the fault to %s\n",
                   quadref_run_rows(run), csv.c_str());
    }
    quadref_run_free(run);
    return code;
  }

  int code = kExitOk;
  if ((s = quadref_run_write_csv(run, csv.c_str())) != QUADREF_OK) {
    code = Report("writing CSV", s);
  } else if ((s = quadref_run_write_metrics(run, (dir / "metrics.json").string().c_str())) !=
             QUADREF_OK) {
    code = Report("writing metrics", s);
  } else if (!no_plots && (s = quadref_run_write_plots(run, out_dir.c_str())) != QUADREF_OK) {
    code = Report("writing plots", s);
  }
  if (code == kExitOk) {
    quadref_metrics m;
    quadref_run_metrics(run, &m);
    PrintSummary(m, quadref_run_rows(run));
  }
  quadref_run_free(run);
  return code;
}
