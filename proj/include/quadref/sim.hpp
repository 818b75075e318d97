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

#ifndef QUADREF_SIM_HPP_
#define QUADREF_SIM_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "quadref/baseline_pd.hpp"
#include "quadref/gait.hpp"
#include "quadref/governor.hpp"
#include "quadref/lip.hpp"
#include "quadref/stepping.hpp"
#include "quadref/types.hpp"

namespace quadref::sim {

struct Push {
  double start = 0.0;     // s
  double duration = 0.0;  // s
  Vector2d force = Vector2d::Zero();
};

struct SimConfig {
  double duration = 15.0;  // s
  int substeps = 8;
  std::vector<Push> pushes;
  Vector2d lateral_drift_force = Vector2d::Zero();
  double mass = 22.0;
  double com_height = 0.40;
  Vector2d initial_position = Vector2d::Zero();
  Vector2d initial_velocity = Vector2d::Zero();
};

void Validate(const SimConfig& config);

struct SimState {
  double t = 0.0;
  Vector2d p = Vector2d::Zero();
  Vector2d v = Vector2d::Zero();
};

// Sum of the push profiles active at time t.
Vector2d PushForce(const SimConfig& config, double t);

// Advances one planning tick under constant forces: the stance-leg horizontal
// GRFs of u_col plus `external`. Throws Error(kSimulation) when the stance
// legs do not carry the weight within 5%.
SimState IntegrateTick(const SimState& state, const Eigen::Ref<const VectorXd>& u_col,
                       const ContactFlags& delta_k, const Vector2d& external,
                       const SimConfig& config, double sample_time);

enum class ControllerKind { kGovernor, kPdBaseline };

struct Scenario {
  SimConfig sim;
  governor::GovernorConfig governor;
  lip::LipParams lip;
  gait::GaitSpec gait;
  stepping::HipLayout layout = stepping::HipLayout::Default();
  ControllerKind controller = ControllerKind::kGovernor;
  baseline::PdGains pd_gains;
};

// Checks cross-module consistency (mass, CoM height) and every module's own
// invariants.
void Validate(const Scenario& scenario);

struct TickRecord {
  double t = 0.0;
  Vector2d p = Vector2d::Zero();
  Vector2d v = Vector2d::Zero();
  Vector2d ref_v = Vector2d::Zero();
  Vector2d zmp = Vector2d::Zero();
  Vector2d zmp_recon = Vector2d::Zero();
  Vector2d goal = Vector2d::Zero();
  governor::Emitted status = governor::Emitted::kHeuristic;
  int window_m = 0;
  double slack_y_max = 0.0;
  Eigen::Matrix<double, 12, 1> u = Eigen::Matrix<double, 12, 1>::Zero();
  Vector2d push = Vector2d::Zero();
  double lip_ms = 0.0;
  double grf_ms = 0.0;
};

struct Metrics {
  std::optional<double> settling_time_s;
  double steady_state_error_m = 0.0;
  double max_slack_m = 0.0;
  int fallback_ticks = 0;
  double mean_lip_solve_ms = 0.0;
  double mean_grf_solve_ms = 0.0;
  // Inputs to the settling test, reported so the numbers can be rechecked.
  double settling_reference_s = 0.0;
  double settling_tol_m = 0.0;
};

struct TimeSeries {
  std::vector<TickRecord> rows;
  Metrics metrics;
};

inline int TickCount(double duration, double sample_time) {
  return static_cast<int>(std::floor(duration / sample_time + 1e-9));
}

// Runs the closed loop, appending one row per tick to `out` as it goes so a
// fault leaves the rows up to the failing tick. Metrics are filled on success.
void RunScenario(const Scenario& scenario, TimeSeries* out);

Metrics ComputeMetrics(const std::vector<TickRecord>& rows, const Scenario& scenario);

}  // namespace quadref::sim

#endif  // QUADREF_SIM_HPP_
