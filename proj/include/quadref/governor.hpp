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

#ifndef QUADREF_GOVERNOR_HPP_
#define QUADREF_GOVERNOR_HPP_

#include <cmath>
#include <deque>
#include <optional>
#include <string>

#include "quadref/gait.hpp"
#include "quadref/grf.hpp"
#include "quadref/lip.hpp"
#include "quadref/stepping.hpp"
#include "quadref/types.hpp"

namespace quadref::governor {

enum class Status { kHeuristic, kOptimize };
enum class Emitted { kHeuristic, kOptimize, kFallback };
enum class GoalMode { kVelocityIntegrated, kFixedY, kFixedXY };

const char* ToString(Status s);
const char* ToString(Emitted e);

struct GovernorConfig {
  double tol = 0.01;            // m
  double response_time = 4.8;   // s
  Vector2d v_usr = Vector2d::Zero();
  GoalMode goal_mode = GoalMode::kVelocityIntegrated;
  Vector2d fixed_goal = Vector2d::Zero();
  int max_refine_iters = 3;
  int n_nmpc = 50;              // force nodes emitted, <= LIP nodes
  double refine_tol = 1e-3;     // m
  bool use_timed_formulation = true;
  lip::AxisMask slack_axes;
  // Pin the status regardless of the error test.
  bool force_optimize = false;
  bool force_heuristic = false;
  double mass = 22.0;           // kg
  Matrix2d q_u = Vector2d(100.0, 100.0).asDiagonal();
  Matrix3d q_k = Matrix3d::Identity();
};

void Validate(const GovernorConfig& config, const lip::LipParams& lip);

inline int InitialWindow(const GovernorConfig& c, const lip::LipParams& lip) {
  return static_cast<int>(std::lround(c.response_time / lip.sample_time));
}

struct GovernorState {
  Status status = Status::kHeuristic;
  bool started = false;
  Vector2d p_goal = Vector2d::Zero();
  int window_m = 0;
  std::deque<Vector2d> com_history;  // one sample per tick, last cycle only
  Vector2d p_bar = Vector2d::Zero();
  stepping::MeasuredFeet feet;       // where stance legs stand next tick
};

struct ReferenceBundle {
  MatrixXd v_ref;  // 2 x (N + 1)
  MatrixXd u_ref;  // 12 x n_nmpc
  stepping::FootholdSeq footholds;
  gait::GaitStatusSeq delta;
  Emitted status_used = Emitted::kHeuristic;
  Vector2d error = Vector2d::Zero();
  Vector2d p_goal = Vector2d::Zero();
  Vector2d p_bar = Vector2d::Zero();
  int window_m = 0;               // window used by this tick's solve
  std::optional<lip::LipSolution> plan;
  int refine_iters = 0;
  double refine_change = 0.0;     // foothold change at loop exit
  bool refine_capped = false;
  int grf_bound_hits = 0;
  double lip_ms = 0.0;            // mean per LIP solve this tick
  double grf_ms = 0.0;            // mean per node QP this tick
  std::string fallback_reason;
};

// p_bar over the last cycle; x_act until a full cycle has been recorded.
void RecordCom(GovernorState* state, const Vector2d& p_act, int cycle_samples);

void UpdateGoal(GovernorState* state, const GovernorConfig& config,
                const lip::LipParams& lip, const Vector2d& p_act, bool first_tick);

Vector2d ComputeError(const GovernorState& state, const GovernorConfig& config,
                      const lip::LipParams& lip);

// (0, 0, m g / |C|) per stance leg, zero for swing legs.
VectorXd GravityCompensation(const ContactFlags& delta_k, double mass, double gravity);

class Governor {
 public:
  Governor(GovernorConfig config, lip::LipParams lip, gait::GaitSpec gait,
           stepping::HipLayout layout);

  ReferenceBundle Tick(const Vector4d& x_act, double t_now);

  const GovernorState& state() const { return state_; }
  const GovernorConfig& config() const { return config_; }
  const lip::LipParams& lip_params() const { return lip_; }

 private:
  void EmitHeuristic(const Vector4d& x_act, ReferenceBundle* out) const;
  bool TryOptimize(const Vector4d& x_act, ReferenceBundle* out);

  GovernorConfig config_;
  lip::LipParams lip_;
  gait::GaitSpec gait_;
  stepping::HipLayout layout_;
  GovernorState state_;
};

}  // namespace quadref::governor

#endif  // QUADREF_GOVERNOR_HPP_
