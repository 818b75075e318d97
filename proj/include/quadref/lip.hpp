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

#ifndef QUADREF_LIP_HPP_
#define QUADREF_LIP_HPP_

#include <vector>

#include "quadref/qp.hpp"
#include "quadref/support.hpp"
#include "quadref/types.hpp"

namespace quadref::lip {

struct LipParams {
  double sample_time = 0.04;  // s
  int n_nodes = 50;
  double com_height = 0.40;  // m
  double gravity = kGravity;
  Matrix2d q_pos = Vector2d(100.0, 100.0).asDiagonal();  // basic problem only
  Matrix2d q_vel = Vector2d(200.0, 300.0).asDiagonal();
  Matrix2d q_zmp = Vector2d(100.0, 350.0).asDiagonal();
  Matrix2d q_slack_quad = Vector2d(0.0, 1000.0).asDiagonal();
  Vector2d q_slack_lin = Vector2d(0.0, 1000.0);

  double omega_squared() const { return gravity / com_height; }
};

void Validate(const LipParams& params);

// State of node k is (p_x, p_y, v_x, v_y).
struct LipSolution {
  MatrixXd states;  // 4 x (N + 1)
  MatrixXd zmp;     // 2 x N
  MatrixXd slacks;  // 2 x (N + 1), zero where not used
  double objective = 0.0;
  bool feasible = false;
  qp::Status status = qp::Status::kMaxIter;
  int iterations = 0;

  MatrixXd velocities() const { return states.bottomRows(2); }
};

struct PlanarState {
  Vector2d p;
  Vector2d v;
};

// p+ = p + v T + T^2 g / (2 z) (p - w),  v+ = v + g / z (p - w) T.
PlanarState DynamicsStep(const Vector2d& p, const Vector2d& v, const Vector2d& w,
                         const LipParams& params);

// Open-loop rollout of DynamicsStep from x0 under a 2 x N ZMP sequence.
MatrixXd Rollout(const Vector4d& x0, const MatrixXd& zmp, const LipParams& params);

struct AxisMask {
  bool x = false;
  bool y = true;

  bool operator[](int axis) const { return axis == 0 ? x : y; }
};

// Goal attraction through a position cost. regions: one per node (N entries).
LipSolution SolveBasic(const LipParams& params, const Vector4d& x0,
                       const Vector2d& goal,
                       const std::vector<support::SupportRegion>& regions);

// No position cost; instead s_k >= |p_k - goal| on the masked axes for every
// node k in [window_start, N], with the slacks penalized. window_start > N
// leaves the window empty.
LipSolution SolveTimed(const LipParams& params, const Vector4d& x0,
                       const Vector2d& goal,
                       const std::vector<support::SupportRegion>& regions,
                       int window_start, AxisMask slack_axes = {});

inline int ShrinkWindow(int window) { return window > 0 ? window - 1 : 0; }

}  // namespace quadref::lip

#endif  // QUADREF_LIP_HPP_
