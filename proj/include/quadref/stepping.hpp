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

#ifndef QUADREF_STEPPING_HPP_
#define QUADREF_STEPPING_HPP_

#include <array>
#include <optional>

#include "quadref/gait.hpp"
#include "quadref/types.hpp"

namespace quadref::stepping {

struct HipLayout {
  // Row i: X-Y offset of hip i from the CoM, body frame, leg order LF RF LH RH.
  Eigen::Matrix<double, kNumLegs, 2> hip_offsets;
  double stance_height = 0.40;  // m
  double reach_radius = 0.25;   // m, clamp on the velocity offset

  static HipLayout Default();
};

void Validate(const HipLayout& layout);

enum class FootholdSource { kHeuristic, kRefined };

struct FootholdSeq {
  MatrixXd p_f;  // 12 x N_g, stacked XYZ per leg
  FootholdSource source = FootholdSource::kHeuristic;
  bool clamped = false;  // some offset hit the reach radius
};

// Where each leg currently stands, if known. Legs in stance at node 0 with a
// value here keep it for the whole stance phase.
using MeasuredFeet = std::array<std::optional<Vector2d>, kNumLegs>;

// Robocentric stepping. v_ref is 2 x (N_g + 1); delta has N_g columns.
//
// The hip ground projection is predicted by integrating v_ref from com_xy0
// with forward Euler at the schedule's sample time. At every touchdown node
// k_td a leg is placed at
//   projected hip(k_td) + 0.5 * T_stance * v_ref(:, k_td)
// and stays there for the whole stance. Legs already in stance at node 0 use
// `measured` when given, otherwise com_xy0 + hip offset. Swing columns hold
// the next touchdown target (or the current hip projection when no touchdown
// falls inside the horizon).
FootholdSeq PlanFootholds(const MatrixXd& v_ref, const gait::GaitStatusSeq& delta,
                          const Vector2d& com_xy0, const HipLayout& layout,
                          const gait::GaitSpec& gait,
                          const MeasuredFeet& measured = {});

// Largest XY change over stance entries between two plans.
double MaxStanceChange(const FootholdSeq& a, const FootholdSeq& b,
                       const gait::GaitStatusSeq& delta);

}  // namespace quadref::stepping

#endif  // QUADREF_STEPPING_HPP_
