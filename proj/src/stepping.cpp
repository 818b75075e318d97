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

#include "quadref/stepping.hpp"

#include <algorithm>
#include <cmath>

#include "quadref/error.hpp"

namespace quadref::stepping {

HipLayout HipLayout::Default() {
  HipLayout l;
  l.hip_offsets << 0.24, 0.13,  //
      0.24, -0.13,              //
      -0.24, 0.13,              //
      -0.24, -0.13;
  return l;
}

void Validate(const HipLayout& layout) {
  const auto& h = layout.hip_offsets;
  if (!h.allFinite()) {
    throw Error(ErrorKind::kConfig, "stepping: non-finite hip offsets");
  }
  constexpr double kTol = 1e-9;
  // Left/right mirrored in Y, front/hind mirrored in X.
  const bool mirrored =
      std::abs(h(0, 0) - h(1, 0)) < kTol && std::abs(h(0, 1) + h(1, 1)) < kTol &&
      std::abs(h(2, 0) - h(3, 0)) < kTol && std::abs(h(2, 1) + h(3, 1)) < kTol &&
      std::abs(h(0, 0) + h(2, 0)) < kTol && std::abs(h(0, 1) - h(2, 1)) < kTol;
  if (!mirrored) {
    throw Error(ErrorKind::kConfig, "stepping: hip layout must be mirror-symmetric");
  }
  if (!(layout.stance_height > 0.0)) {
    throw Error(ErrorKind::kConfig, "stepping: stance_height must be positive");
  }
  if (!(layout.reach_radius > 0.0)) {
    throw Error(ErrorKind::kConfig, "stepping: reach_radius must be positive");
  }
}

FootholdSeq PlanFootholds(const MatrixXd& v_ref, const gait::GaitStatusSeq& delta,
                          const Vector2d& com_xy0, const HipLayout& layout,
                          const gait::GaitSpec& gait, const MeasuredFeet& measured) {
  const int n = delta.num_nodes();
  if (v_ref.rows() != 2 || v_ref.cols() != n + 1) {
    throw Error(ErrorKind::kConfig, "stepping: v_ref must be 2 x (N_g + 1)");
  }
  const double ts = delta.sample_time;
  const double half_stance = 0.5 * gait.stance_duration();

  // Projected CoM (hip reference point) per node.
  Eigen::Matrix2Xd com(2, n);
  com.col(0) = com_xy0;
  for (int k = 1; k < n; ++k) com.col(k) = com.col(k - 1) + v_ref.col(k - 1) * ts;

  FootholdSeq seq;
  seq.p_f = MatrixXd::Zero(3 * kNumLegs, n);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Vector2d hip = layout.hip_offsets.row(leg).transpose();
    auto touchdown = [&](int k) {
      Vector2d offset = half_stance * v_ref.col(k);
      const double norm = offset.norm();
      if (norm > layout.reach_radius) {
        offset *= layout.reach_radius / norm;
        seq.clamped = true;
      }
      return Vector2d(com.col(k) + hip + offset);
    };

    Vector2d current = Vector2d::Zero();
    if (delta.delta(leg, 0) == 1) {
      current = measured[leg].value_or(Vector2d(com_xy0 + hip));
    }
    for (int k = 0; k < n; ++k) {
      const bool stance = delta.delta(leg, k) == 1;
      if (stance) {
        if (k > 0 && delta.delta(leg, k - 1) == 0) {
          current = touchdown(k);
        }
        seq.p_f.block<2, 1>(3 * leg, k) = current;
      } else {
        int next = k + 1;
        while (next < n && delta.delta(leg, next) == 0) ++next;
        const Vector2d target =
            next < n ? touchdown(next) : Vector2d(com.col(k) + hip);
        seq.p_f.block<2, 1>(3 * leg, k) = target;
      }
    }
  }
  return seq;
}

double MaxStanceChange(const FootholdSeq& a, const FootholdSeq& b,
                       const gait::GaitStatusSeq& delta) {
  double worst = 0.0;
  for (int k = 0; k < delta.num_nodes(); ++k) {
    for (int leg = 0; leg < kNumLegs; ++leg) {
      if (delta.delta(leg, k) != 1) continue;
      const Vector2d d =
          a.p_f.block<2, 1>(3 * leg, k) - b.p_f.block<2, 1>(3 * leg, k);
      worst = std::max(worst, d.norm());
    }
  }
  return worst;
}

}  // namespace quadref::stepping
