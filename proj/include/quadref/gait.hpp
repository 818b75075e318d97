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

#ifndef QUADREF_GAIT_HPP_
#define QUADREF_GAIT_HPP_

#include <array>
#include <vector>

#include "quadref/types.hpp"

namespace quadref::gait {

enum class GaitKind { kTrot, kPace, kStand };

struct GaitSpec {
  GaitKind kind = GaitKind::kTrot;
  double cycle_time = 1.0;   // s
  double duty_factor = 0.65;
  std::array<double, kNumLegs> phase_offsets = {0.0, 0.5, 0.5, 0.0};

  // Offsets fixed per gait kind: trot pairs the diagonals (LF,RH)/(RF,LH),
  // pace the lateral pairs (LF,LH)/(RF,RH). Stand is permanent stance.
  static GaitSpec Trot(double cycle_time, double duty_factor);
  static GaitSpec Pace(double cycle_time, double duty_factor);
  static GaitSpec Stand();

  double stance_duration() const { return duty_factor * cycle_time; }
};

// Throws Error(kConfig) when the spec breaks its invariants.
void Validate(const GaitSpec& spec);

// Contact schedule over a horizon: delta(i, k) = 1 when leg i is in stance at
// node k, i.e. at time t0 + k * sample_time.
struct GaitStatusSeq {
  Eigen::Matrix<int, kNumLegs, Eigen::Dynamic> delta;
  double t0 = 0.0;
  double sample_time = 0.04;

  int num_nodes() const { return static_cast<int>(delta.cols()); }
  ContactFlags column(int k) const;
};

GaitStatusSeq Schedule(const GaitSpec& spec, double t0, int n_nodes,
                       double sample_time);

// Indices of the legs in stance, in leg order.
std::vector<int> ContactSet(const ContactFlags& delta_k);

}  // namespace quadref::gait

#endif  // QUADREF_GAIT_HPP_
