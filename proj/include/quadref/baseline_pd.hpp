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

#ifndef QUADREF_BASELINE_PD_HPP_
#define QUADREF_BASELINE_PD_HPP_

namespace quadref::baseline {

struct PdGains {
  double kp = 0.0;  // N/m
  double kd = 0.0;  // N s/m
};

void Validate(const PdGains& gains);

// Critically damped gains whose 4 / (zeta omega_n) settling time matches.
PdGains GainsFromSettling(double mass, double settling_time);

// Cartesian feed-forward force on the lateral axis.
double FfForce(double goal_y, double p_y, double v_y, double v_usr_y, const PdGains& g);

}  // namespace quadref::baseline

#endif  // QUADREF_BASELINE_PD_HPP_
