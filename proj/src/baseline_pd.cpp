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

#include "quadref/baseline_pd.hpp"

#include <cmath>

#include "quadref/error.hpp"

namespace quadref::baseline {

void Validate(const PdGains& g) {
  if (!(g.kp >= 0.0) || !(g.kd >= 0.0) || !std::isfinite(g.kp) || !std::isfinite(g.kd)) {
    throw Error(ErrorKind::kConfig, "baseline: gains must be finite and nonnegative");
  }
}

PdGains GainsFromSettling(double mass, double settling_time) {
  if (!(mass > 0.0) || !(settling_time > 0.0)) {
    throw Error(ErrorKind::kConfig, "baseline: mass and settling time must be positive");
  }
  PdGains g;
  g.kp = 16.0 * mass / (settling_time * settling_time);
  g.kd = 2.0 * std::sqrt(mass * g.kp);
  return g;
}

double FfForce(double goal_y, double p_y, double v_y, double v_usr_y, const PdGains& g) {
  return g.kp * (goal_y - p_y) + g.kd * (v_usr_y - v_y);
}

}  // namespace quadref::baseline
