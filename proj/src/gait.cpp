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

#include "quadref/gait.hpp"

#include <cmath>

#include "quadref/error.hpp"

namespace quadref::gait {
namespace {

bool Near(double a, double b) { return std::abs(a - b) < 1e-12; }

// Fractional part in [0, 1). Phases a hair below an integer are snapped up so
// that node boundaries computed as k * T_s / T_c land on the right side.
double Frac(double x) {
  double f = x - std::floor(x);
  if (f > 1.0 - 1e-9) f = 0.0;
  return f;
}

}  // namespace

GaitSpec GaitSpec::Trot(double cycle_time, double duty_factor) {
  return {GaitKind::kTrot, cycle_time, duty_factor, {0.0, 0.5, 0.5, 0.0}};
}

GaitSpec GaitSpec::Pace(double cycle_time, double duty_factor) {
  return {GaitKind::kPace, cycle_time, duty_factor, {0.0, 0.5, 0.0, 0.5}};
}

GaitSpec GaitSpec::Stand() {
  return {GaitKind::kStand, 1.0, 1.0, {0.0, 0.0, 0.0, 0.0}};
}

void Validate(const GaitSpec& spec) {
  if (!(spec.cycle_time > 0.0)) {
    throw Error(ErrorKind::kConfig, "gait: cycle_time must be positive");
  }
  if (!(spec.duty_factor > 0.0 && spec.duty_factor <= 1.0)) {
    throw Error(ErrorKind::kConfig, "gait: duty_factor must lie in (0, 1]");
  }
  for (double o : spec.phase_offsets) {
    if (!(o >= 0.0 && o < 1.0)) {
      throw Error(ErrorKind::kConfig, "gait: phase offsets must lie in [0, 1)");
    }
  }
  const auto& o = spec.phase_offsets;
  auto half_apart = [](double a, double b) { return Near(Frac(a - b + 1.0), 0.5); };
  switch (spec.kind) {
    case GaitKind::kTrot:
      if (!Near(o[0], o[3]) || !Near(o[1], o[2]) || !half_apart(o[0], o[1])) {
        throw Error(ErrorKind::kConfig,
                    "gait: trot needs LF=RH, RF=LH and pairs half a cycle apart");
      }
      break;
    case GaitKind::kPace:
      if (!Near(o[0], o[2]) || !Near(o[1], o[3]) || !half_apart(o[0], o[1])) {
        throw Error(ErrorKind::kConfig,
                    "gait: pace needs LF=LH, RF=RH and pairs half a cycle apart");
      }
      break;
    case GaitKind::kStand:
      if (spec.duty_factor != 1.0) {
        throw Error(ErrorKind::kConfig, "gait: stand needs duty_factor 1");
      }
      break;
  }
}

ContactFlags GaitStatusSeq::column(int k) const {
  ContactFlags c{};
  for (int i = 0; i < kNumLegs; ++i) c[i] = delta(i, k);
  return c;
}

GaitStatusSeq Schedule(const GaitSpec& spec, double t0, int n_nodes,
                       double sample_time) {
  Validate(spec);
  if (n_nodes < 1 || !(sample_time > 0.0)) {
    throw Error(ErrorKind::kConfig, "gait: need n_nodes >= 1 and sample_time > 0");
  }
  GaitStatusSeq seq;
  seq.t0 = t0;
  seq.sample_time = sample_time;
  seq.delta.resize(kNumLegs, n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const double cycles = (t0 + k * sample_time) / spec.cycle_time;
    for (int i = 0; i < kNumLegs; ++i) {
      const double phase = Frac(cycles + spec.phase_offsets[i]);
      seq.delta(i, k) = phase < spec.duty_factor - 1e-9 ? 1 : 0;
    }
  }
  return seq;
}

std::vector<int> ContactSet(const ContactFlags& delta_k) {
  std::vector<int> c;
  for (int i = 0; i < kNumLegs; ++i) {
    if (delta_k[i] == 1) c.push_back(i);
  }
  return c;
}

}  // namespace quadref::gait
