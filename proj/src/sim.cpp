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

#include "quadref/sim.hpp"

#include <algorithm>
#include <cmath>

#include "quadref/error.hpp"
#include "quadref/grf.hpp"

namespace quadref::sim {

void Validate(const SimConfig& c) {
  if (!(c.duration > 0.0) || c.substeps < 1) {
    throw Error(ErrorKind::kConfig, "sim: need duration > 0 and substeps >= 1");
  }
  if (!(c.mass > 0.0) || !(c.com_height > 0.0)) {
    throw Error(ErrorKind::kConfig, "sim: mass and com_height must be positive");
  }
  for (const auto& push : c.pushes) {
    if (!(push.duration >= 0.0) || !std::isfinite(push.start) || !push.force.allFinite()) {
      throw Error(ErrorKind::kConfig, "sim: malformed push profile");
    }
  }
  if (!c.lateral_drift_force.allFinite() || !c.initial_position.allFinite() ||
      !c.initial_velocity.allFinite()) {
    throw Error(ErrorKind::kConfig, "sim: non-finite drift or initial state");
  }
}

void Validate(const Scenario& s) {
  Validate(s.sim);
  governor::Validate(s.governor, s.lip);
  gait::Validate(s.gait);
  stepping::Validate(s.layout);
  baseline::Validate(s.pd_gains);
  if (std::abs(s.sim.mass - s.governor.mass) > 1e-12 ||
      std::abs(s.sim.com_height - s.lip.com_height) > 1e-12) {
    throw Error(ErrorKind::kConfig, "sim: mass and CoM height must agree across modules");
  }
}

Vector2d PushForce(const SimConfig& c, double t) {
  constexpr double kEps = 1e-9;
  Vector2d f = Vector2d::Zero();
  for (const auto& push : c.pushes) {
    if (t >= push.start - kEps && t < push.start + push.duration - kEps) f += push.force;
  }
  return f;
}

SimState IntegrateTick(const SimState& state, const Eigen::Ref<const VectorXd>& u_col,
                       const ContactFlags& delta_k, const Vector2d& external,
                       const SimConfig& config, double sample_time) {
  if (u_col.size() != 3 * kNumLegs) {
    throw Error(ErrorKind::kConfig, "sim: force column must have 12 rows");
  }
  Vector2d horizontal = external;
  double vertical = 0.0;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (delta_k[leg] != 1) continue;
    horizontal += u_col.segment<2>(3 * leg);
    vertical += u_col(3 * leg + 2);
  }
  const double weight = config.mass * kGravity;
  if (!(std::abs(vertical - weight) <= 0.05 * weight)) {
    throw Error(ErrorKind::kSimulation, "sim: stance legs do not carry the weight at t = " +
                                            std::to_string(state.t));
  }
  // Forces are constant over the tick, so each substep is exact.
  const Vector2d a = horizontal / config.mass;
  const double dt = sample_time / config.substeps;
  SimState next = state;
  for (int i = 0; i < config.substeps; ++i) {
    next.p += next.v * dt + 0.5 * a * dt * dt;
    next.v += a * dt;
  }
  next.t = state.t + sample_time;
  if (!next.p.allFinite() || !next.v.allFinite()) {
    throw Error(ErrorKind::kSimulation, "sim: state diverged");
  }
  return next;
}

void RunScenario(const Scenario& scenario, TimeSeries* out) {
  Validate(scenario);
  governor::GovernorConfig gov_config = scenario.governor;
  const bool pd = scenario.controller == ControllerKind::kPdBaseline;
  if (pd) {
    gov_config.force_heuristic = true;
    gov_config.force_optimize = false;
  }
  governor::Governor gov(gov_config, scenario.lip, scenario.gait, scenario.layout);
  const double ts = scenario.lip.sample_time;
  const int ticks = TickCount(scenario.sim.duration, ts);

  out->rows.clear();
  out->rows.reserve(ticks);
  SimState state;
  state.p = scenario.sim.initial_position;
  state.v = scenario.sim.initial_velocity;
  for (int i = 0; i < ticks; ++i) {
    state.t = i * ts;
    const Vector4d x_act(state.p.x(), state.p.y(), state.v.x(), state.v.y());
    const governor::ReferenceBundle b = gov.Tick(x_act, state.t);

    TickRecord row;
    row.t = state.t;
    row.p = state.p;
    row.v = state.v;
    row.ref_v = b.v_ref.col(0);
    row.goal = b.p_goal;
    row.status = b.status_used;
    row.window_m = b.window_m;
    row.u = b.u_ref.col(0);
    row.push = PushForce(scenario.sim, state.t);
    row.lip_ms = b.lip_ms;
    row.grf_ms = b.grf_ms;
    const ContactFlags delta0 = b.delta.column(0);
    row.zmp_recon = grf::ReconstructZmp(row.u, b.footholds.p_f.col(0), delta0);
    if (b.plan) {
      row.zmp = b.plan->zmp.col(0);
      row.slack_y_max = b.plan->slacks.row(1).maxCoeff();
    } else {
      row.zmp = row.zmp_recon;
    }
    out->rows.push_back(row);

    Vector2d external = row.push + scenario.sim.lateral_drift_force;
    if (pd) {
      external.y() += baseline::FfForce(b.p_goal.y(), state.p.y(), state.v.y(),
                                        gov_config.v_usr.y(), scenario.pd_gains);
    }
    state = IntegrateTick(state, row.u, delta0, external, scenario.sim, ts);
  }
  out->metrics = ComputeMetrics(out->rows, scenario);
}

Metrics ComputeMetrics(const std::vector<TickRecord>& rows, const Scenario& scenario) {
  Metrics m;
  m.settling_tol_m = scenario.governor.tol;
  for (const auto& push : scenario.sim.pushes) {
    m.settling_reference_s = std::max(m.settling_reference_s, push.start + push.duration);
  }
  if (rows.empty()) return m;

  // Earliest row from which |p_y - goal_y| stays below tol to the end.
  std::optional<std::size_t> settled;
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (rows[i].t < m.settling_reference_s - 1e-9) break;
    if (!(std::abs(rows[i].p.y() - rows[i].goal.y()) < m.settling_tol_m)) break;
    settled = i;
  }
  if (settled) m.settling_time_s = rows[*settled].t - m.settling_reference_s;

  const double final_start = rows.back().t + scenario.lip.sample_time - 1.0;
  double sum = 0.0;
  int count = 0;
  double lip_sum = 0.0, grf_sum = 0.0;
  int lip_count = 0, grf_count = 0;
  for (const auto& r : rows) {
    if (r.t >= final_start - 1e-9) {
      sum += std::abs(r.p.y() - r.goal.y());
      ++count;
    }
    m.max_slack_m = std::max(m.max_slack_m, r.slack_y_max);
    if (r.status == governor::Emitted::kFallback) ++m.fallback_ticks;
    if (r.lip_ms > 0.0) {
      lip_sum += r.lip_ms;
      ++lip_count;
    }
    if (r.grf_ms > 0.0) {
      grf_sum += r.grf_ms;
      ++grf_count;
    }
  }
  m.steady_state_error_m = count > 0 ? sum / count : 0.0;
  m.mean_lip_solve_ms = lip_count > 0 ? lip_sum / lip_count : 0.0;
  m.mean_grf_solve_ms = grf_count > 0 ? grf_sum / grf_count : 0.0;
  return m;
}

}  // namespace quadref::sim
