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

#include "quadref/governor.hpp"

#include <chrono>
#include <exception>

#include "quadref/error.hpp"
#include "quadref/support.hpp"

namespace quadref::governor {
namespace {

using Clock = std::chrono::steady_clock;

template <typename M>
bool IsPsd(const M& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
    return false;
  }
  return Eigen::SelfAdjointEigenSolver<M>(m).eigenvalues().minCoeff() >= -1e-12;
}

double MillisSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

MatrixXd ConstantColumns(const Vector2d& v, int cols) {
  MatrixXd m(2, cols);
  m.colwise() = v;
  return m;
}

}  // namespace

const char* ToString(Status s) {
  return s == Status::kOptimize ? "OPTIMIZE" : "HEURISTIC";
}

const char* ToString(Emitted e) {
  switch (e) {
    case Emitted::kHeuristic:
      return "HEURISTIC";
    case Emitted::kOptimize:
      return "OPTIMIZE";
    case Emitted::kFallback:
      return "FALLBACK";
  }
  return "?";
}

void Validate(const GovernorConfig& c, const lip::LipParams& lip) {
  lip::Validate(lip);
  if (!(c.tol > 0.0)) throw Error(ErrorKind::kConfig, "governor: tol must be positive");
  if (!(c.response_time >= lip.sample_time)) {
    throw Error(ErrorKind::kConfig, "governor: response_time must be >= sample_time");
  }
  if (c.max_refine_iters < 1) {
    throw Error(ErrorKind::kConfig, "governor: max_refine_iters must be >= 1");
  }
  if (c.n_nmpc < 1 || c.n_nmpc > lip.n_nodes) {
    throw Error(ErrorKind::kConfig, "governor: n_nmpc must be in [1, n_nodes]");
  }
  if (!(c.refine_tol > 0.0)) {
    throw Error(ErrorKind::kConfig, "governor: refine_tol must be positive");
  }
  if (!c.v_usr.allFinite() || !c.fixed_goal.allFinite()) {
    throw Error(ErrorKind::kConfig, "governor: non-finite velocity or goal");
  }
  if (c.force_optimize && c.force_heuristic) {
    throw Error(ErrorKind::kConfig,
                "governor: force_optimize and force_heuristic are exclusive");
  }
  if (!(c.mass > 0.0)) throw Error(ErrorKind::kConfig, "governor: mass must be positive");
  if (!IsPsd(c.q_u) || !IsPsd(c.q_k)) {
    throw Error(ErrorKind::kConfig, "governor: force weights must be symmetric PSD");
  }
}

void RecordCom(GovernorState* state, const Vector2d& p_act, int cycle_samples) {
  state->com_history.push_back(p_act);
  while (static_cast<int>(state->com_history.size()) > cycle_samples) {
    state->com_history.pop_front();
  }
  if (static_cast<int>(state->com_history.size()) < cycle_samples) {
    state->p_bar = p_act;
    return;
  }
  Vector2d sum = Vector2d::Zero();
  for (const auto& p : state->com_history) sum += p;
  state->p_bar = sum / static_cast<double>(state->com_history.size());
}

void UpdateGoal(GovernorState* state, const GovernorConfig& c, const lip::LipParams& lip,
                const Vector2d& p_act, bool first_tick) {
  if (first_tick) {
    state->p_goal = p_act + lip.n_nodes * lip.sample_time * c.v_usr;
  } else {
    state->p_goal += lip.sample_time * c.v_usr;
  }
  if (c.goal_mode == GoalMode::kFixedY || c.goal_mode == GoalMode::kFixedXY) {
    state->p_goal.y() = c.fixed_goal.y();
  }
  if (c.goal_mode == GoalMode::kFixedXY) state->p_goal.x() = c.fixed_goal.x();
}

Vector2d ComputeError(const GovernorState& s, const GovernorConfig& c,
                      const lip::LipParams& lip) {
  return s.p_goal - (s.p_bar + lip.n_nodes * lip.sample_time * c.v_usr);
}

VectorXd GravityCompensation(const ContactFlags& delta_k, double mass, double gravity) {
  const auto legs = gait::ContactSet(delta_k);
  if (legs.empty()) {
    throw Error(ErrorKind::kDegenerateSupport, "governor: no stance legs to carry weight");
  }
  VectorXd u = VectorXd::Zero(3 * kNumLegs);
  for (int leg : legs) u(3 * leg + 2) = mass * gravity / static_cast<double>(legs.size());
  return u;
}

Governor::Governor(GovernorConfig config, lip::LipParams lip, gait::GaitSpec gait,
                   stepping::HipLayout layout)
    : config_(std::move(config)), lip_(std::move(lip)), gait_(gait), layout_(layout) {
  Validate(config_, lip_);
  gait::Validate(gait_);
  stepping::Validate(layout_);
}

void Governor::EmitHeuristic(const Vector4d& x_act, ReferenceBundle* out) const {
  const int n = lip_.n_nodes;
  out->v_ref = ConstantColumns(config_.v_usr, n + 1);
  out->footholds = stepping::PlanFootholds(out->v_ref, out->delta, x_act.head<2>(),
                                           layout_, gait_, state_.feet);
  out->u_ref = MatrixXd::Zero(3 * kNumLegs, config_.n_nmpc);
  for (int k = 0; k < config_.n_nmpc; ++k) {
    const ContactFlags d = out->delta.column(k);
    if (gait::ContactSet(d).empty()) continue;  // flight node carries nothing
    out->u_ref.col(k) = GravityCompensation(d, config_.mass, lip_.gravity);
  }
}

bool Governor::TryOptimize(const Vector4d& x_act, ReferenceBundle* out) {
  const int n = lip_.n_nodes;
  stepping::FootholdSeq feet = stepping::PlanFootholds(
      ConstantColumns(config_.v_usr, n + 1), out->delta, x_act.head<2>(), layout_, gait_,
      state_.feet);
  stepping::FootholdSeq solved_feet;
  lip::LipSolution plan;
  double lip_total = 0.0;
  for (int it = 1; it <= config_.max_refine_iters; ++it) {
    std::vector<support::SupportRegion> regions;
    regions.reserve(n);
    for (int k = 0; k < n; ++k) {
      regions.push_back(support::BuildRegion(feet.p_f.col(k), out->delta.column(k)));
    }
    const auto start = Clock::now();
    plan = config_.use_timed_formulation
               ? lip::SolveTimed(lip_, x_act, state_.p_goal, regions, state_.window_m,
                                 config_.slack_axes)
               : lip::SolveBasic(lip_, x_act, state_.p_goal, regions);
    lip_total += MillisSince(start);
    out->refine_iters = it;
    if (!plan.feasible) {
      out->lip_ms = lip_total / it;
      out->fallback_reason = std::string("LIP solve ") + qp::ToString(plan.status);
      return false;
    }
    solved_feet = feet;
    stepping::FootholdSeq next = stepping::PlanFootholds(
        plan.velocities(), out->delta, x_act.head<2>(), layout_, gait_, state_.feet);
    out->refine_change = stepping::MaxStanceChange(next, feet, out->delta);
    feet = std::move(next);
    if (out->refine_change < config_.refine_tol) break;
    out->refine_capped = it == config_.max_refine_iters;
  }
  out->lip_ms = lip_total / out->refine_iters;

  // Forces must agree with the regions the plan was solved against.
  const int n_u = config_.n_nmpc;
  std::vector<grf::NodeSolution> nodes;
  nodes.reserve(n_u);
  const auto start = Clock::now();
  for (int k = 0; k < n_u; ++k) {
    grf::NodeProblem node;
    node.feet = grf::StanceFeet(solved_feet.p_f.col(k), out->delta.column(k));
    node.com_xy = plan.states.block<2, 1>(0, k);
    node.com_z = lip_.com_height;
    node.zmp = plan.zmp.col(k);
    node.mass = config_.mass;
    node.gravity = lip_.gravity;
    node.q_u = config_.q_u;
    node.q_k = config_.q_k;
    nodes.push_back(grf::MapNode(node));
    if (nodes.back().bound_active) ++out->grf_bound_hits;
  }
  out->grf_ms = MillisSince(start) / n_u;
  out->u_ref = grf::AssembleHorizon(nodes, out->delta, n_u);
  out->v_ref = plan.velocities();
  solved_feet.source = stepping::FootholdSource::kRefined;
  out->footholds = std::move(solved_feet);
  out->plan = std::move(plan);
  return true;
}

ReferenceBundle Governor::Tick(const Vector4d& x_act, double t_now) {
  if (!x_act.allFinite() || !std::isfinite(t_now)) {
    throw Error(ErrorKind::kConfig, "governor: non-finite state or time");
  }
  const int cycle_samples = std::max(
      1, static_cast<int>(std::lround(gait_.cycle_time / lip_.sample_time)));
  const bool first = !state_.started;
  state_.started = true;
  RecordCom(&state_, x_act.head<2>(), cycle_samples);
  UpdateGoal(&state_, config_, lip_, x_act.head<2>(), first);

  ReferenceBundle out;
  out.error = ComputeError(state_, config_, lip_);
  out.p_goal = state_.p_goal;
  out.p_bar = state_.p_bar;
  Status status = out.error.norm() > config_.tol ? Status::kOptimize : Status::kHeuristic;
  if (config_.force_optimize) status = Status::kOptimize;
  if (config_.force_heuristic) status = Status::kHeuristic;
  if (status == Status::kOptimize &&
      (state_.status != Status::kOptimize || first)) {
    state_.window_m = InitialWindow(config_, lip_);
  }
  state_.status = status;
  out.window_m = state_.window_m;
  out.delta = gait::Schedule(gait_, t_now, lip_.n_nodes, lip_.sample_time);

  bool optimized = false;
  if (status == Status::kOptimize) {
    try {
      optimized = TryOptimize(x_act, &out);
    } catch (const std::exception& e) {
      out.fallback_reason = e.what();
      out.plan.reset();
    }
    state_.window_m = lip::ShrinkWindow(state_.window_m);
  }
  if (optimized) {
    out.status_used = Emitted::kOptimize;
  } else {
    out.status_used =
        status == Status::kOptimize ? Emitted::kFallback : Emitted::kHeuristic;
    out.plan.reset();
    EmitHeuristic(x_act, &out);
  }

  // Stance legs at the next tick stand where this plan put them.
  for (int leg = 0; leg < kNumLegs; ++leg) {
    state_.feet[leg].reset();
    if (lip_.n_nodes >= 2 && out.delta.delta(leg, 1) == 1) {
      state_.feet[leg] = out.footholds.p_f.block<2, 1>(3 * leg, 1);
    }
  }
  return out;
}

}  // namespace quadref::governor
