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

#include "quadref/lip.hpp"

#include <algorithm>
#include <cmath>

#include "quadref/error.hpp"

namespace quadref::lip {
namespace {

bool IsPsd(const Matrix2d& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
    return false;
  }
  return Eigen::SelfAdjointEigenSolver<Matrix2d>(m).eigenvalues().minCoeff() >= -1e-12;
}

// Affine maps from the decision variables nu to positions, velocities and ZMP
// of one axis. The ZMP is parameterized as w_k = p_k + k_v v_k + nu_k, which
// places the closed-loop poles at 1 and exp(-omega T) and keeps the
// prediction matrices bounded over long horizons.
struct AxisPrediction {
  MatrixXd p_free;  // (N+1) x 2, response to (p0, v0)
  MatrixXd p_gain;  // (N+1) x N
  MatrixXd v_free;
  MatrixXd v_gain;
  MatrixXd w_free;  // N x 2
  MatrixXd w_gain;  // N x N
};

AxisPrediction Predict(const LipParams& prm) {
  const int n = prm.n_nodes;
  const double t = prm.sample_time;
  const double w2 = prm.omega_squared();
  const double a = 0.5 * t * t * w2;
  const double b = w2 * t;
  Matrix2d open;
  open << 1.0 + a, t, b, 1.0;
  const Vector2d input(-a, -b);
  const double pole = std::exp(-std::sqrt(w2) * t);
  const Eigen::RowVector2d gain(1.0, (1.0 - pole) / b);
  const Matrix2d closed = open + input * gain;

  AxisPrediction pr;
  pr.p_free.resize(n + 1, 2);
  pr.v_free.resize(n + 1, 2);
  pr.p_gain = MatrixXd::Zero(n + 1, n);
  pr.v_gain = MatrixXd::Zero(n + 1, n);
  Matrix2d power = Matrix2d::Identity();
  for (int k = 0; k <= n; ++k) {
    pr.p_free.row(k) = power.row(0);
    pr.v_free.row(k) = power.row(1);
    power = closed * power;
  }
  for (int j = 0; j < n; ++j) {
    Vector2d g = input;
    for (int k = j + 1; k <= n; ++k) {
      pr.p_gain(k, j) = g(0);
      pr.v_gain(k, j) = g(1);
      g = closed * g;
    }
  }
  pr.w_free = pr.p_free.topRows(n) + gain(1) * pr.v_free.topRows(n);
  pr.w_gain = pr.p_gain.topRows(n) + gain(1) * pr.v_gain.topRows(n);
  pr.w_gain.diagonal().array() += 1.0;
  return pr;
}

// Planned ZMPs stay this far inside their region so the force mapping never
// sees a point outside the stance polygon through rounding.
constexpr double kRegionMargin = 1e-9;

enum class Formulation { kBasic, kTimed };

struct Layout {
  int n = 0;
  std::vector<int> slack_axes;
  int num_vars() const { return 2 * n + static_cast<int>(slack_axes.size()) * (n + 1); }
  int nu(int axis) const { return axis * n; }
  int slack(int which) const { return 2 * n + which * (n + 1); }
};

// Accumulates sum_ab Q_ab (c_a + G nu_a)' (c_b + G nu_b) into the QP.
void AddTrackingCost(const Matrix2d& q, const MatrixXd& gain,
                     const std::array<VectorXd, 2>& offset, const Layout& lay,
                     MatrixXd* h, VectorXd* f) {
  const MatrixXd gtg = gain.transpose() * gain;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (q(a, b) == 0.0) continue;
      h->block(lay.nu(a), lay.nu(b), lay.n, lay.n) += 2.0 * q(a, b) * gtg;
      f->segment(lay.nu(a), lay.n) += 2.0 * q(a, b) * gain.transpose() * offset[b];
    }
  }
}

void CheckInputs(const LipParams& params, const Vector4d& x0, const Vector2d& goal,
                 const std::vector<support::SupportRegion>& regions) {
  Validate(params);
  if (!x0.allFinite() || !goal.allFinite()) {
    throw Error(ErrorKind::kConfig, "lip: non-finite initial state or goal");
  }
  if (static_cast<int>(regions.size()) != params.n_nodes) {
    throw Error(ErrorKind::kConfig, "lip: need one support region per node");
  }
  for (const auto& r : regions) {
    if (r.half_planes.empty()) {
      throw Error(ErrorKind::kConfig, "lip: empty support region description");
    }
  }
}

LipSolution SolveImpl(const LipParams& prm, const Vector4d& x0, const Vector2d& goal,
                      const std::vector<support::SupportRegion>& regions,
                      Formulation form, int window_start, AxisMask mask) {
  CheckInputs(prm, x0, goal, regions);
  const int n = prm.n_nodes;
  const AxisPrediction pr = Predict(prm);

  Layout lay;
  lay.n = n;
  if (form == Formulation::kTimed) {
    for (int a = 0; a < 2; ++a) {
      if (mask[a]) lay.slack_axes.push_back(a);
    }
  }
  const int nv = lay.num_vars();
  MatrixXd h = MatrixXd::Zero(nv, nv);
  VectorXd f = VectorXd::Zero(nv);

  std::array<Vector2d, 2> axis_x0;
  for (int a = 0; a < 2; ++a) axis_x0[a] = Vector2d(x0(a), x0(2 + a));

  std::array<VectorXd, 2> v_off;
  std::array<VectorXd, 2> w_off;
  std::array<VectorXd, 2> p_free;
  for (int a = 0; a < 2; ++a) {
    p_free[a] = pr.p_free * axis_x0[a];
    v_off[a] = pr.v_free * axis_x0[a];
    w_off[a] = pr.w_free * axis_x0[a];
    for (int k = 0; k < n; ++k) w_off[a](k) -= regions[k].center(a);
  }
  AddTrackingCost(prm.q_vel, pr.v_gain, v_off, lay, &h, &f);
  AddTrackingCost(prm.q_zmp, pr.w_gain, w_off, lay, &h, &f);
  if (form == Formulation::kBasic) {
    std::array<VectorXd, 2> p_off;
    for (int a = 0; a < 2; ++a) p_off[a] = p_free[a].array() - goal(a);
    AddTrackingCost(prm.q_pos, pr.p_gain, p_off, lay, &h, &f);
  }
  const int ns = static_cast<int>(lay.slack_axes.size());
  for (int i = 0; i < ns; ++i) {
    const int a = lay.slack_axes[i];
    for (int j = 0; j < ns; ++j) {
      const int b = lay.slack_axes[j];
      h.block(lay.slack(i), lay.slack(j), n + 1, n + 1).diagonal().array() +=
          2.0 * prm.q_slack_quad(a, b);
    }
    f.segment(lay.slack(i), n + 1).array() += prm.q_slack_lin(a);
  }
  h = 0.5 * (h + h.transpose());
  // Cost scaling does not move the minimizer but keeps the absolute KKT
  // tolerance meaningful for stiff weights.
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  h /= scale;
  f /= scale;

  // Inequalities.
  int rows = 0;
  for (const auto& r : regions) rows += static_cast<int>(r.half_planes.size());
  const int first = std::max(0, window_start);
  const int window_nodes = first <= n ? n + 1 - first : 0;
  rows += ns * (2 * window_nodes + (n + 1 - window_nodes));
  MatrixXd a_in = MatrixXd::Zero(rows, nv);
  VectorXd b_in = VectorXd::Zero(rows);
  int row = 0;
  for (int k = 0; k < n; ++k) {
    for (const auto& hp : regions[k].half_planes) {
      for (int a = 0; a < 2; ++a) {
        a_in.row(row).segment(lay.nu(a), n) += hp.normal(a) * pr.w_gain.row(k);
      }
      b_in(row) = hp.offset - kRegionMargin - hp.normal(0) * (pr.w_free.row(k) * axis_x0[0])(0) -
                  hp.normal(1) * (pr.w_free.row(k) * axis_x0[1])(0);
      ++row;
    }
  }
  for (int i = 0; i < ns; ++i) {
    const int a = lay.slack_axes[i];
    for (int k = 0; k <= n; ++k) {
      const int s = lay.slack(i) + k;
      if (k >= first) {
        // p - goal <= s  and  goal - p <= s.
        a_in.row(row).segment(lay.nu(a), n) = pr.p_gain.row(k);
        a_in(row, s) = -1.0;
        b_in(row) = goal(a) - p_free[a](k);
        ++row;
        a_in.row(row).segment(lay.nu(a), n) = -pr.p_gain.row(k);
        a_in(row, s) = -1.0;
        b_in(row) = p_free[a](k) - goal(a);
        ++row;
      } else {
        a_in(row, s) = -1.0;
        ++row;
      }
    }
  }

  qp::Problem problem{h, f, MatrixXd(0, nv), VectorXd(0), a_in, b_in};
  const qp::Solution qs = qp::Solve(problem, {1e-8, 20 * (nv + rows)});

  LipSolution sol;
  sol.status = qs.status;
  sol.iterations = qs.iterations;
  sol.feasible = qs.status == qp::Status::kOptimal;
  sol.zmp.resize(2, n);
  for (int a = 0; a < 2; ++a) {
    sol.zmp.row(a) = (pr.w_free * axis_x0[a] + pr.w_gain * qs.x_opt.segment(lay.nu(a), n))
                         .transpose();
  }
  sol.states = Rollout(x0, sol.zmp, prm);
  sol.slacks = MatrixXd::Zero(2, n + 1);
  for (int i = 0; i < ns; ++i) {
    sol.slacks.row(lay.slack_axes[i]) =
        qs.x_opt.segment(lay.slack(i), n + 1).transpose().cwiseMax(0.0);
  }

  double cost = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Vector2d v = sol.states.block<2, 1>(2, k);
    cost += v.dot(prm.q_vel * v);
    if (form == Formulation::kBasic) {
      const Vector2d e = sol.states.block<2, 1>(0, k) - goal;
      cost += e.dot(prm.q_pos * e);
    } else {
      const Vector2d s = sol.slacks.col(k);
      cost += s.dot(prm.q_slack_quad * s) + prm.q_slack_lin.dot(s);
    }
  }
  for (int k = 0; k < n; ++k) {
    const Vector2d e = sol.zmp.col(k) - regions[k].center;
    cost += e.dot(prm.q_zmp * e);
  }
  sol.objective = cost;
  return sol;
}

}  // namespace

void Validate(const LipParams& p) {
  if (!(p.sample_time > 0.0) || p.n_nodes < 1 || !(p.com_height > 0.0) ||
      !(p.gravity > 0.0)) {
    throw Error(ErrorKind::kConfig,
                "lip: need sample_time > 0, n_nodes >= 1, com_height > 0, gravity > 0");
  }
  if (!IsPsd(p.q_pos) || !IsPsd(p.q_vel) || !IsPsd(p.q_zmp) || !IsPsd(p.q_slack_quad)) {
    throw Error(ErrorKind::kConfig, "lip: weight matrices must be symmetric PSD");
  }
  if (!(p.q_slack_lin.array() >= 0.0).all()) {
    throw Error(ErrorKind::kConfig, "lip: linear slack weights must be nonnegative");
  }
}

PlanarState DynamicsStep(const Vector2d& p, const Vector2d& v, const Vector2d& w,
                         const LipParams& prm) {
  const double t = prm.sample_time;
  const double w2 = prm.omega_squared();
  const Vector2d lean = p - w;
  return {p + v * t + (t * t * w2 / 2.0) * lean, v + w2 * lean * t};
}

MatrixXd Rollout(const Vector4d& x0, const MatrixXd& zmp, const LipParams& prm) {
  const auto n = zmp.cols();
  MatrixXd states(4, n + 1);
  states.col(0) = x0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const PlanarState next = DynamicsStep(states.block<2, 1>(0, k),
                                          states.block<2, 1>(2, k), zmp.col(k), prm);
    states.block<2, 1>(0, k + 1) = next.p;
    states.block<2, 1>(2, k + 1) = next.v;
  }
  return states;
}

LipSolution SolveBasic(const LipParams& params, const Vector4d& x0,
                       const Vector2d& goal,
                       const std::vector<support::SupportRegion>& regions) {
  return SolveImpl(params, x0, goal, regions, Formulation::kBasic, 0, {false, false});
}

LipSolution SolveTimed(const LipParams& params, const Vector4d& x0,
                       const Vector2d& goal,
                       const std::vector<support::SupportRegion>& regions,
                       int window_start, AxisMask slack_axes) {
  if (window_start < 0) {
    throw Error(ErrorKind::kConfig, "lip: window start must be nonnegative");
  }
  return SolveImpl(params, x0, goal, regions, Formulation::kTimed, window_start,
                   slack_axes);
}

}  // namespace quadref::lip
