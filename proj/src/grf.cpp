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

#include "quadref/grf.hpp"

#include <algorithm>

#include "quadref/error.hpp"

namespace quadref::grf {
namespace {

Matrix3d Skew(const Vector3d& r) {
  Matrix3d s;
  s << 0.0, -r.z(), r.y(),  //
      r.z(), 0.0, -r.x(),   //
      -r.y(), r.x(), 0.0;
  return s;
}

void CheckProblem(const NodeProblem& p) {
  if (p.feet.size() < 2) {
    throw Error(ErrorKind::kDegenerateSupport, "grf: fewer than two stance feet");
  }
  if (!(p.mass > 0.0) || !(p.gravity > 0.0) || !(p.com_z > 0.0)) {
    throw Error(ErrorKind::kConfig, "grf: need mass, gravity and com_z positive");
  }
  if (!p.com_xy.allFinite() || !p.zmp.allFinite()) {
    throw Error(ErrorKind::kConfig, "grf: non-finite CoM or ZMP");
  }
  for (const auto& f : p.feet) {
    if (f.leg < 0 || f.leg >= kNumLegs || !f.position.allFinite()) {
      throw Error(ErrorKind::kConfig, "grf: bad stance foot");
    }
  }
}

}  // namespace

NodeSolution MapNode(const NodeProblem& p) {
  CheckProblem(p);
  const int c = static_cast<int>(p.feet.size());
  const int n = 3 * c;
  const double weight = p.mass * p.gravity;
  const Vector3d com(p.com_xy.x(), p.com_xy.y(), p.com_z);

  MatrixXd moment(3, n);
  MatrixXd h = MatrixXd::Zero(n, n);
  for (int i = 0; i < c; ++i) {
    moment.block<3, 3>(0, 3 * i) = Skew(p.feet[i].position - com);
    h.block<2, 2>(3 * i, 3 * i) = 2.0 * p.q_u;
  }
  h += 2.0 * moment.transpose() * p.q_k * moment;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  h /= scale;

  // Moment rows of the ZMP definition with the denominator fixed at m g. Two
  // feet pin the ZMP to their segment, so one row along it is enough; taking
  // it along the segment rather than X keeps the feasible range equal to the
  // segment even when the ZMP sits a hair off the line.
  Eigen::Matrix<double, Eigen::Dynamic, 2> axes(c >= 3 ? 2 : 1, 2);
  if (c >= 3) {
    axes.setIdentity();
  } else {
    const Vector2d d = p.feet[1].position.head<2>() - p.feet[0].position.head<2>();
    if (!(d.norm() > 0.0)) {
      throw Error(ErrorKind::kDegenerateSupport, "grf: coincident stance feet");
    }
    axes.row(0) = d.normalized().transpose();
  }
  const int zmp_rows = static_cast<int>(axes.rows());
  const int me = zmp_rows + 3;
  MatrixXd a_eq = MatrixXd::Zero(me, n);
  VectorXd b_eq(me);
  for (int i = 0; i < c; ++i) {
    for (int r = 0; r < zmp_rows; ++r) {
      a_eq(r, 3 * i + 2) = axes.row(r).dot(p.feet[i].position.head<2>());
    }
    a_eq(zmp_rows, 3 * i + 2) = 1.0;
    a_eq(zmp_rows + 1, 3 * i) = 1.0;
    a_eq(zmp_rows + 2, 3 * i + 1) = 1.0;
  }
  for (int r = 0; r < zmp_rows; ++r) b_eq(r) = axes.row(r).dot(p.zmp) * weight;
  b_eq(zmp_rows) = weight;
  b_eq.tail<2>() = p.mass * (p.gravity / p.com_z) * (p.com_xy - p.zmp);

  MatrixXd a_in = MatrixXd::Zero(c, n);
  for (int i = 0; i < c; ++i) a_in(i, 3 * i + 2) = -1.0;

  const qp::Problem problem{h, VectorXd::Zero(n), a_eq, b_eq, a_in, VectorXd::Zero(c)};
  const qp::Solution s = qp::Solve(problem);
  if (s.status != qp::Status::kOptimal) {
    throw Error(ErrorKind::kMapping,
                std::string("grf: node QP not solved (") + qp::ToString(s.status) + ")");
  }
  NodeSolution out;
  out.forces = s.x_opt;
  out.objective = s.objective * scale;
  out.iterations = s.iterations;
  for (const auto& f : p.feet) out.legs.push_back(f.leg);
  for (int i = 0; i < c; ++i) {
    if (s.ineq_duals(i) > 0.0 || out.forces(3 * i + 2) <= 1e-9) out.bound_active = true;
  }
  return out;
}

std::vector<StanceFoot> StanceFeet(const Eigen::Ref<const VectorXd>& footholds12,
                                   const ContactFlags& delta_k) {
  if (footholds12.size() != 3 * kNumLegs) {
    throw Error(ErrorKind::kConfig, "grf: foothold column must have 12 rows");
  }
  std::vector<StanceFoot> feet;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (delta_k[leg] == 1) feet.push_back({leg, footholds12.segment<3>(3 * leg)});
  }
  return feet;
}

MatrixXd AssembleHorizon(const std::vector<NodeSolution>& nodes,
                         const gait::GaitStatusSeq& delta, int n_nodes) {
  if (static_cast<int>(nodes.size()) != n_nodes || delta.num_nodes() < n_nodes) {
    throw Error(ErrorKind::kAssembly, "grf: node count does not match the schedule");
  }
  MatrixXd u = MatrixXd::Zero(3 * kNumLegs, n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    const auto& node = nodes[k];
    if (node.forces.size() != 3 * static_cast<Eigen::Index>(node.legs.size())) {
      throw Error(ErrorKind::kAssembly, "grf: node force size mismatch");
    }
    std::vector<int> legs = node.legs;
    std::sort(legs.begin(), legs.end());
    if (legs != gait::ContactSet(delta.column(k))) {
      throw Error(ErrorKind::kAssembly, "grf: node legs do not match the contact set");
    }
    for (std::size_t i = 0; i < node.legs.size(); ++i) {
      u.block<3, 1>(3 * node.legs[i], k) = node.forces.segment<3>(3 * i);
    }
  }
  return u;
}

Vector2d ReconstructZmp(const Eigen::Ref<const VectorXd>& forces12,
                        const Eigen::Ref<const VectorXd>& footholds12,
                        const ContactFlags& delta_k) {
  if (forces12.size() != 3 * kNumLegs || footholds12.size() != 3 * kNumLegs) {
    throw Error(ErrorKind::kConfig, "grf: force and foothold columns need 12 rows");
  }
  Vector2d moment = Vector2d::Zero();
  double total = 0.0;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (delta_k[leg] != 1) continue;
    const double fz = forces12(3 * leg + 2);
    moment += fz * footholds12.segment<2>(3 * leg);
    total += fz;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorKind::kUndefinedZmp, "grf: no vertical load on the stance feet");
  }
  return moment / total;
}

}  // namespace quadref::grf
