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

#ifndef QUADREF_GRF_HPP_
#define QUADREF_GRF_HPP_

#include <vector>

#include "quadref/gait.hpp"
#include "quadref/qp.hpp"
#include "quadref/types.hpp"

namespace quadref::grf {

struct StanceFoot {
  int leg = 0;
  Vector3d position = Vector3d::Zero();
};

struct NodeProblem {
  std::vector<StanceFoot> feet;
  Vector2d com_xy = Vector2d::Zero();
  double com_z = 0.40;
  Vector2d zmp = Vector2d::Zero();
  double mass = 22.0;
  double gravity = kGravity;
  Matrix2d q_u = Vector2d(100.0, 100.0).asDiagonal();
  Matrix3d q_k = Matrix3d::Identity();
};

struct NodeSolution {
  std::vector<int> legs;  // same order as the problem's feet
  VectorXd forces;        // 3 per stance foot
  double objective = 0.0;
  bool bound_active = false;  // some u_z >= 0 bound is tight
  int iterations = 0;
};

// Distributes the LIP's horizontal force and weight over the stance feet,
// keeping the ZMP where the plan put it and minimizing tangential force and
// angular momentum rate. With two feet a single moment row along the
// foot-to-foot segment is imposed.
// Throws Error(kDegenerateSupport) for fewer than two feet and Error(kMapping)
// when the QP has no solution.
NodeSolution MapNode(const NodeProblem& problem);

std::vector<StanceFoot> StanceFeet(const Eigen::Ref<const VectorXd>& footholds12,
                                   const ContactFlags& delta_k);

// Scatters per-node solutions into a 12 x N matrix, zeros at swing legs.
MatrixXd AssembleHorizon(const std::vector<NodeSolution>& nodes,
                         const gait::GaitStatusSeq& delta, int n_nodes);

// Load-weighted mean of the stance-foot XY positions.
Vector2d ReconstructZmp(const Eigen::Ref<const VectorXd>& forces12,
                        const Eigen::Ref<const VectorXd>& footholds12,
                        const ContactFlags& delta_k);

}  // namespace quadref::grf

#endif  // QUADREF_GRF_HPP_
