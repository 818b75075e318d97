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

#ifndef QUADREF_QP_HPP_
#define QUADREF_QP_HPP_

#include <string>

#include "quadref/types.hpp"

namespace quadref::qp {

// Dense convex QP
//
//   minimize    1/2 x' H x + c' x
//   subject to  A_eq x = b_eq
//               A_in x <= b_in
struct Problem {
  MatrixXd hessian;
  VectorXd linear_cost;
  MatrixXd eq_matrix;
  VectorXd eq_rhs;
  MatrixXd ineq_matrix;
  VectorXd ineq_rhs;

  // Empty constraint blocks of the right width for an n-variable problem.
  static Problem Unconstrained(const MatrixXd& hessian,
                               const VectorXd& linear_cost);

  int num_variables() const { return static_cast<int>(linear_cost.size()); }
};

enum class Status { kOptimal, kInfeasible, kMaxIter };

const char* ToString(Status status);

struct Solution {
  VectorXd x_opt;
  VectorXd eq_duals;
  VectorXd ineq_duals;  // >= 0, one per inequality row
  Status status = Status::kMaxIter;
  double objective = 0.0;
  int iterations = 0;
  bool regularized = false;
};

struct KktResiduals {
  double stationarity = 0.0;     // |H x + c + A_eq' y + A_in' z|_inf
  double primal = 0.0;           // max(|A_eq x - b_eq|_inf, max(A_in x - b_in)+)
  double complementarity = 0.0;  // max_i |z_i (b_in - A_in x)_i|

  double max() const;
};

struct Options {
  double tol = 1e-8;
  int max_iter = 200;
};

// Throws Error(kConfig) on inconsistent dimensions, an asymmetric Hessian or
// a Hessian with an eigenvalue below -1e-9.
void Validate(const Problem& problem);

// Goldfarb-Idnani dual active-set method on the problem with equalities
// eliminated through an orthonormal null-space basis. A Hessian that is only
// semidefinite on that null space gets 1e-9 * I added before factorization.
Solution Solve(const Problem& problem, const Options& options = {});

KktResiduals ComputeKktResiduals(const Problem& problem,
                                 const Solution& solution);

double Objective(const Problem& problem, const VectorXd& x);

}  // namespace quadref::qp

#endif  // QUADREF_QP_HPP_
