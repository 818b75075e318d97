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

#include <random>

#include <gtest/gtest.h>

#include "quadref/error.hpp"
#include "quadref/gait.hpp"
#include "quadref/stepping.hpp"
#include "support/oracles.hpp"

namespace quadref::lip {
namespace {

using support::BuildRegion;
using support::SupportRegion;

std::vector<SupportRegion> SameRegion(const SupportRegion& r, int n) {
  return std::vector<SupportRegion>(n, r);
}

SupportRegion Rectangle(const Vector2d& c, double hx, double hy) {
  return BuildRegion({c + Vector2d(hx, hy), c + Vector2d(hx, -hy), c + Vector2d(-hx, hy),
                      c + Vector2d(-hx, -hy)});
}

// Regions along a trotting plan, as the governor builds them.
std::vector<SupportRegion> TrotRegions(const LipParams& p, const Vector2d& com,
                                       const Vector2d& vel, double t0) {
  const auto gait = gait::GaitSpec::Trot(1.0, 0.65);
  const auto delta = gait::Schedule(gait, t0, p.n_nodes, p.sample_time);
  MatrixXd v_ref(2, p.n_nodes + 1);
  v_ref.colwise() = vel;
  const auto feet = stepping::PlanFootholds(v_ref, delta, com,
                                            stepping::HipLayout::Default(), gait);
  std::vector<SupportRegion> out;
  for (int k = 0; k < p.n_nodes; ++k) {
    out.push_back(BuildRegion(feet.p_f.col(k), delta.column(k)));
  }
  return out;
}

void ExpectConsistent(const LipSolution& s, const Vector4d& x0, const LipParams& p,
                      const std::vector<SupportRegion>& regions) {
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.states.col(0), x0);
  const MatrixXd again = Rollout(x0, s.zmp, p);
  EXPECT_LE((again - s.states).cwiseAbs().maxCoeff(), 1e-8);
  for (int k = 0; k < p.n_nodes; ++k) {
    EXPECT_LE(regions[k].MaxViolation(s.zmp.col(k)), 1e-8) << k;
  }
  EXPECT_GE(s.slacks.minCoeff(), -1e-10);
}

TEST(LipDynamics, ZeroLeanMovesAtConstantVelocity) {
  LipParams p;
  p.com_height = 0.5;
  const PlanarState s = DynamicsStep({0.0, 0.0}, {0.1, 0.0}, {0.0, 0.0}, p);
  EXPECT_NEAR(s.p.x(), 0.004, 1e-15);
  EXPECT_EQ(s.v, Vector2d(0.1, 0.0));
}

TEST(LipDynamics, LeanAccelerates) {
  LipParams p;
  p.com_height = 0.5;
  const PlanarState s = DynamicsStep({0.05, 0.0}, {0.0, 0.0}, {0.0, 0.0}, p);
  EXPECT_NEAR(s.v.x(), 0.03924, 1e-12);
  EXPECT_NEAR(s.p.x(), 0.0507848, 1e-12);
  EXPECT_EQ(s.v.y(), 0.0);
}

TEST(LipDynamics, StepIsLinear) {
  LipParams p;
  const Vector2d a(0.1, -0.2), b(0.3, 0.05), c(-0.02, 0.07);
  const PlanarState one = DynamicsStep(a, b, c, p);
  const PlanarState two = DynamicsStep(2 * a, 2 * b, 2 * c, p);
  EXPECT_LE((two.p - 2 * one.p).norm(), 1e-15);
  EXPECT_LE((two.v - 2 * one.v).norm(), 1e-15);
}

TEST(SolveBasic, StationaryAtCenteredGoal) {
  LipParams p;
  const Vector2d goal(0.2, -0.1);
  const auto regions = SameRegion(Rectangle(goal, 0.3, 0.2), p.n_nodes);
  const Vector4d x0(goal.x(), goal.y(), 0.0, 0.0);
  const LipSolution s = SolveBasic(p, x0, goal, regions);
  ExpectConsistent(s, x0, p, regions);
  for (int k = 0; k <= p.n_nodes; ++k) EXPECT_LE((s.states.col(k) - x0).norm(), 1e-9);
  for (int k = 0; k < p.n_nodes; ++k) EXPECT_LE((s.zmp.col(k) - goal).norm(), 1e-9);
  EXPECT_LE(s.objective, 1e-10);
  EXPECT_EQ(s.slacks.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SolveBasic, SingleNodeMatchesStackedOracle) {
  LipParams p;
  p.n_nodes = 1;
  const Vector2d goal(0.3, 0.2);
  const SupportRegion region = Rectangle({0.0, 0.0}, 0.1, 0.05);
  const Vector4d x0(0.25, 0.15, 0.1, -0.05);

  // Stacked variables (x0, x1, w0); dynamics and the initial state as
  // equalities.
  const double t = p.sample_time, g = p.omega_squared();
  MatrixXd h = MatrixXd::Zero(10, 10);
  VectorXd c = VectorXd::Zero(10);
  for (int k = 0; k < 2; ++k) {
    h.block<2, 2>(4 * k, 4 * k) = 2.0 * p.q_pos;
    h.block<2, 2>(4 * k + 2, 4 * k + 2) = 2.0 * p.q_vel;
    c.segment<2>(4 * k) = -2.0 * p.q_pos * goal;
  }
  h.block<2, 2>(8, 8) = 2.0 * p.q_zmp;
  c.segment<2>(8) = -2.0 * p.q_zmp * region.center;
  MatrixXd ae = MatrixXd::Zero(8, 10);
  VectorXd be = VectorXd::Zero(8);
  ae.block<4, 4>(0, 0).setIdentity();
  be.head<4>() = x0;
  for (int a = 0; a < 2; ++a) {
    // p1 = p0 + t v0 + t^2 g / 2 (p0 - w0)
    ae(4 + a, 4 + a) = 1.0;
    ae(4 + a, a) = -(1.0 + 0.5 * t * t * g);
    ae(4 + a, 2 + a) = -t;
    ae(4 + a, 8 + a) = 0.5 * t * t * g;
    // v1 = v0 + g t (p0 - w0)
    ae(6 + a, 6 + a) = 1.0;
    ae(6 + a, 2 + a) = -1.0;
    ae(6 + a, a) = -g * t;
    ae(6 + a, 8 + a) = g * t;
  }
  const int m = static_cast<int>(region.half_planes.size());
  MatrixXd ai = MatrixXd::Zero(m, 10);
  VectorXd bi(m);
  for (int i = 0; i < m; ++i) {
    ai.block<1, 2>(i, 8) = region.half_planes[i].normal.transpose();
    bi(i) = region.half_planes[i].offset;
  }
  const auto oracle = testing::EnumerateActiveSets(h, c, ae, be, ai, bi);
  ASSERT_TRUE(oracle.has_value());

  const LipSolution s = SolveBasic(p, x0, goal, {region});
  ExpectConsistent(s, x0, p, {region});
  EXPECT_LE((s.zmp.col(0) - oracle->x.segment<2>(8)).norm(), 1e-8);
  EXPECT_LE((s.states.col(1) - oracle->x.segment<4>(4)).norm(), 1e-8);
  const double constant = 2.0 * goal.dot(p.q_pos * goal) + region.center.dot(p.q_zmp * region.center);
  EXPECT_NEAR(s.objective, oracle->objective + constant, 1e-6);
}

TEST(SolveBasic, KeepsZmpInsideDistantRegions) {
  LipParams p;
  const auto regions = SameRegion(Rectangle({0.0, 0.0}, 0.1, 0.1), p.n_nodes);
  const Vector4d x0(0.02, -0.01, 0.0, 0.0);
  const LipSolution s = SolveBasic(p, x0, {2.0, -1.0}, regions);
  ExpectConsistent(s, x0, p, regions);
}

TEST(SolveBasic, RandomTrotProblemsAreConsistent) {
  LipParams p;
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector2d com(uni(rng), uni(rng));
    const Vector2d vel(0.3 * uni(rng), 0.2 * uni(rng));
    const auto regions = TrotRegions(p, com, vel, 0.5 + 0.5 * uni(rng));
    const Vector4d x0(com.x(), com.y(), vel.x(), vel.y());
    const Vector2d goal = com + Vector2d(0.3 * uni(rng), 0.3 * uni(rng));
    ExpectConsistent(SolveBasic(p, x0, goal, regions), x0, p, regions);
  }
}

TEST(SolveTimed, WindowStartFromResponseTime) {
  EXPECT_EQ(static_cast<int>(std::lround(4.8 / 0.04)), 120);
}

TEST(SolveTimed, StationaryAtGoalForAnyWindow) {
  LipParams p;
  const Vector2d goal(0.0, -0.2);
  const auto regions = SameRegion(Rectangle(goal, 0.3, 0.2), p.n_nodes);
  const Vector4d x0(goal.x(), goal.y(), 0.0, 0.0);
  for (int m : {0, 5, 50, 120}) {
    const LipSolution s = SolveTimed(p, x0, goal, regions, m);
    ExpectConsistent(s, x0, p, regions);
    EXPECT_LE(s.slacks.cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(s.objective, 1e-10);
    for (int k = 0; k <= p.n_nodes; ++k) EXPECT_LE((s.states.col(k) - x0).norm(), 1e-9);
  }
}

TEST(SolveTimed, UnreachableGoalLeavesPositiveSlacks) {
  LipParams p;
  const auto regions = SameRegion(Rectangle({0.0, 0.0}, 0.3, 0.2), p.n_nodes);
  const Vector4d x0 = Vector4d::Zero();
  const LipSolution s = SolveTimed(p, x0, {0.0, 10.0}, regions, 5);
  ExpectConsistent(s, x0, p, regions);
  EXPECT_GT(s.slacks.row(1).segment(5, p.n_nodes + 1 - 5).minCoeff(), 0.0);
  EXPECT_EQ(s.slacks.row(0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SolveTimed, SlacksBoundTrackingErrorInWindow) {
  LipParams p;
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector2d com(uni(rng), uni(rng));
    const Vector2d vel(0.2 * uni(rng), 0.1 * uni(rng));
    const auto regions = TrotRegions(p, com, vel, 0.3 * trial);
    const Vector4d x0(com.x(), com.y(), vel.x(), vel.y());
    const Vector2d goal = com + Vector2d(0.0, 0.2 * uni(rng));
    const int m = trial * 5;
    const LipSolution s = SolveTimed(p, x0, goal, regions, m, {true, true});
    ExpectConsistent(s, x0, p, regions);
    for (int k = m; k <= p.n_nodes; ++k) {
      for (int a = 0; a < 2; ++a) {
        EXPECT_GE(s.slacks(a, k) + 1e-8, std::abs(s.states(a, k) - goal(a)));
      }
    }
  }
}

TEST(SolveTimed, EmptyWindowBeyondHorizon) {
  LipParams p;
  const auto regions = SameRegion(Rectangle({0.0, 0.0}, 0.3, 0.2), p.n_nodes);
  const Vector4d x0 = Vector4d::Zero();
  const LipSolution s = SolveTimed(p, x0, {0.0, 10.0}, regions, 120);
  ExpectConsistent(s, x0, p, regions);
  EXPECT_EQ(s.slacks.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(SolveTimed(p, x0, {0.0, 1.0}, regions, -1), Error);
}

TEST(SolveTimed, SlackFreeObjectiveMatchesBasic) {
  LipParams p;
  const Vector2d goal(0.1, 0.1);
  const auto regions = SameRegion(Rectangle(goal, 0.2, 0.2), p.n_nodes);
  const Vector4d x0(goal.x(), goal.y(), 0.0, 0.0);
  EXPECT_LE(SolveBasic(p, x0, goal, regions).objective, 1e-10);
  EXPECT_LE(SolveTimed(p, x0, goal, regions, 0).objective, 1e-10);
}

TEST(ShrinkWindow, CountsDownAndSaturates) {
  EXPECT_EQ(ShrinkWindow(5), 4);
  EXPECT_EQ(ShrinkWindow(1), 0);
  EXPECT_EQ(ShrinkWindow(0), 0);
  int m = 120, steps = 0;
  while (m > 0) {
    m = ShrinkWindow(m);
    ++steps;
  }
  EXPECT_EQ(steps, 120);
}

TEST(LipValidate, RejectsBadParameters) {
  LipParams p;
  p.sample_time = 0.0;
  EXPECT_THROW(Validate(p), Error);
  p = LipParams();
  p.q_vel(0, 0) = -1.0;
  EXPECT_THROW(Validate(p), Error);
  p = LipParams();
  p.q_slack_lin(1) = -1.0;
  EXPECT_THROW(Validate(p), Error);
  p = LipParams();
  const auto regions = SameRegion(Rectangle({0.0, 0.0}, 0.3, 0.2), 3);
  EXPECT_THROW(SolveBasic(p, Vector4d::Zero(), Vector2d::Zero(), regions), Error);
}

}  // namespace
}  // namespace quadref::lip
