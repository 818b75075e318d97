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

#include "quadref/stepping.hpp"

#include <gtest/gtest.h>

#include "quadref/error.hpp"

namespace quadref::stepping {
namespace {

constexpr double kTs = 0.04;
constexpr int kNodes = 50;

struct Fixture {
  gait::GaitSpec gait = gait::GaitSpec::Trot(1.0, 0.65);
  gait::GaitStatusSeq delta = gait::Schedule(gait, 0.1, kNodes, kTs);
  HipLayout layout = HipLayout::Default();
  Vector2d com0 = Vector2d(0.4, -0.1);
};

MatrixXd ConstantVelocity(const Vector2d& v) {
  MatrixXd out(2, kNodes + 1);
  out.colwise() = v;
  return out;
}

bool IsTouchdown(const gait::GaitStatusSeq& d, int leg, int k) {
  return k > 0 && d.delta(leg, k) == 1 && d.delta(leg, k - 1) == 0;
}

// Offsets of every touchdown from the hip projection, integrated here
// independently of the planner.
std::vector<Vector2d> TouchdownOffsets(const Fixture& s, const MatrixXd& v_ref,
                                       const FootholdSeq& seq) {
  std::vector<Vector2d> out;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    Vector2d com = s.com0;
    for (int k = 0; k < kNodes; ++k) {
      if (k > 0) com += v_ref.col(k - 1) * kTs;
      if (!IsTouchdown(s.delta, leg, k)) continue;
      const Vector2d hip = com + s.layout.hip_offsets.row(leg).transpose();
      out.push_back(seq.p_f.block<2, 1>(3 * leg, k) - hip);
    }
  }
  return out;
}

TEST(PlanFootholds, ZeroVelocityStepsUnderHips) {
  Fixture s;
  const MatrixXd v = ConstantVelocity(Vector2d::Zero());
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  const auto offsets = TouchdownOffsets(s, v, seq);
  ASSERT_FALSE(offsets.empty());
  for (const auto& o : offsets) EXPECT_LE(o.norm(), 1e-15);
  EXPECT_EQ(seq.source, FootholdSource::kHeuristic);
  EXPECT_FALSE(seq.clamped);
}

TEST(PlanFootholds, ForwardVelocityOffset) {
  Fixture s;
  const MatrixXd v = ConstantVelocity({0.5, 0.0});
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  for (const auto& o : TouchdownOffsets(s, v, seq)) {
    EXPECT_NEAR(o.x(), 0.1625, 1e-12);
    EXPECT_NEAR(o.y(), 0.0, 1e-12);
  }
}

TEST(PlanFootholds, LateralVelocityOffset) {
  Fixture s;
  const MatrixXd v = ConstantVelocity({0.0, -0.1});
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  for (const auto& o : TouchdownOffsets(s, v, seq)) {
    EXPECT_NEAR(o.x(), 0.0, 1e-12);
    EXPECT_NEAR(o.y(), -0.0325, 1e-12);
  }
}

TEST(PlanFootholds, OffsetIsLinearInVelocity) {
  Fixture s;
  MatrixXd v(2, kNodes + 1);
  for (int k = 0; k <= kNodes; ++k) v.col(k) = Vector2d(0.2 * std::sin(0.3 * k), 0.05 * k / kNodes);
  const auto base = TouchdownOffsets(s, v, PlanFootholds(v, s.delta, s.com0, s.layout, s.gait));
  const MatrixXd v2 = 2.0 * v;
  const auto twice =
      TouchdownOffsets(s, v2, PlanFootholds(v2, s.delta, s.com0, s.layout, s.gait));
  ASSERT_EQ(base.size(), twice.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_LE((twice[i] - 2.0 * base[i]).norm(), 1e-12);
  }
}

TEST(PlanFootholds, MirroringVelocityMirrorsFootholds) {
  Fixture s;
  s.com0 = Vector2d(0.3, 0.0);
  MatrixXd v = ConstantVelocity({0.2, 0.15});
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  // Mirror the motion and swap left/right legs so each leg keeps its timing.
  gait::GaitStatusSeq swapped = s.delta;
  swapped.delta.row(0) = s.delta.delta.row(1);
  swapped.delta.row(1) = s.delta.delta.row(0);
  swapped.delta.row(2) = s.delta.delta.row(3);
  swapped.delta.row(3) = s.delta.delta.row(2);
  v.row(1) *= -1.0;
  const FootholdSeq mirrored = PlanFootholds(v, swapped, s.com0, s.layout, s.gait);
  const int partner[] = {1, 0, 3, 2};
  for (int leg = 0; leg < kNumLegs; ++leg) {
    for (int k = 0; k < kNodes; ++k) {
      EXPECT_NEAR(mirrored.p_f(3 * partner[leg], k), seq.p_f(3 * leg, k), 1e-12);
      EXPECT_NEAR(mirrored.p_f(3 * partner[leg] + 1, k), -seq.p_f(3 * leg + 1, k), 1e-12);
    }
  }
}

TEST(PlanFootholds, StanceColumnsAreConstantAndGroundLevel) {
  Fixture s;
  const MatrixXd v = ConstantVelocity({0.3, 0.1});
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    for (int k = 0; k < kNodes; ++k) {
      EXPECT_EQ(seq.p_f(3 * leg + 2, k), 0.0);
      if (k + 1 < kNodes && s.delta.delta(leg, k) == 1 && s.delta.delta(leg, k + 1) == 1) {
        EXPECT_TRUE((seq.p_f.block<2, 1>(3 * leg, k) == seq.p_f.block<2, 1>(3 * leg, k + 1)));
      }
    }
  }
}

TEST(PlanFootholds, MeasuredFeetHoldThroughCurrentStance) {
  Fixture s;
  const MatrixXd v = ConstantVelocity({0.3, 0.0});
  MeasuredFeet measured;
  int leg = s.delta.delta(0, 0) == 1 ? 0 : 1;
  measured[leg] = Vector2d(1.0, 2.0);
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait, measured);
  EXPECT_TRUE((seq.p_f.block<2, 1>(3 * leg, 0) == Vector2d(1.0, 2.0)));
  const FootholdSeq plain = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  const Vector2d hip = s.com0 + s.layout.hip_offsets.row(leg).transpose();
  EXPECT_LE((plain.p_f.block<2, 1>(3 * leg, 0) - hip).norm(), 1e-15);
}

TEST(PlanFootholds, ClampsLargeOffsets) {
  Fixture s;
  const MatrixXd v = ConstantVelocity({3.0, 0.0});
  const FootholdSeq seq = PlanFootholds(v, s.delta, s.com0, s.layout, s.gait);
  EXPECT_TRUE(seq.clamped);
  for (const auto& o : TouchdownOffsets(s, v, seq)) {
    EXPECT_NEAR(o.norm(), s.layout.reach_radius, 1e-12);
  }
}

TEST(PlanFootholds, RejectsWrongVelocityShape) {
  Fixture s;
  EXPECT_THROW(PlanFootholds(MatrixXd::Zero(2, kNodes), s.delta, s.com0, s.layout, s.gait),
               Error);
}

TEST(HipLayoutValidate, RequiresMirrorSymmetry) {
  HipLayout l = HipLayout::Default();
  EXPECT_NO_THROW(Validate(l));
  l.hip_offsets(0, 1) = 0.2;
  EXPECT_THROW(Validate(l), Error);
  l = HipLayout::Default();
  l.stance_height = 0.0;
  EXPECT_THROW(Validate(l), Error);
}

TEST(MaxStanceChange, MeasuresLargestStanceShift) {
  Fixture s;
  const FootholdSeq a =
      PlanFootholds(ConstantVelocity({0.0, 0.0}), s.delta, s.com0, s.layout, s.gait);
  const FootholdSeq b =
      PlanFootholds(ConstantVelocity({0.0, 0.0}), s.delta, s.com0, s.layout, s.gait);
  EXPECT_EQ(MaxStanceChange(a, b, s.delta), 0.0);
}

}  // namespace
}  // namespace quadref::stepping
