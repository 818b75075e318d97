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

#include <gtest/gtest.h>

#include "quadref/error.hpp"

namespace quadref::gait {
namespace {

constexpr int kLF = 0, kRF = 1, kLH = 2, kRH = 3;

TEST(GaitSchedule, StandIsAlwaysStance) {
  const GaitStatusSeq seq = Schedule(GaitSpec::Stand(), 0.37, 50, 0.04);
  EXPECT_EQ(seq.num_nodes(), 50);
  EXPECT_TRUE((seq.delta.array() == 1).all());
}

TEST(GaitSchedule, TrotPairStanceNodes) {
  const GaitStatusSeq seq = Schedule(GaitSpec::Trot(1.0, 0.65), 0.0, 100, 0.04);
  for (int k = 0; k < 100; ++k) {
    const int expected = (k % 25) <= 16 ? 1 : 0;
    EXPECT_EQ(seq.delta(kLF, k), expected) << k;
    EXPECT_EQ(seq.delta(kRH, k), expected) << k;
  }
}

TEST(GaitSchedule, TrotFourFootFraction) {
  const GaitStatusSeq seq = Schedule(GaitSpec::Trot(1.0, 0.65), 0.0, 1000, 0.001);
  int all_four = 0;
  for (int k = 0; k < seq.num_nodes(); ++k) {
    if (seq.delta.col(k).sum() == 4) ++all_four;
  }
  EXPECT_NEAR(all_four / 1000.0, 0.3, 1e-3);
}

TEST(GaitSchedule, PeriodicInCycleTime) {
  for (const GaitSpec& spec : {GaitSpec::Trot(1.0, 0.65), GaitSpec::Pace(0.8, 0.7)}) {
    const auto a = Schedule(spec, 0.12, 60, 0.04);
    const auto b = Schedule(spec, 0.12 + spec.cycle_time, 60, 0.04);
    EXPECT_EQ(a.delta, b.delta);
  }
}

TEST(GaitSchedule, TimeShiftShiftsColumns) {
  const GaitSpec spec = GaitSpec::Trot(1.0, 0.65);
  const auto a = Schedule(spec, 0.0, 60, 0.04);
  const auto b = Schedule(spec, 7 * 0.04, 53, 0.04);
  EXPECT_EQ(a.delta.rightCols(53), b.delta);
}

TEST(GaitSchedule, TrotAndPaceKeepTwoFeetDown) {
  for (double d : {0.5, 0.55, 0.65, 0.9}) {
    for (const GaitSpec& spec : {GaitSpec::Trot(1.0, d), GaitSpec::Pace(1.0, d)}) {
      const auto seq = Schedule(spec, 0.013, 400, 0.01);
      EXPECT_GE(seq.delta.colwise().sum().minCoeff(), 2) << d;
    }
  }
}

TEST(GaitSchedule, PacePairsLateralLegs) {
  const auto seq = Schedule(GaitSpec::Pace(1.0, 0.65), 0.0, 50, 0.04);
  EXPECT_EQ(seq.delta.row(kLF), seq.delta.row(kLH));
  EXPECT_EQ(seq.delta.row(kRF), seq.delta.row(kRH));
}

TEST(GaitSpecValidate, RejectsBadParameters) {
  EXPECT_THROW(Validate(GaitSpec::Trot(0.0, 0.65)), Error);
  EXPECT_THROW(Validate(GaitSpec::Trot(1.0, 0.0)), Error);
  EXPECT_THROW(Validate(GaitSpec::Trot(1.0, 1.2)), Error);
  GaitSpec broken = GaitSpec::Trot(1.0, 0.65);
  broken.phase_offsets = {0.0, 0.3, 0.5, 0.0};
  EXPECT_THROW(Validate(broken), Error);
  EXPECT_THROW(Schedule(GaitSpec::Stand(), 0.0, 0, 0.04), Error);
}

TEST(ContactSet, ListsStanceLegs) {
  EXPECT_EQ(ContactSet({1, 1, 1, 1}), (std::vector<int>{kLF, kRF, kLH, kRH}));
  EXPECT_EQ(ContactSet({1, 0, 0, 1}), (std::vector<int>{kLF, kRH}));
  EXPECT_TRUE(ContactSet({0, 0, 0, 0}).empty());
}

}  // namespace
}  // namespace quadref::gait
