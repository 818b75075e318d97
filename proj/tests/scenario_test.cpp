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


#include "quadref/scenario.hpp"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "quadref/error.hpp"

namespace quadref::scenario {
namespace {

void ExpectConfigError(const std::string& text) {
  try {
    Parse(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig) << e.what();
  }
}

TEST(ScenarioParse, EmptyDocumentTakesDefaults) {
  const sim::Scenario s = Parse("{}");
  EXPECT_EQ(s.gait.kind, gait::GaitKind::kTrot);
  EXPECT_DOUBLE_EQ(s.gait.cycle_time, 1.0);
  EXPECT_DOUBLE_EQ(s.gait.duty_factor, 0.65);
  EXPECT_DOUBLE_EQ(s.lip.sample_time, 0.04);
  EXPECT_EQ(s.lip.n_nodes, 50);
  EXPECT_EQ(s.governor.n_nmpc, 50);
  EXPECT_DOUBLE_EQ(s.sim.mass, 22.0);
  EXPECT_DOUBLE_EQ(s.lip.q_vel(1, 1), 300.0);
  EXPECT_DOUBLE_EQ(s.lip.q_zmp(1, 1), 350.0);
  EXPECT_DOUBLE_EQ(s.lip.q_slack_lin(1), 1000.0);
  EXPECT_DOUBLE_EQ(s.governor.response_time, 4.8);
  EXPECT_EQ(s.controller, sim::ControllerKind::kGovernor);
}

TEST(ScenarioParse, RobotValuesPropagate) {
  const sim::Scenario s = Parse(R"({"robot": {"mass": 30, "com_height": 0.35}})");
  EXPECT_DOUBLE_EQ(s.sim.mass, 30.0);
  EXPECT_DOUBLE_EQ(s.governor.mass, 30.0);
  EXPECT_DOUBLE_EQ(s.lip.com_height, 0.35);
  EXPECT_DOUBLE_EQ(s.sim.com_height, 0.35);
}

TEST(ScenarioParse, WeightsAsDiagonalOrMatrix) {
  const sim::Scenario s =
      Parse(R"({"weights": {"Qv": [1, 2], "Qw": [[3, 0.5], [0.5, 4]], "Qk": [1, 2, 3]}})");
  EXPECT_DOUBLE_EQ(s.lip.q_vel(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(s.lip.q_vel(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.lip.q_zmp(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(s.governor.q_k(2, 2), 3.0);
}

TEST(ScenarioParse, MalformedWeightsRejected) {
  ExpectConfigError(R"({"weights": {"Qv": [1, 2, 3]}})");
  ExpectConfigError(R"({"weights": {"Qw": [[1, 0], [0]]}})");
  ExpectConfigError(R"({"weights": {"Qw": [[1, 2], [0, 1]]}})");   // not symmetric
  ExpectConfigError(R"({"weights": {"Qv": [-1, 1]}})");            // not PSD
  ExpectConfigError(R"({"weights": {"Qu": [[1, 2], [2, 1]]}})");   // indefinite
  ExpectConfigError(R"({"weights": {"Qs_lin": [0, -1]}})");
  ExpectConfigError(R"({"weights": {"Qp": "big"}})");
}

TEST(ScenarioParse, UnknownKeysRejected) {
  ExpectConfigError(R"({"gaits": {}})");
  ExpectConfigError(R"({"gait": {"kind": "trot", "period": 1.0}})");
  ExpectConfigError(R"({"sim": {"pushes": [{"start": 0, "duration": 1, "force": [0, 1],
                                            "torque": 1}]}})");
  ExpectConfigError(R"({"controller": {"kind": "governor", "pd_gains": {"kp": 1, "kd": 1}}})");
}

TEST(ScenarioParse, InvalidValuesRejected) {
  ExpectConfigError("not json");
  ExpectConfigError("[1, 2]");
  ExpectConfigError(R"({"gait": {"kind": "gallop"}})");
  ExpectConfigError(R"({"gait": {"duty_factor": 1.5}})");
  ExpectConfigError(R"({"horizon": {"n_nodes_ref": 50, "n_nodes_nmpc": 60}})");
  ExpectConfigError(R"({"horizon": {"n_nodes_ref": 2.5}})");
  ExpectConfigError(R"({"governor": {"tol": 0}})");
  ExpectConfigError(R"({"governor": {"response_time": 0.01}})");
  ExpectConfigError(R"({"governor": {"goal_mode": "wherever"}})");
  ExpectConfigError(R"({"governor": {"force_optimize": true, "force_heuristic": true}})");
  ExpectConfigError(R"({"governor": {"slack_axes": ["z"]}})");
  ExpectConfigError(R"({"sim": {"duration": 0}})");
  ExpectConfigError(R"({"sim": {"substeps": 0}})");
  ExpectConfigError(R"({"sim": {"pushes": [{"start": 0, "force": [0, 1]}]}})");
  ExpectConfigError(R"({"controller": {"kind": "pd_baseline"}})");
  ExpectConfigError(R"({"controller": {"kind": "pd_baseline", "pd_gains": {"kp": -1, "kd": 1}}})");
}

TEST(ScenarioParse, PdGainsFromSettlingTime) {
  const sim::Scenario s = Parse(
      R"({"controller": {"kind": "pd_baseline", "pd_gains": {"settling_time": 4.8}}})");
  EXPECT_EQ(s.controller, sim::ControllerKind::kPdBaseline);
  EXPECT_NEAR(s.pd_gains.kp, 22.0 * 16.0 / (4.8 * 4.8), 1e-12);
  EXPECT_NEAR(s.pd_gains.kd, 2.0 * std::sqrt(22.0 * s.pd_gains.kp), 1e-12);
}

TEST(ScenarioParse, PushesAndSlackAxes) {
  const sim::Scenario s = Parse(R"({
    "governor": {"slack_axes": ["x", "y"], "goal_mode": "fixed_xy", "fixed_goal": [0.1, -0.2]},
    "sim": {"pushes": [{"start": 1, "duration": 5, "force": [0, 15]}],
            "lateral_drift_force": [0, 2]}})");
  ASSERT_EQ(s.sim.pushes.size(), 1u);
  EXPECT_DOUBLE_EQ(s.sim.pushes[0].force.y(), 15.0);
  EXPECT_TRUE(s.governor.slack_axes.x);
  EXPECT_EQ(s.governor.goal_mode, governor::GoalMode::kFixedXY);
  EXPECT_DOUBLE_EQ(s.sim.lateral_drift_force.y(), 2.0);
}

TEST(ScenarioLoad, MissingFileIsConfigError) {
  try {
    Load("/nonexistent/scenario.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
}

TEST(ScenarioLoad, BundledScenariosLoad) {
  int count = 0;
  for (const auto& entry :
       std::filesystem::directory_iterator(std::string(QUADREF_SOURCE_DIR) + "/scenarios")) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(Load(entry.path().string())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 7);
}

}  // namespace
}  // namespace quadref::scenario
