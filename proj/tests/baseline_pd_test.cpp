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

#include "quadref/baseline_pd.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "quadref/error.hpp"

namespace quadref::baseline {
namespace {

TEST(GainsFromSettling, ReproducesPublishedGains) {
  const PdGains g = GainsFromSettling(22.0, 4.8);
  EXPECT_NEAR(g.kp, 15.2778, 1e-4);
  EXPECT_NEAR(g.kd, 36.6667, 1e-4);
}

TEST(GainsFromSettling, InverseSquareInSettlingTime) {
  EXPECT_NEAR(GainsFromSettling(22.0, 9.6).kp, GainsFromSettling(22.0, 4.8).kp / 4.0, 1e-12);
}

TEST(GainsFromSettling, RoundTrip) {
  for (double m : {5.0, 22.0, 80.0}) {
    for (double t : {0.5, 3.0, 4.8}) {
      const PdGains g = GainsFromSettling(m, t);
      EXPECT_NEAR(4.0 * std::sqrt(m / g.kp), t, 1e-9);
      EXPECT_NEAR(g.kd, 2.0 * std::sqrt(m * g.kp), 1e-9);
    }
  }
  EXPECT_THROW(GainsFromSettling(0.0, 1.0), Error);
  EXPECT_THROW(GainsFromSettling(1.0, 0.0), Error);
}

TEST(FfForce, Examples) {
  const PdGains g{15.0, 36.0};
  EXPECT_EQ(FfForce(0.0, 0.0, 0.0, 0.0, g), 0.0);
  EXPECT_NEAR(FfForce(0.1, 0.0, 0.0, 0.0, g), 1.5, 1e-12);
  EXPECT_NEAR(FfForce(0.0, 0.0, 0.2, 0.0, g), -7.2, 1e-12);
}

TEST(FfForce, LinearInErrors) {
  const PdGains g{170.0, 122.0};
  const double a = FfForce(0.3, 0.1, -0.2, 0.05, g);
  const double b = FfForce(-0.1, 0.2, 0.4, -0.1, g);
  const double sum = FfForce(0.2, 0.3, 0.2, -0.05, g);
  EXPECT_NEAR(a + b, sum, 1e-12);
}

TEST(PdGainsValidate, RejectsNegative) {
  EXPECT_NO_THROW(Validate({170.0, 122.0}));
  EXPECT_THROW(Validate({-1.0, 0.0}), Error);
}

}  // namespace
}  // namespace quadref::baseline
