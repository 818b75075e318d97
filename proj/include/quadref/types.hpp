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

#ifndef QUADREF_TYPES_HPP_
#define QUADREF_TYPES_HPP_

#include <array>
#include <cstddef>

#include <Eigen/Dense>

namespace quadref {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Eigen::VectorXd;

inline constexpr int kNumLegs = 4;

// Leg order used for every per-leg array and every 12-row force/foothold
// stack in the library.
enum class Leg : int { kLF = 0, kRF = 1, kLH = 2, kRH = 3 };

inline constexpr std::array<const char*, kNumLegs> kLegNames = {"LF", "RF", "LH",
                                                                "RH"};

// One contact flag per leg, 1 = stance.
using ContactFlags = std::array<int, kNumLegs>;

inline constexpr double kGravity = 9.81;

}  // namespace quadref

#endif  // QUADREF_TYPES_HPP_
