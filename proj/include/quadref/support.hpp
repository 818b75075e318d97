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

#ifndef QUADREF_SUPPORT_HPP_
#define QUADREF_SUPPORT_HPP_

#include <vector>

#include "quadref/types.hpp"

namespace quadref::support {

// normal' w <= offset
struct HalfPlane {
  Vector2d normal;
  double offset = 0.0;
};

// Admissible ZMP region for one node.
struct SupportRegion {
  std::vector<HalfPlane> half_planes;
  Vector2d center = Vector2d::Zero();
  int stance_count = 0;

  // max_j (normal_j' w - offset_j); <= 0 means w is admissible.
  double MaxViolation(const Vector2d& w) const;
  bool Contains(const Vector2d& w, double tol = 0.0) const;
};

inline constexpr double kDefaultInflateEps = 1e-7;

// feet: XY positions of the stance feet (any order). With three or more
// non-collinear feet the region is their convex hull; with two feet, or
// collinear ones, it is the foot-to-foot segment inflated to a rectangle of
// half-width inflate_eps. Throws Error(kDegenerateSupport) for fewer than two
// feet or coincident feet.
SupportRegion BuildRegion(const std::vector<Vector2d>& feet,
                          double inflate_eps = kDefaultInflateEps);

// Picks the stance legs out of a 12-row foothold column.
std::vector<Vector2d> StanceFeetXY(const Eigen::Ref<const VectorXd>& footholds12,
                                   const ContactFlags& delta_k);

SupportRegion BuildRegion(const Eigen::Ref<const VectorXd>& footholds12,
                          const ContactFlags& delta_k,
                          double inflate_eps = kDefaultInflateEps);

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Vector2d> ConvexHull(std::vector<Vector2d> points);

}  // namespace quadref::support

#endif  // QUADREF_SUPPORT_HPP_
