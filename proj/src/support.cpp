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

#include "quadref/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadref/error.hpp"

namespace quadref::support {
namespace {

double Cross(const Vector2d& o, const Vector2d& a, const Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

SupportRegion InflatedSegment(const Vector2d& a, const Vector2d& b, double eps) {
  const Vector2d dir = (b - a).normalized();
  const Vector2d perp(-dir.y(), dir.x());
  SupportRegion r;
  r.half_planes = {
      {perp, perp.dot(a) + eps},
      {-perp, -perp.dot(a) + eps},
      {dir, dir.dot(b)},
      {-dir, -dir.dot(a)},
  };
  return r;
}

}  // namespace

double SupportRegion::MaxViolation(const Vector2d& w) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& hp : half_planes) {
    worst = std::max(worst, hp.normal.dot(w) - hp.offset);
  }
  return worst;
}

bool SupportRegion::Contains(const Vector2d& w, double tol) const {
  return MaxViolation(w) <= tol;
}

std::vector<Vector2d> ConvexHull(std::vector<Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector2d& a, const Vector2d& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vector2d> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const auto& p = pts[i - 1];
    while (k >= t && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

SupportRegion BuildRegion(const std::vector<Vector2d>& feet, double inflate_eps) {
  if (feet.size() < 2) {
    throw Error(ErrorKind::kDegenerateSupport,
                "support: fewer than two stance feet");
  }
  if (!(inflate_eps > 0.0)) {
    throw Error(ErrorKind::kConfig, "support: inflate_eps must be positive");
  }
  Vector2d center = Vector2d::Zero();
  for (const auto& f : feet) center += f;
  center /= static_cast<double>(feet.size());

  const std::vector<Vector2d> hull = ConvexHull(feet);
  SupportRegion region;
  // Area test guards nearly collinear triples that survive the hull.
  double area2 = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& a = hull[i];
    const auto& b = hull[(i + 1) % hull.size()];
    area2 += a.x() * b.y() - a.y() * b.x();
  }
  if (hull.size() >= 3 && area2 > 1e-10) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const Vector2d& a = hull[i];
      const Vector2d& b = hull[(i + 1) % hull.size()];
      const Vector2d edge = (b - a).normalized();
      const Vector2d outward(edge.y(), -edge.x());
      region.half_planes.push_back({outward, outward.dot(a)});
    }
  } else {
    // Two feet, or collinear feet: the extreme pair spans the segment.
    std::size_t ia = 0;
    std::size_t ib = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < feet.size(); ++i) {
      for (std::size_t j = i + 1; j < feet.size(); ++j) {
        const double d = (feet[i] - feet[j]).squaredNorm();
        if (d > best) {
          best = d;
          ia = i;
          ib = j;
        }
      }
    }
    if (best < 1e-12) {
      throw Error(ErrorKind::kDegenerateSupport, "support: stance feet coincide");
    }
    region = InflatedSegment(feet[ia], feet[ib], inflate_eps);
  }
  region.center = center;
  region.stance_count = static_cast<int>(feet.size());
  return region;
}

std::vector<Vector2d> StanceFeetXY(const Eigen::Ref<const VectorXd>& footholds12,
                                   const ContactFlags& delta_k) {
  std::vector<Vector2d> feet;
  for (int i = 0; i < kNumLegs; ++i) {
    if (delta_k[i] == 1) feet.emplace_back(footholds12(3 * i), footholds12(3 * i + 1));
  }
  return feet;
}

SupportRegion BuildRegion(const Eigen::Ref<const VectorXd>& footholds12,
                          const ContactFlags& delta_k, double inflate_eps) {
  return BuildRegion(StanceFeetXY(footholds12, delta_k), inflate_eps);
}

}  // namespace quadref::support
