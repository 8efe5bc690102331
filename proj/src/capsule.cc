// Copyright 2026 The Leadfollow Authors
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

#include "leadfollow/capsule.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "leadfollow/error.h"

namespace leadfollow {

CapsuleSet pose_to_capsules(std::span<const Eigen::Vector3d> pose,
                            const SkeletonSpec& skeleton) {
  if (static_cast<int>(pose.size()) != skeleton.joint_count()) {
    throw ValidationError("pose has " + std::to_string(pose.size()) +
                          " joints but skeleton has " +
                          std::to_string(skeleton.joint_count()));
  }
  CapsuleSet capsules;
  capsules.reserve(skeleton.bones().size());
  for (const Bone& bone : skeleton.bones()) {
    capsules.push_back({pose[bone.parent], pose[bone.child], bone.radius});
  }
  return capsules;
}

double point_segment_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& p,
                              const Eigen::Vector3d& q) {
  const Eigen::Vector3d d = q - p;
  const double len2 = d.squaredNorm();
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp((x - p).dot(d) / len2, 0.0, 1.0);
  return (p + s * d - x).norm();
}

// Closest points of two segments (Ericson, Real-Time Collision Detection,
// 5.1.9), with the zero-length cases folded in.
double segment_distance(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                        const Eigen::Vector3d& p2, const Eigen::Vector3d& q2) {
  constexpr double kEps = 1e-18;
  const Eigen::Vector3d d1 = q1 - p1;
  const Eigen::Vector3d d2 = q2 - p2;
  const Eigen::Vector3d r = p1 - p2;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= kEps && e <= kEps) return r.norm();
  if (a <= kEps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= kEps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > kEps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

ConflictResult detect_conflict(std::span<const Eigen::Vector3d> pose_a,
                               std::span<const Eigen::Vector3d> pose_b,
                               const SkeletonSpec& skeleton) {
  const CapsuleSet a = pose_to_capsules(pose_a, skeleton);
  const CapsuleSet b = pose_to_capsules(pose_b, skeleton);
  ConflictResult result;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      const double reach = a[i].radius + b[j].radius;
      const double d = segment_distance(a[i].p, a[i].q, b[j].p, b[j].q);
      if (d < reach) {
        result.contacts.push_back({static_cast<int>(i), static_cast<int>(j), reach - d});
      }
    }
  }
  result.conflict = !result.contacts.empty();
  return result;
}

bool poses_overlap(const CapsuleSet& a, const CapsuleSet& b) {
  if (a.empty() || b.empty()) return false;
  auto bounds = [](const CapsuleSet& set, Eigen::Vector3d& lo, Eigen::Vector3d& hi) {
    lo = Eigen::Vector3d::Constant(INFINITY);
    hi = Eigen::Vector3d::Constant(-INFINITY);
    for (const Capsule& c : set) {
      lo = lo.cwiseMin(c.p.cwiseMin(c.q) - Eigen::Vector3d::Constant(c.radius));
      hi = hi.cwiseMax(c.p.cwiseMax(c.q) + Eigen::Vector3d::Constant(c.radius));
    }
  };
  Eigen::Vector3d lo_a, hi_a, lo_b, hi_b;
  bounds(a, lo_a, hi_a);
  bounds(b, lo_b, hi_b);
  if ((lo_a.array() > hi_b.array()).any() || (lo_b.array() > hi_a.array()).any()) {
    return false;
  }
  for (const Capsule& ca : a) {
    for (const Capsule& cb : b) {
      if (segment_distance(ca.p, ca.q, cb.p, cb.q) < ca.radius + cb.radius) return true;
    }
  }
  return false;
}

}  // namespace leadfollow
