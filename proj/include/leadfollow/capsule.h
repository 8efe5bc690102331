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

#ifndef LEADFOLLOW_CAPSULE_H_
#define LEADFOLLOW_CAPSULE_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "leadfollow/skeleton.h"

namespace leadfollow {

// Swept sphere around segment [p, q].
struct Capsule {
  Eigen::Vector3d p;
  Eigen::Vector3d q;
  double radius = 0.0;
};

using CapsuleSet = std::vector<Capsule>;

// One capsule per bone of `skeleton`. Throws ValidationError on a joint-count
// mismatch.
CapsuleSet pose_to_capsules(std::span<const Eigen::Vector3d> pose,
                            const SkeletonSpec& skeleton);

// Closest distance between segments [p1, q1] and [p2, q2]; zero-length
// segments are handled as points.
double segment_distance(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                        const Eigen::Vector3d& p2, const Eigen::Vector3d& q2);

double point_segment_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& p,
                              const Eigen::Vector3d& q);

struct Contact {
  int bone_a = 0;
  int bone_b = 0;
  double depth = 0.0;  // (r_a + r_b) - axis distance, > 0
};

struct ConflictResult {
  bool conflict = false;
  std::vector<Contact> contacts;
};

// Every inter-agent capsule pair closer than the sum of radii (strict).
ConflictResult detect_conflict(std::span<const Eigen::Vector3d> pose_a,
                               std::span<const Eigen::Vector3d> pose_b,
                               const SkeletonSpec& skeleton);

// Boolean-only variant with an axis-aligned bounding box early out.
bool poses_overlap(const CapsuleSet& a, const CapsuleSet& b);

}  // namespace leadfollow

#endif  // LEADFOLLOW_CAPSULE_H_
