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

#ifndef LEADFOLLOW_SKELETON_H_
#define LEADFOLLOW_SKELETON_H_

#include <string>
#include <vector>

namespace leadfollow {

struct Bone {
  int parent = 0;
  int child = 0;
  double radius = 0.06;  // capsule radius in meters
};

// Kinematic tree over `joint_count` joints. Bones must form a spanning tree
// rooted at `root_index`; the constructor throws ValidationError otherwise.
class SkeletonSpec {
 public:
  SkeletonSpec(int joint_count, std::vector<Bone> bones, int root_index = 0);

  int joint_count() const { return joint_count_; }
  int root_index() const { return root_index_; }
  const std::vector<Bone>& bones() const { return bones_; }
  int bone_count() const { return static_cast<int>(bones_.size()); }

  bool operator==(const SkeletonSpec& other) const = default;

 private:
  int joint_count_;
  std::vector<Bone> bones_;
  int root_index_;
};

// Joint indices of the default 22-joint body.
namespace joint {
inline constexpr int kPelvis = 0;
inline constexpr int kLeftHip = 1;
inline constexpr int kRightHip = 2;
inline constexpr int kSpine1 = 3;
inline constexpr int kLeftKnee = 4;
inline constexpr int kRightKnee = 5;
inline constexpr int kSpine2 = 6;
inline constexpr int kLeftAnkle = 7;
inline constexpr int kRightAnkle = 8;
inline constexpr int kSpine3 = 9;
inline constexpr int kLeftFoot = 10;
inline constexpr int kRightFoot = 11;
inline constexpr int kNeck = 12;
inline constexpr int kLeftCollar = 13;
inline constexpr int kRightCollar = 14;
inline constexpr int kHead = 15;
inline constexpr int kLeftShoulder = 16;
inline constexpr int kRightShoulder = 17;
inline constexpr int kLeftElbow = 18;
inline constexpr int kRightElbow = 19;
inline constexpr int kLeftWrist = 20;
inline constexpr int kRightWrist = 21;
inline constexpr int kDefaultCount = 22;
}  // namespace joint

// Canonical 22-joint tree (pelvis, three spine joints, neck, head, collars,
// shoulders, elbows, wrists, hips, knees, ankles, feet) with 21 bones that
// all share `capsule_radius`.
SkeletonSpec default_skeleton(double capsule_radius = 0.06);

const std::string& default_joint_name(int index);

}  // namespace leadfollow

#endif  // LEADFOLLOW_SKELETON_H_
