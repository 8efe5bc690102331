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

#include "leadfollow/skeleton.h"

#include <array>
#include <string>
#include <vector>

#include "leadfollow/error.h"

namespace leadfollow {

SkeletonSpec::SkeletonSpec(int joint_count, std::vector<Bone> bones, int root_index)
    : joint_count_(joint_count), bones_(std::move(bones)), root_index_(root_index) {
  if (joint_count_ <= 0) throw ValidationError("skeleton: joint_count must be positive");
  if (root_index_ < 0 || root_index_ >= joint_count_) {
    throw ValidationError("skeleton: root_index out of range");
  }
  if (static_cast<int>(bones_.size()) != joint_count_ - 1) {
    throw ValidationError("skeleton: a tree over " + std::to_string(joint_count_) +
                          " joints needs " + std::to_string(joint_count_ - 1) + " bones");
  }
  std::vector<int> parent(joint_count_, -1);
  for (const Bone& bone : bones_) {
    if (bone.parent < 0 || bone.parent >= joint_count_ || bone.child < 0 ||
        bone.child >= joint_count_) {
      throw ValidationError("skeleton: bone index out of range");
    }
    if (!(bone.radius > 0.0)) throw ValidationError("skeleton: capsule radius must be > 0");
    if (bone.child == root_index_) throw ValidationError("skeleton: root cannot be a child");
    if (parent[bone.child] != -1) {
      throw ValidationError("skeleton: joint " + std::to_string(bone.child) +
                            " has two parents");
    }
    parent[bone.child] = bone.parent;
  }
  // Every joint must reach the root by walking parents.
  for (int j = 0; j < joint_count_; ++j) {
    int cursor = j;
    for (int hops = 0; cursor != root_index_; ++hops) {
      if (hops > joint_count_ || parent[cursor] < 0) {
        throw ValidationError("skeleton: joint " + std::to_string(j) +
                              " is not connected to the root");
      }
      cursor = parent[cursor];
    }
  }
}

SkeletonSpec default_skeleton(double capsule_radius) {
  using namespace joint;
  const std::array<std::pair<int, int>, 21> edges = {{
      {kPelvis, kLeftHip},          {kPelvis, kRightHip},
      {kPelvis, kSpine1},           {kLeftHip, kLeftKnee},
      {kRightHip, kRightKnee},      {kSpine1, kSpine2},
      {kLeftKnee, kLeftAnkle},      {kRightKnee, kRightAnkle},
      {kSpine2, kSpine3},           {kLeftAnkle, kLeftFoot},
      {kRightAnkle, kRightFoot},    {kSpine3, kNeck},
      {kSpine3, kLeftCollar},       {kSpine3, kRightCollar},
      {kNeck, kHead},               {kLeftCollar, kLeftShoulder},
      {kRightCollar, kRightShoulder}, {kLeftShoulder, kLeftElbow},
      {kRightShoulder, kRightElbow}, {kLeftElbow, kLeftWrist},
      {kRightElbow, kRightWrist},
  }};
  std::vector<Bone> bones;
  bones.reserve(edges.size());
  for (const auto& [p, c] : edges) bones.push_back({p, c, capsule_radius});
  return SkeletonSpec(kDefaultCount, std::move(bones), kPelvis);
}

const std::string& default_joint_name(int index) {
  static const std::array<std::string, joint::kDefaultCount> kNames = {
      "pelvis",      "left_hip",       "right_hip",      "spine1",
      "left_knee",   "right_knee",     "spine2",         "left_ankle",
      "right_ankle", "spine3",         "left_foot",      "right_foot",
      "neck",        "left_collar",    "right_collar",   "head",
      "left_shoulder", "right_shoulder", "left_elbow",   "right_elbow",
      "left_wrist",  "right_wrist"};
  return kNames.at(index);
}

}  // namespace leadfollow
