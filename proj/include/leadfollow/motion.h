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

#ifndef LEADFOLLOW_MOTION_H_
#define LEADFOLLOW_MOTION_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "leadfollow/skeleton.h"

namespace leadfollow {

// Ground plane is (axis 0, axis 2); axis 1 points up.
inline constexpr int kAxisX = 0;
inline constexpr int kAxisUp = 1;
inline constexpr int kAxisZ = 2;

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// L frames x J joints of 3D positions in meters, sampled at `fps`.
// Immutable once constructed. Coordinates are stored frame-major:
// coords[(frame * J + joint) * 3 + axis].
class MotionSequence {
 public:
  MotionSequence(int frames, int joints, std::vector<double> coords,
                 double fps = 30.0);

  int frames() const { return frames_; }
  int joints() const { return joints_; }
  double fps() const { return fps_; }

  std::span<const double> coords() const { return coords_; }
  Eigen::Vector3d position(int frame, int joint) const;
  std::vector<Eigen::Vector3d> pose(int frame) const;

  // Frames x (3 * joints) view.
  Eigen::Map<const RowMatrix> matrix() const {
    return {coords_.data(), frames_, 3 * joints_};
  }

  bool operator==(const MotionSequence& other) const = default;

 private:
  int frames_;
  int joints_;
  double fps_;
  std::vector<double> coords_;
};

// The pair {leader, follower}. Both agents share frame count, joint count and
// frame rate.
class TwoAgentMotion {
 public:
  TwoAgentMotion(MotionSequence agent_a, MotionSequence agent_b);

  const MotionSequence& agent_a() const { return agent_a_; }
  const MotionSequence& agent_b() const { return agent_b_; }
  const MotionSequence& agent(int index) const {
    return index == 0 ? agent_a_ : agent_b_;
  }
  int frames() const { return agent_a_.frames(); }
  int joints() const { return agent_a_.joints(); }
  double fps() const { return agent_a_.fps(); }

  bool operator==(const TwoAgentMotion& other) const = default;

 private:
  MotionSequence agent_a_;
  MotionSequence agent_b_;
};

TwoAgentMotion swap_agents(const TwoAgentMotion& x);

// Per-frame root path on the ground plane, optionally with root height.
class Trajectory {
 public:
  explicit Trajectory(std::vector<Eigen::Vector2d> planar);
  Trajectory(std::vector<Eigen::Vector2d> planar, std::vector<double> height);

  int size() const { return static_cast<int>(planar_.size()); }
  bool has_height() const { return !height_.empty(); }
  const Eigen::Vector2d& planar(int frame) const { return planar_[frame]; }
  double height(int frame) const { return height_.at(frame); }
  const std::vector<Eigen::Vector2d>& points() const { return planar_; }
  const std::vector<double>& heights() const { return height_; }

  bool operator==(const Trajectory& other) const = default;

 private:
  std::vector<Eigen::Vector2d> planar_;
  std::vector<double> height_;
};

// Throws ValidationError when the motion's joint count disagrees with the
// skeleton.
void check_compatible(const MotionSequence& motion, const SkeletonSpec& skeleton);

Trajectory project_root_trajectory(const MotionSequence& motion,
                                   const SkeletonSpec& skeleton,
                                   bool with_height = false);

enum class ScenarioKind { kCircleDuet = 0, kApproachCollide, kMirrorWalk, kOrbit };

inline constexpr std::array<ScenarioKind, 4> kAllScenarioKinds = {
    ScenarioKind::kCircleDuet, ScenarioKind::kApproachCollide,
    ScenarioKind::kMirrorWalk, ScenarioKind::kOrbit};

std::string_view scenario_name(ScenarioKind kind);
// Throws ValidationError on unknown names.
ScenarioKind parse_scenario(std::string_view name);

// Categorical stand-in for a text prompt.
class ConditionLabel {
 public:
  static constexpr int kEmbeddingSize = static_cast<int>(kAllScenarioKinds.size());

  explicit ConditionLabel(ScenarioKind category) : category_(category) {}

  ScenarioKind category() const { return category_; }
  int index() const { return static_cast<int>(category_); }
  Eigen::VectorXd embedding() const;

  bool operator==(const ConditionLabel& other) const = default;

 private:
  ScenarioKind category_;
};

struct LabeledMotion {
  TwoAgentMotion motion;
  ConditionLabel label;
};

}  // namespace leadfollow

#endif  // LEADFOLLOW_MOTION_H_
