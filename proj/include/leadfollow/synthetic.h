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

#ifndef LEADFOLLOW_SYNTHETIC_H_
#define LEADFOLLOW_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "leadfollow/motion.h"
#include "leadfollow/skeleton.h"

namespace leadfollow {

inline constexpr int kDefaultFrames = 210;
inline constexpr double kDefaultFps = 30.0;

// Procedural two-agent clip for `kind` on the default skeleton. A pure
// function of its arguments.
//   circle-duet      roots on a 1.5 m circle in opposite phase
//   approach-collide straight paths crossing near frame L/2
//   mirror-walk      parallel paths 1 m apart
//   orbit            agent a stands, agent b circles it at 1 m
LabeledMotion generate_scenario(ScenarioKind kind, int frames, double fps,
                                std::uint64_t seed);

enum class TrajectoryShape { kLine, kCircle, kSCurve };

std::string_view trajectory_shape_name(TrajectoryShape shape);
TrajectoryShape parse_trajectory_shape(std::string_view name);

// Arc-length parameterized ground-plane path with `frames` points:
//   line    (0,0) -> (scale,0)
//   circle  radius `scale` around the origin, starting at (scale,0), closed
//   s-curve one sine period along x over [0, scale], amplitude 0.15 scale
Trajectory generate_trajectory_condition(TrajectoryShape shape, int frames, double scale);

struct DatasetItem {
  LabeledMotion sample;
  std::uint64_t seed = 0;
};

struct Dataset {
  std::vector<DatasetItem> items;
  Eigen::VectorXd mean;                               // flattened tensor layout
  std::map<ScenarioKind, Eigen::VectorXd> kind_means;

  std::vector<LabeledMotion> labeled() const;
};

// n_per_kind clips per kind with per-item seeds derive_seed(seed, kind, i),
// plus the flattened dataset mean and per-kind means.
Dataset build_dataset(int n_per_kind, std::span<const ScenarioKind> kinds, int frames,
                      double fps, std::uint64_t seed);

}  // namespace leadfollow

#endif  // LEADFOLLOW_SYNTHETIC_H_
