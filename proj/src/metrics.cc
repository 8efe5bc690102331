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

#include "leadfollow/metrics.h"

#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "leadfollow/capsule.h"
#include "leadfollow/error.h"

namespace leadfollow {

double trajectory_rmse(const MotionSequence& motion, const Trajectory& target,
                       const SkeletonSpec& skeleton) {
  check_compatible(motion, skeleton);
  if (target.size() != motion.frames()) {
    throw ValidationError("trajectory_rmse: target has " + std::to_string(target.size()) +
                          " points, motion has " + std::to_string(motion.frames()) +
                          " frames");
  }
  const int root = skeleton.root_index();
  double sum = 0.0;
  for (int f = 0; f < motion.frames(); ++f) {
    const Eigen::Vector3d p = motion.position(f, root);
    const Eigen::Vector2d d = Eigen::Vector2d(p[kAxisX], p[kAxisZ]) - target.planar(f);
    sum += d.squaredNorm();
  }
  return std::sqrt(sum / motion.frames());
}

int penetration_frames(const TwoAgentMotion& x, const SkeletonSpec& skeleton) {
  check_compatible(x.agent_a(), skeleton);
  int count = 0;
  for (int f = 0; f < x.frames(); ++f) {
    if (detect_conflict(x.agent_a().pose(f), x.agent_b().pose(f), skeleton).conflict) ++count;
  }
  return count;
}

double final_velocity_similarity(const TwoAgentMotion& x, int tail_frames, double epsilon) {
  if (tail_frames < 1 || tail_frames > x.frames() - 1) {
    throw ValidationError("final_velocity_similarity: tail must be in [1, " +
                          std::to_string(x.frames() - 1) + "]");
  }
  const MotionSequence& a = x.agent_a();
  const MotionSequence& b = x.agent_b();
  double sum = 0.0;
  for (int f = x.frames() - 1 - tail_frames; f < x.frames() - 1; ++f) {
    for (int j = 0; j < x.joints(); ++j) {
      const Eigen::Vector3d va = a.position(f + 1, j) - a.position(f, j);
      const Eigen::Vector3d vb = b.position(f + 1, j) - b.position(f, j);
      const double na = va.norm();
      const double nb = vb.norm();
      if (na < epsilon || nb < epsilon) continue;
      sum += va.dot(vb) / (na * nb);
    }
  }
  return sum / (static_cast<double>(tail_frames) * x.joints());
}

double diversity(std::span<const TwoAgentMotion> motions, int n_pairs, Rng& rng) {
  const int n = static_cast<int>(motions.size());
  if (n < 2) throw ValidationError("diversity: need at least 2 motions");
  std::vector<Eigen::VectorXd> flat;
  flat.reserve(n);
  for (const auto& m : motions) flat.push_back(MotionTensor::from_motion(m).values());
  for (const auto& v : flat) {
    if (v.size() != flat.front().size()) throw ValidationError("diversity: shape mismatch");
  }
  double sum = 0.0;
  if (n_pairs <= 0) {
    long count = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        sum += (flat[i] - flat[j]).norm();
        ++count;
      }
    }
    return sum / static_cast<double>(count);
  }
  std::uniform_int_distribution<int> first(0, n - 1);
  std::uniform_int_distribution<int> second(0, n - 2);
  for (int k = 0; k < n_pairs; ++k) {
    const int i = first(rng);
    int j = second(rng);
    if (j >= i) ++j;
    sum += (flat[i] - flat[j]).norm();
  }
  return sum / n_pairs;
}

double smoothness(const MotionSequence& motion) {
  if (motion.frames() < 4) throw ValidationError("smoothness: need at least 4 frames");
  double sum = 0.0;
  for (int f = 0; f + 3 < motion.frames(); ++f) {
    for (int j = 0; j < motion.joints(); ++j) {
      const Eigen::Vector3d jerk = motion.position(f + 3, j) - 3.0 * motion.position(f + 2, j) +
                                   3.0 * motion.position(f + 1, j) - motion.position(f, j);
      sum += jerk.norm();
    }
  }
  return sum / (static_cast<double>(motion.frames() - 3) * motion.joints());
}

}  // namespace leadfollow
