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

#ifndef LEADFOLLOW_METRICS_H_
#define LEADFOLLOW_METRICS_H_

#include <span>

#include "leadfollow/motion.h"
#include "leadfollow/skeleton.h"
#include "leadfollow/tensor.h"

namespace leadfollow {

// RMS over frames of the ground-plane distance between root and target.
double trajectory_rmse(const MotionSequence& motion, const Trajectory& target,
                       const SkeletonSpec& skeleton);

// Number of frames whose capsule sets overlap.
int penetration_frames(const TwoAgentMotion& x, const SkeletonSpec& skeleton);

// Mean per-joint cosine between the agents' velocities over the last
// `tail_frames` velocity samples; near-zero velocities count as 0.
double final_velocity_similarity(const TwoAgentMotion& x, int tail_frames,
                                 double epsilon = 1e-6);

// Mean Euclidean distance between flattened motions over `n_pairs` random
// distinct pairs; n_pairs <= 0 uses every unordered pair.
double diversity(std::span<const TwoAgentMotion> motions, int n_pairs, Rng& rng);

// Mean norm of the third finite difference over joints and frames.
double smoothness(const MotionSequence& motion);

}  // namespace leadfollow

#endif  // LEADFOLLOW_METRICS_H_
