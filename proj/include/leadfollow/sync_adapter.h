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

#ifndef LEADFOLLOW_SYNC_ADAPTER_H_
#define LEADFOLLOW_SYNC_ADAPTER_H_

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "leadfollow/capsule.h"
#include "leadfollow/motion.h"
#include "leadfollow/pace_controller.h"
#include "leadfollow/sampler.h"

namespace leadfollow {

enum class VelocityLossForm { kCosine, kDot };

struct AdapterConfig {
  double delta = 0.10;  // joint margin, meters
  double w_joint = 1.0;
  double w_vel = 0.1;
  int adapter_steps = 3;
  // Explicit firing steps; when non-empty, overrides adapter_steps.
  std::vector<int> fire_at;
  double grad_step_size = 0.1;
  int grad_iters = 5;
  double vel_epsilon = 1e-6;  // m/frame
  VelocityLossForm vel_form = VelocityLossForm::kCosine;
  int follower = 1;  // agent index corrected by the adapter

  void validate() const;
};

// Sum over frames and joints of max(0, delta - |p_a - p_b|)^2.
double joint_loss(const MotionSequence& a, const MotionSequence& b, double delta);
// Gradient of joint_loss with respect to b's coordinates (frame-major).
Eigen::VectorXd joint_loss_gradient(const MotionSequence& a, const MotionSequence& b,
                                    double delta);

// Sum over forward-difference velocities of cos(v_a, v_b) (or v_a . v_b for
// the dot form). Terms with either norm below `epsilon` contribute 0.
double velocity_loss(const MotionSequence& a, const MotionSequence& b, double epsilon,
                     VelocityLossForm form = VelocityLossForm::kCosine);
Eigen::VectorXd velocity_loss_gradient(const MotionSequence& a, const MotionSequence& b,
                                       double epsilon,
                                       VelocityLossForm form = VelocityLossForm::kCosine);

// w_joint * joint_loss + w_vel * velocity_loss.
double combined_loss(const MotionSequence& leader, const MotionSequence& follower,
                     const AdapterConfig& config);
Eigen::VectorXd combined_loss_gradient(const MotionSequence& leader,
                                       const MotionSequence& follower,
                                       const AdapterConfig& config);

// Frames at which the two agents' capsule sets overlap.
std::vector<int> conflict_frames(const MotionSequence& a, const MotionSequence& b,
                                 const SkeletonSpec& skeleton);

struct SeparationResult {
  MotionSequence follower;
  std::vector<int> treated_frames;
  std::vector<double> displacement;  // meters, per treated frame
  std::vector<int> unresolved_frames;
};

inline constexpr double kSeparationTolerance = 1e-4;
inline constexpr double kMaxSeparation = 2.0;

// Rigidly translates the follower's pose at each listed frame along the
// horizontal leader-root -> follower-root direction by the smallest distance
// (bisection to kSeparationTolerance) that clears every capsule overlap.
// Frames that cannot be cleared within kMaxSeparation are left untouched and
// reported in unresolved_frames.
SeparationResult separate_collision(const MotionSequence& follower,
                                    const MotionSequence& leader,
                                    const SkeletonSpec& skeleton,
                                    std::span<const int> frames);

struct AdapterReport {
  bool conflict = false;
  int conflict_frames = 0;
  int unresolved_frames = 0;
  std::vector<double> loss_trace;  // combined loss after separation, then per iteration
};

// Conflict-gated follower correction: collision separation, then grad_iters
// backtracking descent steps on combined_loss over the follower's channels.
// Leader channels are never written.
MotionTensor adapt_follower(const MotionTensor& x0_pred, const SkeletonSpec& skeleton,
                            const AdapterConfig& config, AdapterReport* report = nullptr);

// Steps of `steps` at which the adapter fires: config.fire_at if set, else
// adapter_steps grid points evenly spread over the in-window steps.
std::vector<int> adapter_fire_steps(std::span<const int> steps, int T,
                                    const GuidanceWindow& window,
                                    const AdapterConfig& config);

// post_predict hook calling adapt_follower at `fire_steps` only. `on_invoke`
// (optional) observes each invocation.
SamplerHook adapter_hook(const AdapterConfig& config, const SkeletonSpec& skeleton,
                         std::vector<int> fire_steps,
                         std::function<void(int t, const AdapterReport&)> on_invoke = {});

}  // namespace leadfollow

#endif  // LEADFOLLOW_SYNC_ADAPTER_H_
