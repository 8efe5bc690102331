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

#ifndef LEADFOLLOW_PACE_CONTROLLER_H_
#define LEADFOLLOW_PACE_CONTROLLER_H_

#include <optional>
#include <span>
#include <vector>

#include "leadfollow/motion.h"
#include "leadfollow/sampler.h"
#include "leadfollow/schedule.h"

namespace leadfollow {

// Denoising-step interval [end * T, start * T] during which guidance runs.
// Bounds are inclusive and floored to integer steps. start == end denotes an
// empty window.
struct GuidanceWindow {
  double start = 0.7;
  double end = 0.3;

  bool empty() const { return start == end; }
  void validate() const;
};

bool in_window(int t, int T, const GuidanceWindow& window);

enum class InjectionMode { kNoised, kRaw };
enum class TargetAgent { kA, kB, kBoth };

struct PaceConfig {
  GuidanceWindow window;
  double grad_step_size = 0.5;
  int grad_steps = 1;
  InjectionMode injection_mode = InjectionMode::kNoised;
  TargetAgent target_agent = TargetAgent::kA;

  void validate() const;
};

// Per-agent target paths; which ones are used depends on target_agent.
struct PaceTargets {
  std::optional<Trajectory> a;
  std::optional<Trajectory> b;
};

// Counts hook calls and writes outside the guided root channels. Filled in by
// pace_hook when attached.
struct LocalityAudit {
  int calls = 0;
  int violations = 0;
};

// Root channels (agent, frame, axis) touched by a trajectory: the two ground
// axes, plus the vertical axis when the trajectory carries height.
std::vector<int> root_channel_indices(const MotionShape& shape, int agent,
                                      int root_index, bool with_height);

// Overwrites the agent's root ground-plane channels of x_t with the target:
// verbatim in raw mode, or noised to step t with `noise` (one standard-normal
// value per overwritten channel) in noised mode.
DiffusionState inject_trajectory(const DiffusionState& state, const Trajectory& target,
                                 int agent, int root_index, const NoiseSchedule& schedule,
                                 InjectionMode mode, std::span<const double> noise);
DiffusionState inject_trajectory(const DiffusionState& state, const Trajectory& target,
                                 int agent, int root_index, const NoiseSchedule& schedule,
                                 InjectionMode mode, Rng& rng);

// grad_steps descent steps on (1/L) sum_frames |root - target|^2 over the
// agent's root channels, scaled so that step size 1 lands on the target.
MotionTensor refine_x0(const MotionTensor& x0_pred, const Trajectory& target, int agent,
                       int root_index, const PaceConfig& config);

double trajectory_mse(const MotionTensor& x, const Trajectory& target, int agent,
                      int root_index);

SamplerHook pace_hook(const PaceTargets& targets, const NoiseSchedule& schedule,
                      const PaceConfig& config, int root_index = 0,
                      LocalityAudit* audit = nullptr);

// Sampling with the pace controller (plus any extra hooks, run after it).
TwoAgentMotion guided_sample(const Denoiser& denoiser, const ConditionLabel& condition,
                             const PaceTargets& targets, const PaceConfig& config,
                             Rng& rng, const SampleOptions& options = {},
                             std::span<const SamplerHook> extra_hooks = {},
                             int root_index = 0, LocalityAudit* audit = nullptr);

}  // namespace leadfollow

#endif  // LEADFOLLOW_PACE_CONTROLLER_H_
