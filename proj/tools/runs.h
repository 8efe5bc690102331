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

#ifndef LEADFOLLOW_TOOLS_RUNS_H_
#define LEADFOLLOW_TOOLS_RUNS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "leadfollow/denoiser.h"
#include "leadfollow/motion.h"
#include "leadfollow/pace_controller.h"
#include "leadfollow/sampler.h"
#include "leadfollow/skeleton.h"
#include "leadfollow/sync_adapter.h"

namespace leadfollow::cli {

struct RunOptions {
  bool controller = true;
  bool adapter = true;
  PaceConfig pace;
  AdapterConfig adapter_config;
  SampleOptions sampling;
};

// Agent whose root is guided when only one is (b for target b, else a).
int leader_index(TargetAgent target);

// Stable hex digest of every option that changes the sampled motion.
std::string config_hash(const RunOptions& options);

struct RunResult {
  TwoAgentMotion motion;
  double seconds = 0.0;
  int adapter_calls = 0;
};

// One sampling chain with the hooks `options` enables. The adapter corrects
// the agent that is not guided (agent a when only b is guided).
RunResult run_once(const Denoiser& denoiser, const ConditionLabel& condition,
                   const PaceTargets& targets, const RunOptions& options,
                   const SkeletonSpec& skeleton, std::uint64_t seed);

struct AblationRow {
  std::string label;
  bool guided = false;
  GuidanceWindow window;
  double trajectory_rmse = 0.0;
  double smoothness = 0.0;
  double penetration_frames = 0.0;
  double seconds = 0.0;
  std::vector<TwoAgentMotion> motions;  // targets-major, then seeds
};

// First row is the unguided baseline (no hooks), then one row per window.
// Every row runs every (target, seed) pair; the target guides the leader.
std::vector<AblationRow> run_window_ablation(const Denoiser& denoiser,
                                             const ConditionLabel& condition,
                                             std::span<const Trajectory> targets,
                                             std::span<const GuidanceWindow> windows,
                                             const RunOptions& options,
                                             std::span<const std::uint64_t> seeds,
                                             const SkeletonSpec& skeleton);

struct EvaluationCase {
  LabeledMotion scenario;
  std::uint64_t seed = 0;
};

struct EvaluationRow {
  bool controller = false;
  bool adapter = false;
  std::string config_hash;
  double trajectory_rmse = 0.0;
  double penetration_frames = 0.0;
  double final_velocity_similarity = 0.0;
  double smoothness = 0.0;
  double diversity = 0.0;
  double seconds = 0.0;
  std::vector<TwoAgentMotion> motions;  // one per case
};

using DenoiserFactory =
    std::function<std::shared_ptr<const Denoiser>(const EvaluationCase& item)>;

// Controller x adapter grid (on/on, on/off, off/on, off/off). The leader's
// target is its own root path in the case's scenario; all four rows reuse
// the same per-case seeds.
std::vector<EvaluationRow> run_evaluation(const DenoiserFactory& denoiser_for,
                                          std::span<const EvaluationCase> cases,
                                          const RunOptions& options,
                                          const SkeletonSpec& skeleton, int tail_frames = 20);

}  // namespace leadfollow::cli

#endif  // LEADFOLLOW_TOOLS_RUNS_H_
