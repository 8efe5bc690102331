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

#include "runs.h"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "leadfollow/error.h"
#include "leadfollow/metrics.h"
#include "leadfollow/tensor.h"

namespace leadfollow::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int leader_index(TargetAgent target) { return target == TargetAgent::kB ? 1 : 0; }

std::string config_hash(const RunOptions& o) {
  std::ostringstream s;
  s.precision(17);
  s << "controller=" << o.controller << ";adapter=" << o.adapter;
  if (o.controller) {
    s << ";window=" << o.pace.window.start << "," << o.pace.window.end
      << ";grad_step=" << o.pace.grad_step_size << ";grad_iters=" << o.pace.grad_steps
      << ";inject=" << static_cast<int>(o.pace.injection_mode)
      << ";target=" << static_cast<int>(o.pace.target_agent);
  }
  if (o.adapter) {
    const AdapterConfig& a = o.adapter_config;
    s << ";window=" << o.pace.window.start << "," << o.pace.window.end << ";delta=" << a.delta
      << ";w_joint=" << a.w_joint << ";w_vel=" << a.w_vel << ";steps=" << a.adapter_steps
      << ";a_grad_step=" << a.grad_step_size << ";a_grad_iters=" << a.grad_iters
      << ";eps=" << a.vel_epsilon << ";form=" << static_cast<int>(a.vel_form);
    for (int t : a.fire_at) s << ";fire=" << t;
  }
  s << ";sampler=" << static_cast<int>(o.sampling.kind);
  for (int t : o.sampling.steps) s << "," << t;
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016zx", std::hash<std::string>{}(s.str()));
  return buf;
}

RunResult run_once(const Denoiser& denoiser, const ConditionLabel& condition,
                   const PaceTargets& targets, const RunOptions& options,
                   const SkeletonSpec& skeleton, std::uint64_t seed) {
  RunResult result{TwoAgentMotion(MotionTensor(denoiser.shape()).to_motion()), 0.0, 0};
  std::vector<SamplerHook> hooks;
  if (options.controller) {
    hooks.push_back(pace_hook(targets, denoiser.schedule(), options.pace, skeleton.root_index()));
  }
  if (options.adapter) {
    AdapterConfig adapter = options.adapter_config;
    adapter.follower = 1 - leader_index(options.pace.target_agent);
    const std::vector<int> steps = options.sampling.steps.empty()
                                       ? default_steps(denoiser.schedule(), options.sampling.kind)
                                       : options.sampling.steps;
    const std::vector<int> fire = adapter_fire_steps(
        steps, denoiser.schedule().steps(), options.pace.window, adapter);
    hooks.push_back(adapter_hook(adapter, skeleton, fire,
                                 [&result](int, const AdapterReport&) { ++result.adapter_calls; }));
  }
  Rng rng(seed);
  const auto start = Clock::now();
  result.motion = sample(denoiser, condition, hooks, rng, options.sampling);
  result.seconds = seconds_since(start);
  return result;
}

std::vector<AblationRow> run_window_ablation(const Denoiser& denoiser,
                                             const ConditionLabel& condition,
                                             std::span<const Trajectory> targets,
                                             std::span<const GuidanceWindow> windows,
                                             const RunOptions& options,
                                             std::span<const std::uint64_t> seeds,
                                             const SkeletonSpec& skeleton) {
  if (targets.empty() || seeds.empty()) {
    throw ValidationError("ablation: need at least one target and one seed");
  }
  if (options.pace.target_agent == TargetAgent::kBoth) {
    throw ValidationError("ablation: guide a single agent (target a or b)");
  }
  const int leader = leader_index(options.pace.target_agent);
  std::vector<AblationRow> rows;
  auto run_row = [&](AblationRow row, const RunOptions& run) {
    const double n = static_cast<double>(targets.size() * seeds.size());
    for (const Trajectory& target : targets) {
      PaceTargets guide;
      (leader == 0 ? guide.a : guide.b) = target;
      for (std::uint64_t seed : seeds) {
        RunResult r = run_once(denoiser, condition, guide, run, skeleton, seed);
        row.trajectory_rmse += trajectory_rmse(r.motion.agent(leader), target, skeleton) / n;
        row.smoothness += 0.5 *
                          (smoothness(r.motion.agent_a()) + smoothness(r.motion.agent_b())) / n;
        row.penetration_frames += penetration_frames(r.motion, skeleton) / n;
        row.seconds += r.seconds / n;
        row.motions.push_back(std::move(r.motion));
      }
    }
    rows.push_back(std::move(row));
  };

  RunOptions baseline = options;
  baseline.controller = false;
  baseline.adapter = false;
  run_row(AblationRow{"unguided", false, {}, 0, 0, 0, 0, {}}, baseline);
  for (const GuidanceWindow& window : windows) {
    window.validate();
    RunOptions run = options;
    run.controller = true;
    run.pace.window = window;
    char label[64];
    std::snprintf(label, sizeof(label), "%.3g-%.3g", window.start, window.end);
    run_row(AblationRow{label, true, window, 0, 0, 0, 0, {}}, run);
  }
  return rows;
}

std::vector<EvaluationRow> run_evaluation(const DenoiserFactory& denoiser_for,
                                          std::span<const EvaluationCase> cases,
                                          const RunOptions& options,
                                          const SkeletonSpec& skeleton, int tail_frames) {
  if (cases.empty()) throw ValidationError("evaluate: no scenarios");
  const int leader = leader_index(options.pace.target_agent);
  std::vector<EvaluationRow> rows;
  for (const bool controller : {true, false}) {
    for (const bool adapter : {true, false}) {
      EvaluationRow row;
      row.controller = controller;
      row.adapter = adapter;
      RunOptions run = options;
      run.controller = controller;
      run.adapter = adapter;
      row.config_hash = config_hash(run);
      rows.push_back(std::move(row));
    }
  }
  const double n = static_cast<double>(cases.size());
  for (const EvaluationCase& item : cases) {
    const std::shared_ptr<const Denoiser> denoiser = denoiser_for(item);
    PaceTargets targets;
    const Trajectory a_path = project_root_trajectory(item.scenario.motion.agent_a(), skeleton);
    const Trajectory b_path = project_root_trajectory(item.scenario.motion.agent_b(), skeleton);
    const TargetAgent target_agent = options.pace.target_agent;
    if (target_agent != TargetAgent::kB) targets.a = a_path;
    if (target_agent != TargetAgent::kA) targets.b = b_path;
    const Trajectory& leader_path = leader == 0 ? a_path : b_path;
    for (EvaluationRow& row : rows) {
      RunOptions run = options;
      run.controller = row.controller;
      run.adapter = row.adapter;
      RunResult r = run_once(*denoiser, item.scenario.label, targets, run, skeleton, item.seed);
      row.trajectory_rmse += trajectory_rmse(r.motion.agent(leader), leader_path, skeleton) / n;
      row.penetration_frames += penetration_frames(r.motion, skeleton) / n;
      row.final_velocity_similarity += final_velocity_similarity(r.motion, tail_frames) / n;
      row.smoothness +=
          0.5 * (smoothness(r.motion.agent_a()) + smoothness(r.motion.agent_b())) / n;
      row.seconds += r.seconds / n;
      row.motions.push_back(std::move(r.motion));
    }
  }
  for (EvaluationRow& row : rows) {
    if (row.motions.size() >= 2) {
      Rng unused(0);
      row.diversity = diversity(row.motions, 0, unused);
    }
  }
  return rows;
}

}  // namespace leadfollow::cli
