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

#include "leadfollow/pace_controller.h"

#include <cmath>
#include <string>
#include <vector>

#include "leadfollow/error.h"

namespace leadfollow {
namespace {

int window_bound(double fraction, int T) {
  // Floor, tolerant of representation error in fraction * T.
  return static_cast<int>(std::floor(fraction * T + 1e-9));
}

void check_target(const Trajectory& target, const MotionShape& shape) {
  if (target.size() != shape.frames) {
    throw ValidationError("trajectory has " + std::to_string(target.size()) +
                          " points but motion has " + std::to_string(shape.frames) +
                          " frames");
  }
}

std::vector<int> guided_agents(TargetAgent target) {
  switch (target) {
    case TargetAgent::kA:
      return {0};
    case TargetAgent::kB:
      return {1};
    case TargetAgent::kBoth:
      return {0, 1};
  }
  return {};
}

const Trajectory& target_for(const PaceTargets& targets, int agent) {
  const std::optional<Trajectory>& t = agent == 0 ? targets.a : targets.b;
  if (!t) {
    throw ValidationError(std::string("pace controller: no target trajectory for agent ") +
                          (agent == 0 ? "a" : "b"));
  }
  return *t;
}

// Target values in root_channel_indices order.
Eigen::VectorXd target_values(const Trajectory& target) {
  const int per_frame = target.has_height() ? 3 : 2;
  Eigen::VectorXd v(target.size() * per_frame);
  for (int f = 0; f < target.size(); ++f) {
    v[f * per_frame] = target.planar(f)[0];
    v[f * per_frame + 1] = target.planar(f)[1];
    if (per_frame == 3) v[f * per_frame + 2] = target.height(f);
  }
  return v;
}

}  // namespace

void GuidanceWindow::validate() const {
  if (!(start <= 1.0 && start >= end && end >= 0.0)) {
    throw ValidationError("guidance window: need 1 >= start >= end >= 0, got (" +
                          std::to_string(start) + ", " + std::to_string(end) + ")");
  }
}

bool in_window(int t, int T, const GuidanceWindow& window) {
  if (window.empty()) return false;
  return window_bound(window.end, T) <= t && t <= window_bound(window.start, T);
}

void PaceConfig::validate() const {
  window.validate();
  if (!(grad_step_size > 0.0 && grad_step_size <= 1.0)) {
    throw ValidationError("pace controller: grad_step_size must lie in (0, 1]");
  }
  if (grad_steps < 1) throw ValidationError("pace controller: grad_steps must be >= 1");
}

std::vector<int> root_channel_indices(const MotionShape& shape, int agent, int root_index,
                                      bool with_height) {
  std::vector<int> idx;
  idx.reserve(shape.frames * (with_height ? 3 : 2));
  auto at = [&](int frame, int axis) {
    return ((agent * shape.frames + frame) * shape.joints + root_index) * 3 + axis;
  };
  for (int f = 0; f < shape.frames; ++f) {
    idx.push_back(at(f, kAxisX));
    idx.push_back(at(f, kAxisZ));
    if (with_height) idx.push_back(at(f, kAxisUp));
  }
  return idx;
}

DiffusionState inject_trajectory(const DiffusionState& state, const Trajectory& target,
                                 int agent, int root_index, const NoiseSchedule& schedule,
                                 InjectionMode mode, std::span<const double> noise) {
  const MotionShape& shape = state.x.shape();
  check_target(target, shape);
  const std::vector<int> idx =
      root_channel_indices(shape, agent, root_index, target.has_height());
  const Eigen::VectorXd clean = target_values(target);
  Eigen::VectorXd values = clean;
  if (mode == InjectionMode::kNoised) {
    if (noise.size() != idx.size()) {
      throw ValidationError("inject_trajectory: expected " + std::to_string(idx.size()) +
                            " noise values");
    }
    const Eigen::Map<const Eigen::VectorXd> eps(noise.data(), noise.size());
    values = forward_noise(clean, state.t, schedule, eps);
  }
  DiffusionState out = state;
  for (size_t i = 0; i < idx.size(); ++i) out.x.values()[idx[i]] = values[i];
  return out;
}

DiffusionState inject_trajectory(const DiffusionState& state, const Trajectory& target,
                                 int agent, int root_index, const NoiseSchedule& schedule,
                                 InjectionMode mode, Rng& rng) {
  if (mode == InjectionMode::kRaw) {
    return inject_trajectory(state, target, agent, root_index, schedule, mode,
                             std::span<const double>{});
  }
  const int channels = target.size() * (target.has_height() ? 3 : 2);
  const Eigen::VectorXd eps = standard_normal(rng, channels);
  return inject_trajectory(state, target, agent, root_index, schedule, mode,
                           std::span<const double>(eps.data(), eps.size()));
}

double trajectory_mse(const MotionTensor& x, const Trajectory& target, int agent,
                      int root_index) {
  check_target(target, x.shape());
  const std::vector<int> idx =
      root_channel_indices(x.shape(), agent, root_index, target.has_height());
  const Eigen::VectorXd goal = target_values(target);
  double sum = 0.0;
  for (size_t i = 0; i < idx.size(); ++i) {
    const double r = x.values()[idx[i]] - goal[i];
    sum += r * r;
  }
  return sum / target.size();
}

MotionTensor refine_x0(const MotionTensor& x0_pred, const Trajectory& target, int agent,
                       int root_index, const PaceConfig& config) {
  check_target(target, x0_pred.shape());
  const std::vector<int> idx =
      root_channel_indices(x0_pred.shape(), agent, root_index, target.has_height());
  const Eigen::VectorXd goal = target_values(target);
  const double frames = target.size();
  // Loss (1/L) sum |root - target|^2 has gradient (2/L)(root - target); the
  // L/2 factor makes step size 1 an exact projection.
  const double rate = config.grad_step_size * frames / 2.0;
  MotionTensor out = x0_pred;
  Eigen::VectorXd& v = out.values();
  for (int step = 0; step < config.grad_steps; ++step) {
    for (size_t i = 0; i < idx.size(); ++i) {
      const double gradient = 2.0 / frames * (v[idx[i]] - goal[i]);
      v[idx[i]] -= rate * gradient;
    }
  }
  return out;
}

SamplerHook pace_hook(const PaceTargets& targets, const NoiseSchedule& schedule,
                      const PaceConfig& config, int root_index, LocalityAudit* audit) {
  config.validate();
  const std::vector<int> agents = guided_agents(config.target_agent);
  for (int agent : agents) target_for(targets, agent);

  // Records any write outside the guided root channels.
  auto check = [audit, agents, targets, root_index](const MotionTensor& before,
                                                    const MotionTensor& after) {
    if (audit == nullptr) return;
    ++audit->calls;
    std::vector<char> guided(before.values().size(), 0);
    for (int agent : agents) {
      for (int i : root_channel_indices(before.shape(), agent, root_index,
                                        target_for(targets, agent).has_height())) {
        guided[i] = 1;
      }
    }
    for (Eigen::Index i = 0; i < before.values().size(); ++i) {
      if (!guided[i] && before.values()[i] != after.values()[i]) {
        ++audit->violations;
        return;
      }
    }
  };

  SamplerHook hook;
  hook.name = "pace-controller";
  hook.pre_step = [=](const DiffusionState& state, Rng& rng) {
    if (!in_window(state.t, schedule.steps(), config.window)) return state.x;
    DiffusionState out = state;
    for (int agent : agents) {
      out = inject_trajectory(out, target_for(targets, agent), agent, root_index, schedule,
                              config.injection_mode, rng);
    }
    check(state.x, out.x);
    return out.x;
  };
  hook.post_predict = [=](const MotionTensor& x0, int t, Rng&) {
    if (!in_window(t, schedule.steps(), config.window)) return x0;
    MotionTensor out = x0;
    for (int agent : agents) {
      out = refine_x0(out, target_for(targets, agent), agent, root_index, config);
    }
    check(x0, out);
    return out;
  };
  return hook;
}

TwoAgentMotion guided_sample(const Denoiser& denoiser, const ConditionLabel& condition,
                             const PaceTargets& targets, const PaceConfig& config, Rng& rng,
                             const SampleOptions& options,
                             std::span<const SamplerHook> extra_hooks, int root_index,
                             LocalityAudit* audit) {
  std::vector<SamplerHook> hooks;
  hooks.push_back(pace_hook(targets, denoiser.schedule(), config, root_index, audit));
  hooks.insert(hooks.end(), extra_hooks.begin(), extra_hooks.end());
  return sample(denoiser, condition, hooks, rng, options);
}

}  // namespace leadfollow
