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

#include "leadfollow/sampler.h"

#include <string>

#include "leadfollow/error.h"

namespace leadfollow {
namespace {

constexpr int kDefaultDdimSteps = 50;

void check_steps(const std::vector<int>& steps, const NoiseSchedule& schedule,
                 SamplerKind kind) {
  if (steps.size() < 2 || steps.back() != 0) {
    throw ValidationError("sampler: step sequence must have >= 2 entries and end at 0");
  }
  if (steps.front() > schedule.steps()) {
    throw ValidationError("sampler: first step exceeds T");
  }
  for (size_t i = 1; i < steps.size(); ++i) {
    if (steps[i] >= steps[i - 1]) throw ValidationError("sampler: steps must descend");
    if (kind == SamplerKind::kPosterior && steps[i] != steps[i - 1] - 1) {
      throw ValidationError("sampler: the posterior sampler needs consecutive steps");
    }
  }
}

void check_hook_output(const MotionTensor& out, const MotionShape& shape,
                       const std::string& hook, const char* stage) {
  if (!(out.shape() == shape) || out.values().size() != shape.size()) {
    throw ValidationError("sampler: hook '" + hook + "' returned a wrong-shaped tensor from " +
                          stage);
  }
}

}  // namespace

std::vector<int> default_steps(const NoiseSchedule& schedule, SamplerKind kind) {
  if (kind == SamplerKind::kPosterior) return full_step_sequence(schedule.steps());
  return uniform_step_subsequence(schedule.steps(), kDefaultDdimSteps);
}

MotionTensor sample_tensor(const Denoiser& denoiser, const ConditionLabel& condition,
                           std::span<const SamplerHook> hooks, Rng& rng,
                           const SampleOptions& options) {
  const NoiseSchedule& schedule = denoiser.schedule();
  const std::vector<int> steps =
      options.steps.empty() ? default_steps(schedule, options.kind) : options.steps;
  check_steps(steps, schedule, options.kind);

  const MotionShape shape = denoiser.shape();
  DiffusionState state{MotionTensor(shape, standard_normal(rng, shape.size())), steps.front()};
  MotionTensor x0(shape);
  for (size_t i = 0; i + 1 < steps.size(); ++i) {
    const int t = steps[i];
    const int t_prev = steps[i + 1];
    state.t = t;
    for (const SamplerHook& hook : hooks) {
      if (!hook.pre_step) continue;
      MotionTensor out = hook.pre_step(state, rng);
      check_hook_output(out, shape, hook.name, "pre_step");
      state.x = std::move(out);
    }
    const Eigen::VectorXd x0_model = denoiser.predict_x0(state.x.values(), t, condition);
    if (x0_model.size() != shape.size()) {
      throw ValidationError("sampler: denoiser returned a wrong-shaped prediction");
    }
    x0 = MotionTensor(shape, x0_model);
    for (const SamplerHook& hook : hooks) {
      if (!hook.post_predict) continue;
      MotionTensor out = hook.post_predict(x0, t, rng);
      check_hook_output(out, shape, hook.name, "post_predict");
      x0 = std::move(out);
    }
    // Hook edits move the clean-signal term; the noise direction stays the
    // one implied by the model's own prediction.
    const bool edited = x0.values() != x0_model;
    const Eigen::VectorXd* model_ref = edited ? &x0_model : nullptr;
    Eigen::VectorXd next =
        options.kind == SamplerKind::kDdim
            ? ddim_step(x0.values(), state.x.values(), t, t_prev, schedule, model_ref)
            : posterior_step(x0.values(), state.x.values(), t, schedule, rng, model_ref);
    state.x = MotionTensor(shape, std::move(next));
  }
  state.t = 0;
  return state.x;
}

TwoAgentMotion sample(const Denoiser& denoiser, const ConditionLabel& condition,
                      std::span<const SamplerHook> hooks, Rng& rng,
                      const SampleOptions& options) {
  return sample_tensor(denoiser, condition, hooks, rng, options).to_motion(options.fps);
}

}  // namespace leadfollow
