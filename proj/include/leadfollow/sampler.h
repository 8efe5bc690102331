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

#ifndef LEADFOLLOW_SAMPLER_H_
#define LEADFOLLOW_SAMPLER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "leadfollow/denoiser.h"
#include "leadfollow/tensor.h"

namespace leadfollow {

enum class SamplerKind { kDdim, kPosterior };

// Guidance hook. Either callback may be empty. pre_step sees x_t before the
// denoiser runs; post_predict edits the predicted clean motion. Both must
// return tensors of unchanged shape.
struct SamplerHook {
  std::string name;
  std::function<MotionTensor(const DiffusionState& state, Rng& rng)> pre_step;
  std::function<MotionTensor(const MotionTensor& x0_pred, int t, Rng& rng)>
      post_predict;
};

struct SampleOptions {
  SamplerKind kind = SamplerKind::kDdim;
  // Descending, ending at 0. Empty means the 50-step uniform DDIM grid (or
  // the full chain for the posterior sampler).
  std::vector<int> steps;
  double fps = 30.0;
};

// Default step grid for `kind` on `schedule`.
std::vector<int> default_steps(const NoiseSchedule& schedule, SamplerKind kind);

// Runs the reverse process from x_T ~ N(0, I): per step, pre_step hooks,
// predict_x0, post_predict hooks (registration order), then the DDIM or
// posterior update.
MotionTensor sample_tensor(const Denoiser& denoiser, const ConditionLabel& condition,
                           std::span<const SamplerHook> hooks, Rng& rng,
                           const SampleOptions& options = {});

TwoAgentMotion sample(const Denoiser& denoiser, const ConditionLabel& condition,
                      std::span<const SamplerHook> hooks, Rng& rng,
                      const SampleOptions& options = {});

}  // namespace leadfollow

#endif  // LEADFOLLOW_SAMPLER_H_
