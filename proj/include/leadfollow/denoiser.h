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

#ifndef LEADFOLLOW_DENOISER_H_
#define LEADFOLLOW_DENOISER_H_

#include <map>
#include <optional>

#include <Eigen/Core>

#include "leadfollow/motion.h"
#include "leadfollow/schedule.h"
#include "leadfollow/tensor.h"

namespace leadfollow {

// Clean-motion predictor M(x_t, t, c). Implementations are immutable after
// construction and must be deterministic in their inputs.
class Denoiser {
 public:
  virtual ~Denoiser() = default;

  virtual MotionShape shape() const = 0;
  virtual const NoiseSchedule& schedule() const = 0;
  virtual Eigen::VectorXd predict_x0(const Eigen::VectorXd& x_t, int t,
                                     const ConditionLabel& condition) const = 0;
};

struct PriorParams {
  double length_scale = 10.0;  // frames
  double variance = 0.25;      // m^2
  double jitter = 1e-9;        // added to the kernel diagonal
};

// Gaussian prior N(m, Sigma) over motion tensors, where Sigma applies the same
// squared-exponential temporal kernel to every (agent, joint, axis) channel.
// Its posterior mean under the forward process is available in closed form,
// which makes it an exact denoiser.
class AnalyticGaussianPrior : public Denoiser {
 public:
  AnalyticGaussianPrior(MotionShape shape, Eigen::VectorXd mean,
                        NoiseSchedule schedule, PriorParams params = {});

  MotionShape shape() const override { return shape_; }
  const NoiseSchedule& schedule() const override { return schedule_; }
  const PriorParams& params() const { return params_; }

  // Optional per-category mean; categories without one use the global mean.
  void set_condition_mean(ScenarioKind kind, Eigen::VectorXd mean);
  const Eigen::VectorXd& mean_for(const ConditionLabel& condition) const;
  const Eigen::VectorXd& mean() const { return mean_; }

  // L x L temporal kernel including jitter.
  const Eigen::MatrixXd& temporal_kernel() const { return kernel_; }
  double kernel_eigenvalue(int k) const { return eigenvalues_[k]; }

  Eigen::VectorXd predict_x0(const Eigen::VectorXd& x_t, int t,
                             const ConditionLabel& condition) const override;

  // m + sqrt(abar) Sigma (abar Sigma + (1 - abar) I)^-1 (x_t - sqrt(abar) m).
  Eigen::VectorXd posterior_mean(const Eigen::VectorXd& x_t, double alpha_bar,
                                 const Eigen::VectorXd& mean) const;

  // Draws one exact sample from the prior.
  Eigen::VectorXd draw(Rng& rng, const Eigen::VectorXd& mean) const;

 private:
  MotionShape shape_;
  Eigen::VectorXd mean_;
  std::map<ScenarioKind, Eigen::VectorXd> condition_means_;
  NoiseSchedule schedule_;
  PriorParams params_;
  Eigen::MatrixXd kernel_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

Eigen::MatrixXd squared_exponential_kernel(int frames, const PriorParams& params);

// Posterior mean at step t of `schedule` (t = 0 returns x_t).
Eigen::VectorXd analytic_predict_x0(const AnalyticGaussianPrior& prior,
                                    const Eigen::VectorXd& x_t, int t,
                                    const NoiseSchedule& schedule,
                                    const ConditionLabel& condition);

}  // namespace leadfollow

#endif  // LEADFOLLOW_DENOISER_H_
