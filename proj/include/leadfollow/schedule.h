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

#ifndef LEADFOLLOW_SCHEDULE_H_
#define LEADFOLLOW_SCHEDULE_H_

#include <vector>

#include <Eigen/Core>

#include "leadfollow/tensor.h"

namespace leadfollow {

// Variance schedule over steps t = 1..T. alpha_bar(0) is defined as 1.
class NoiseSchedule {
 public:
  NoiseSchedule(std::vector<double> beta);

  int steps() const { return static_cast<int>(beta_.size()); }
  double beta(int t) const;
  double alpha(int t) const { return 1.0 - beta(t); }
  double alpha_bar(int t) const;

  double beta_min() const { return beta_.front(); }
  double beta_max() const { return beta_.back(); }

 private:
  std::vector<double> beta_;
  std::vector<double> alpha_bar_;
};

// Linear beta ramp from beta_min to beta_max over T steps.
NoiseSchedule make_schedule(int T, double beta_min = 1e-4, double beta_max = 2e-2);

// T, T - T/n, ..., T/n, 0 (n transitions). Requires n to divide T.
std::vector<int> uniform_step_subsequence(int T, int n);
// T, T-1, ..., 0.
std::vector<int> full_step_sequence(int T);

// sqrt(abar_t) x0 + sqrt(1 - abar_t) noise.
Eigen::VectorXd forward_noise(const Eigen::VectorXd& x0, int t,
                              const NoiseSchedule& schedule,
                              const Eigen::VectorXd& noise);
Eigen::VectorXd forward_noise(const Eigen::VectorXd& x0, int t,
                              const NoiseSchedule& schedule, Rng& rng);

// Mean and variance of q(x_{t-1} | x_t, x0).
Eigen::VectorXd posterior_mean(const Eigen::VectorXd& x0, const Eigen::VectorXd& x_t,
                               int t, const NoiseSchedule& schedule);
double posterior_variance(int t, const NoiseSchedule& schedule);

// One ancestral step t -> t-1 with an explicit standard-normal draw.
// When `x0_model` is given, the noise direction implied by the model's own
// prediction is held fixed and `x0_pred` (an edited estimate) only moves the
// clean-signal term; with x0_model == x0_pred both forms coincide.
Eigen::VectorXd posterior_step(const Eigen::VectorXd& x0_pred,
                               const Eigen::VectorXd& x_t, int t,
                               const NoiseSchedule& schedule,
                               const Eigen::VectorXd& noise,
                               const Eigen::VectorXd* x0_model = nullptr);
Eigen::VectorXd posterior_step(const Eigen::VectorXd& x0_pred,
                               const Eigen::VectorXd& x_t, int t,
                               const NoiseSchedule& schedule, Rng& rng,
                               const Eigen::VectorXd* x0_model = nullptr);

// Deterministic DDIM (eta = 0) step t -> t_prev. The noise estimate is
// derived from `x0_model` when given, otherwise from `x0_pred`.
Eigen::VectorXd ddim_step(const Eigen::VectorXd& x0_pred, const Eigen::VectorXd& x_t,
                          int t, int t_prev, const NoiseSchedule& schedule,
                          const Eigen::VectorXd* x0_model = nullptr);

}  // namespace leadfollow

#endif  // LEADFOLLOW_SCHEDULE_H_
