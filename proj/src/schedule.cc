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

#include "leadfollow/schedule.h"

#include <cmath>
#include <string>

#include "leadfollow/error.h"

namespace leadfollow {

NoiseSchedule::NoiseSchedule(std::vector<double> beta) : beta_(std::move(beta)) {
  if (beta_.size() < 2) throw ValidationError("schedule: need T >= 2");
  alpha_bar_.resize(beta_.size());
  double product = 1.0;
  for (size_t i = 0; i < beta_.size(); ++i) {
    if (!(beta_[i] > 0.0 && beta_[i] < 1.0)) {
      throw ValidationError("schedule: beta must lie in (0, 1)");
    }
    product *= 1.0 - beta_[i];
    alpha_bar_[i] = product;
  }
}

double NoiseSchedule::beta(int t) const {
  if (t < 1 || t > steps()) throw ValidationError("schedule: step " + std::to_string(t) +
                                                  " outside [1, T]");
  return beta_[t - 1];
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t == 0) return 1.0;
  if (t < 0 || t > steps()) throw ValidationError("schedule: step " + std::to_string(t) +
                                                  " outside [0, T]");
  return alpha_bar_[t - 1];
}

NoiseSchedule make_schedule(int T, double beta_min, double beta_max) {
  if (T < 2) throw ValidationError("schedule: need T >= 2");
  if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0)) {
    throw ValidationError("schedule: need 0 < beta_min <= beta_max < 1");
  }
  std::vector<double> beta(T);
  for (int i = 0; i < T; ++i) {
    beta[i] = beta_min + (beta_max - beta_min) * static_cast<double>(i) / (T - 1);
  }
  return NoiseSchedule(std::move(beta));
}

std::vector<int> uniform_step_subsequence(int T, int n) {
  if (n < 1 || n > T || T % n != 0) {
    throw ValidationError("step grid: " + std::to_string(n) + " steps must divide T = " +
                          std::to_string(T));
  }
  std::vector<int> steps;
  steps.reserve(n + 1);
  const int stride = T / n;
  for (int t = T; t > 0; t -= stride) steps.push_back(t);
  steps.push_back(0);
  return steps;
}

std::vector<int> full_step_sequence(int T) { return uniform_step_subsequence(T, T); }

Eigen::VectorXd forward_noise(const Eigen::VectorXd& x0, int t,
                              const NoiseSchedule& schedule, const Eigen::VectorXd& noise) {
  if (t < 1 || t > schedule.steps()) {
    throw ValidationError("forward_noise: step " + std::to_string(t) + " outside [1, T]");
  }
  if (noise.size() != x0.size()) throw ValidationError("forward_noise: noise size mismatch");
  const double abar = schedule.alpha_bar(t);
  return std::sqrt(abar) * x0 + std::sqrt(1.0 - abar) * noise;
}

Eigen::VectorXd forward_noise(const Eigen::VectorXd& x0, int t,
                              const NoiseSchedule& schedule, Rng& rng) {
  return forward_noise(x0, t, schedule, standard_normal(rng, x0.size()));
}

Eigen::VectorXd posterior_mean(const Eigen::VectorXd& x0, const Eigen::VectorXd& x_t,
                               int t, const NoiseSchedule& schedule) {
  if (t < 1 || t > schedule.steps()) {
    throw ValidationError("posterior_step: step " + std::to_string(t) + " outside [1, T]");
  }
  const double abar = schedule.alpha_bar(t);
  const double abar_prev = schedule.alpha_bar(t - 1);
  const double beta = schedule.beta(t);
  const double c0 = std::sqrt(abar_prev) * beta / (1.0 - abar);
  const double ct = std::sqrt(1.0 - beta) * (1.0 - abar_prev) / (1.0 - abar);
  return c0 * x0 + ct * x_t;
}

double posterior_variance(int t, const NoiseSchedule& schedule) {
  return (1.0 - schedule.alpha_bar(t - 1)) / (1.0 - schedule.alpha_bar(t)) * schedule.beta(t);
}

Eigen::VectorXd posterior_step(const Eigen::VectorXd& x0_pred, const Eigen::VectorXd& x_t,
                               int t, const NoiseSchedule& schedule,
                               const Eigen::VectorXd& noise,
                               const Eigen::VectorXd* x0_model) {
  if (noise.size() != x_t.size()) throw ValidationError("posterior_step: noise size mismatch");
  Eigen::VectorXd mean;
  if (x0_model == nullptr) {
    mean = posterior_mean(x0_pred, x_t, t, schedule);
  } else {
    mean = posterior_mean(*x0_model, x_t, t, schedule) +
           std::sqrt(schedule.alpha_bar(t - 1)) * (x0_pred - *x0_model);
  }
  return mean + std::sqrt(posterior_variance(t, schedule)) * noise;
}

Eigen::VectorXd posterior_step(const Eigen::VectorXd& x0_pred, const Eigen::VectorXd& x_t,
                               int t, const NoiseSchedule& schedule, Rng& rng,
                               const Eigen::VectorXd* x0_model) {
  return posterior_step(x0_pred, x_t, t, schedule, standard_normal(rng, x_t.size()),
                        x0_model);
}

Eigen::VectorXd ddim_step(const Eigen::VectorXd& x0_pred, const Eigen::VectorXd& x_t, int t,
                          int t_prev, const NoiseSchedule& schedule,
                          const Eigen::VectorXd* x0_model) {
  if (!(0 <= t_prev && t_prev < t && t <= schedule.steps())) {
    throw ValidationError("ddim_step: need 0 <= t_prev < t <= T, got t=" +
                          std::to_string(t) + " t_prev=" + std::to_string(t_prev));
  }
  const double abar = schedule.alpha_bar(t);
  const double abar_prev = schedule.alpha_bar(t_prev);
  const Eigen::VectorXd& x0_eps = x0_model != nullptr ? *x0_model : x0_pred;
  const Eigen::VectorXd eps = (x_t - std::sqrt(abar) * x0_eps) / std::sqrt(1.0 - abar);
  return std::sqrt(abar_prev) * x0_pred + std::sqrt(1.0 - abar_prev) * eps;
}

}  // namespace leadfollow
