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

#include "leadfollow/denoiser.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "leadfollow/error.h"

namespace leadfollow {

Eigen::MatrixXd squared_exponential_kernel(int frames, const PriorParams& params) {
  Eigen::MatrixXd k(frames, frames);
  const double inv = 1.0 / (2.0 * params.length_scale * params.length_scale);
  for (int i = 0; i < frames; ++i) {
    for (int j = 0; j < frames; ++j) {
      const double d = i - j;
      k(i, j) = params.variance * std::exp(-d * d * inv);
    }
    k(i, i) += params.jitter;
  }
  return k;
}

AnalyticGaussianPrior::AnalyticGaussianPrior(MotionShape shape, Eigen::VectorXd mean,
                                             NoiseSchedule schedule, PriorParams params)
    : shape_(shape),
      mean_(std::move(mean)),
      schedule_(std::move(schedule)),
      params_(params) {
  if (shape_.frames < 2 || shape_.joints < 1) throw ValidationError("prior: bad shape");
  if (mean_.size() != shape_.size()) throw ValidationError("prior: mean size mismatch");
  if (!(params_.length_scale > 0.0) || !(params_.variance > 0.0) || params_.jitter < 0.0) {
    throw ValidationError("prior: need length_scale > 0 and variance > 0");
  }
  kernel_ = squared_exponential_kernel(shape_.frames, params_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(kernel_);
  if (solver.info() != Eigen::Success) throw Error("prior: kernel eigendecomposition failed");
  eigenvectors_ = solver.eigenvectors();
  // Round-off can push the smallest eigenvalues of a smooth kernel below the
  // jitter floor; clamp so Sigma stays positive definite.
  eigenvalues_ = solver.eigenvalues().cwiseMax(params_.jitter > 0.0 ? params_.jitter : 1e-300);
}

void AnalyticGaussianPrior::set_condition_mean(ScenarioKind kind, Eigen::VectorXd mean) {
  if (mean.size() != shape_.size()) throw ValidationError("prior: mean size mismatch");
  condition_means_[kind] = std::move(mean);
}

const Eigen::VectorXd& AnalyticGaussianPrior::mean_for(const ConditionLabel& condition) const {
  auto it = condition_means_.find(condition.category());
  return it == condition_means_.end() ? mean_ : it->second;
}

Eigen::VectorXd AnalyticGaussianPrior::posterior_mean(const Eigen::VectorXd& x_t,
                                                      double alpha_bar,
                                                      const Eigen::VectorXd& mean) const {
  if (x_t.size() != shape_.size()) throw ValidationError("prior: input size mismatch");
  const double s = std::sqrt(alpha_bar);
  const Eigen::ArrayXd lam = eigenvalues_.array();
  const Eigen::VectorXd gain = (s * lam / (alpha_bar * lam + (1.0 - alpha_bar))).matrix();
  if (!gain.allFinite()) throw Error("prior: singular posterior system");

  Eigen::VectorXd out(shape_.size());
  const Eigen::Index block = shape_.agent_size();
  for (int agent = 0; agent < 2; ++agent) {
    Eigen::Map<const RowMatrix> x(x_t.data() + agent * block, shape_.frames,
                                  3 * shape_.joints);
    Eigen::Map<const RowMatrix> m(mean.data() + agent * block, shape_.frames,
                                  3 * shape_.joints);
    Eigen::Map<RowMatrix> y(out.data() + agent * block, shape_.frames, 3 * shape_.joints);
    const Eigen::MatrixXd projected = eigenvectors_.transpose() * (x - s * m);
    y = m + eigenvectors_ * (gain.asDiagonal() * projected);
  }
  return out;
}

Eigen::VectorXd AnalyticGaussianPrior::predict_x0(const Eigen::VectorXd& x_t, int t,
                                                  const ConditionLabel& condition) const {
  if (t == 0) return x_t;
  return posterior_mean(x_t, schedule_.alpha_bar(t), mean_for(condition));
}

Eigen::VectorXd AnalyticGaussianPrior::draw(Rng& rng, const Eigen::VectorXd& mean) const {
  Eigen::VectorXd out(shape_.size());
  const Eigen::Index block = shape_.agent_size();
  const Eigen::VectorXd scale = eigenvalues_.cwiseSqrt();
  for (int agent = 0; agent < 2; ++agent) {
    const Eigen::VectorXd z = standard_normal(rng, block);
    Eigen::Map<const RowMatrix> zm(z.data(), shape_.frames, 3 * shape_.joints);
    Eigen::Map<const RowMatrix> m(mean.data() + agent * block, shape_.frames,
                                  3 * shape_.joints);
    Eigen::Map<RowMatrix> y(out.data() + agent * block, shape_.frames, 3 * shape_.joints);
    y = m + eigenvectors_ * (scale.asDiagonal() * zm);
  }
  return out;
}

Eigen::VectorXd analytic_predict_x0(const AnalyticGaussianPrior& prior,
                                    const Eigen::VectorXd& x_t, int t,
                                    const NoiseSchedule& schedule,
                                    const ConditionLabel& condition) {
  if (t == 0) return x_t;
  return prior.posterior_mean(x_t, schedule.alpha_bar(t), prior.mean_for(condition));
}

}  // namespace leadfollow
