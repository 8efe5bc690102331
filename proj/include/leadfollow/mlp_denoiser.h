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

#ifndef LEADFOLLOW_MLP_DENOISER_H_
#define LEADFOLLOW_MLP_DENOISER_H_

#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "leadfollow/denoiser.h"

namespace leadfollow {

struct MlpHyperparams {
  int hidden_width = 256;
  int hidden_layers = 3;
  double learning_rate = 1e-3;
  int epochs = 200;
  int batch_size = 32;
  int time_embedding_dim = 32;
};

// Fully connected SiLU network with a linear output layer. All weights and
// biases live in one flat parameter vector; layer l stores its
// (out x in) column-major weight matrix followed by its bias.
class MlpNetwork {
 public:
  MlpNetwork(int input_dim, int output_dim, int hidden_width, int hidden_layers);

  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  int hidden_width() const { return dims_.size() > 2 ? dims_[1] : 0; }
  int hidden_layers() const { return static_cast<int>(dims_.size()) - 2; }
  int layer_count() const { return static_cast<int>(dims_.size()) - 1; }

  const Eigen::VectorXd& parameters() const { return params_; }
  Eigen::VectorXd& parameters() { return params_; }

  // Glorot-uniform weights, zero biases.
  void initialize(Rng& rng);
  void set_output_bias(const Eigen::VectorXd& bias);

  // Columns of `inputs` are samples.
  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs) const;

  // Mean squared error over every output entry of the batch. Writes the
  // gradient with respect to parameters() into `gradient` when non-null.
  double loss(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
              Eigen::VectorXd* gradient = nullptr) const;

 private:
  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;

  std::vector<int> dims_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd params_;
};

// Sinusoidal embedding of a diffusion step.
Eigen::VectorXd time_embedding(int t, int dim);

// Network input: x_t, then the step embedding, then the condition one-hot.
Eigen::VectorXd denoiser_features(const Eigen::VectorXd& x_t, int t,
                                  const ConditionLabel& condition, int time_embedding_dim);

class MlpDenoiser : public Denoiser {
 public:
  MlpDenoiser(MotionShape shape, NoiseSchedule schedule, MlpNetwork network,
              int time_embedding_dim);

  MotionShape shape() const override { return shape_; }
  const NoiseSchedule& schedule() const override { return schedule_; }
  const MlpNetwork& network() const { return network_; }
  int time_embedding_dim() const { return time_embedding_dim_; }

  Eigen::VectorXd features(const Eigen::VectorXd& x_t, int t,
                           const ConditionLabel& condition) const;
  Eigen::VectorXd predict_x0(const Eigen::VectorXd& x_t, int t,
                             const ConditionLabel& condition) const override;

  // Checkpoint: one JSON header line, then the raw parameter array as
  // little-endian IEEE-754 float64.
  void save(const std::filesystem::path& path) const;
  static MlpDenoiser load(const std::filesystem::path& path);

 private:
  MotionShape shape_;
  NoiseSchedule schedule_;
  MlpNetwork network_;
  int time_embedding_dim_;
};

struct TrainingReport {
  std::vector<double> epoch_loss;
};

// Trains on x0-prediction MSE with minibatch Adam. Throws Error when the loss
// becomes non-finite. `on_epoch` is called after every epoch.
MlpDenoiser train_mlp_denoiser(
    std::span<const LabeledMotion> dataset, const NoiseSchedule& schedule,
    const MlpHyperparams& hyperparams, Rng& rng, TrainingReport* report = nullptr,
    const std::function<void(int epoch, double loss)>& on_epoch = {});

}  // namespace leadfollow

#endif  // LEADFOLLOW_MLP_DENOISER_H_
