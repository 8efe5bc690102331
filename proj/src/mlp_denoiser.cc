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

#include "leadfollow/mlp_denoiser.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "json.hpp"
#include "leadfollow/error.h"

namespace leadfollow {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");

constexpr char kCheckpointFormat[] = "leadfollow-mlp";
constexpr int kCheckpointVersion = 1;

Eigen::ArrayXXd sigmoid(const Eigen::ArrayXXd& z) { return 1.0 / (1.0 + (-z).exp()); }

}  // namespace

MlpNetwork::MlpNetwork(int input_dim, int output_dim, int hidden_width, int hidden_layers) {
  if (input_dim < 1 || output_dim < 1 || hidden_width < 1 || hidden_layers < 1) {
    throw ValidationError("mlp: dimensions must be positive");
  }
  dims_.push_back(input_dim);
  for (int i = 0; i < hidden_layers; ++i) dims_.push_back(hidden_width);
  dims_.push_back(output_dim);
  Eigen::Index offset = 0;
  for (int l = 0; l < layer_count(); ++l) {
    offsets_.push_back(offset);
    offset += static_cast<Eigen::Index>(dims_[l + 1]) * dims_[l] + dims_[l + 1];
  }
  offsets_.push_back(offset);
  params_ = Eigen::VectorXd::Zero(offset);
}

Eigen::Map<const Eigen::MatrixXd> MlpNetwork::weight(int layer) const {
  return {params_.data() + offsets_[layer], dims_[layer + 1], dims_[layer]};
}

Eigen::Map<const Eigen::VectorXd> MlpNetwork::bias(int layer) const {
  return {params_.data() + offsets_[layer] +
              static_cast<Eigen::Index>(dims_[layer + 1]) * dims_[layer],
          dims_[layer + 1]};
}

void MlpNetwork::initialize(Rng& rng) {
  params_.setZero();
  for (int l = 0; l < layer_count(); ++l) {
    const double limit = std::sqrt(6.0 / (dims_[l] + dims_[l + 1]));
    std::uniform_real_distribution<double> uniform(-limit, limit);
    const Eigen::Index n = static_cast<Eigen::Index>(dims_[l + 1]) * dims_[l];
    for (Eigen::Index i = 0; i < n; ++i) params_[offsets_[l] + i] = uniform(rng);
  }
}

void MlpNetwork::set_output_bias(const Eigen::VectorXd& b) {
  const int last = layer_count() - 1;
  if (b.size() != dims_.back()) throw ValidationError("mlp: output bias size mismatch");
  params_.segment(offsets_[last] + static_cast<Eigen::Index>(dims_[last + 1]) * dims_[last],
                  dims_.back()) = b;
}

Eigen::MatrixXd MlpNetwork::forward(const Eigen::MatrixXd& inputs) const {
  if (inputs.rows() != input_dim()) throw ValidationError("mlp: input size mismatch");
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    if (l + 1 < layer_count()) {
      a = (z.array() * sigmoid(z.array())).matrix();
    } else {
      a = std::move(z);
    }
  }
  return a;
}

double MlpNetwork::loss(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                        Eigen::VectorXd* gradient) const {
  if (inputs.rows() != input_dim() || targets.rows() != output_dim() ||
      inputs.cols() != targets.cols()) {
    throw ValidationError("mlp: batch shape mismatch");
  }
  const int layers = layer_count();
  std::vector<Eigen::MatrixXd> activations(layers + 1);
  std::vector<Eigen::MatrixXd> preacts(layers);
  activations[0] = inputs;
  for (int l = 0; l < layers; ++l) {
    preacts[l] = weight(l) * activations[l];
    preacts[l].colwise() += bias(l);
    if (l + 1 < layers) {
      activations[l + 1] = (preacts[l].array() * sigmoid(preacts[l].array())).matrix();
    } else {
      activations[l + 1] = preacts[l];
    }
  }
  const Eigen::MatrixXd residual = activations[layers] - targets;
  const double count = static_cast<double>(residual.size());
  const double value = residual.squaredNorm() / count;
  if (gradient == nullptr) return value;

  gradient->setZero(params_.size());
  Eigen::MatrixXd delta = (2.0 / count) * residual;
  for (int l = layers - 1; l >= 0; --l) {
    Eigen::Map<Eigen::MatrixXd> grad_w(gradient->data() + offsets_[l], dims_[l + 1],
                                       dims_[l]);
    Eigen::Map<Eigen::VectorXd> grad_b(
        gradient->data() + offsets_[l] + static_cast<Eigen::Index>(dims_[l + 1]) * dims_[l],
        dims_[l + 1]);
    grad_w.noalias() = delta * activations[l].transpose();
    grad_b = delta.rowwise().sum();
    if (l > 0) {
      const Eigen::ArrayXXd z = preacts[l - 1].array();
      const Eigen::ArrayXXd s = sigmoid(z);
      const Eigen::ArrayXXd dsilu = s * (1.0 + z * (1.0 - s));
      delta = ((weight(l).transpose() * delta).array() * dsilu).matrix();
    }
  }
  return value;
}

Eigen::VectorXd time_embedding(int t, int dim) {
  Eigen::VectorXd e(dim);
  const int half = dim / 2;
  for (int i = 0; i < half; ++i) {
    const double freq = std::exp(-std::log(10000.0) * i / std::max(half, 1));
    e[2 * i] = std::sin(t * freq);
    e[2 * i + 1] = std::cos(t * freq);
  }
  if (dim % 2 == 1) e[dim - 1] = 0.0;
  return e;
}

MlpDenoiser::MlpDenoiser(MotionShape shape, NoiseSchedule schedule, MlpNetwork network,
                         int time_embedding_dim)
    : shape_(shape),
      schedule_(std::move(schedule)),
      network_(std::move(network)),
      time_embedding_dim_(time_embedding_dim) {
  if (network_.input_dim() !=
          shape_.size() + time_embedding_dim_ + ConditionLabel::kEmbeddingSize ||
      network_.output_dim() != shape_.size()) {
    throw ValidationError("mlp denoiser: network dimensions do not match motion shape");
  }
}

Eigen::VectorXd denoiser_features(const Eigen::VectorXd& x_t, int t,
                                  const ConditionLabel& condition, int time_embedding_dim) {
  Eigen::VectorXd f(x_t.size() + time_embedding_dim + ConditionLabel::kEmbeddingSize);
  f << x_t, time_embedding(t, time_embedding_dim), condition.embedding();
  return f;
}

Eigen::VectorXd MlpDenoiser::features(const Eigen::VectorXd& x_t, int t,
                                      const ConditionLabel& condition) const {
  if (x_t.size() != shape_.size()) throw ValidationError("mlp denoiser: input size mismatch");
  return denoiser_features(x_t, t, condition, time_embedding_dim_);
}

Eigen::VectorXd MlpDenoiser::predict_x0(const Eigen::VectorXd& x_t, int t,
                                        const ConditionLabel& condition) const {
  return network_.forward(features(x_t, t, condition)).col(0);
}

void MlpDenoiser::save(const std::filesystem::path& path) const {
  nlohmann::json header;
  header["format"] = kCheckpointFormat;
  header["version"] = kCheckpointVersion;
  header["float"] = "ieee754-binary64-little-endian";
  header["float_width_bits"] = 64;
  header["frames"] = shape_.frames;
  header["joints"] = shape_.joints;
  header["input_dim"] = network_.input_dim();
  header["output_dim"] = network_.output_dim();
  header["hidden_width"] = network_.hidden_width();
  header["hidden_layers"] = network_.hidden_layers();
  header["activation"] = "silu";
  header["time_embedding_dim"] = time_embedding_dim_;
  header["condition_dim"] = ConditionLabel::kEmbeddingSize;
  header["parameter_count"] = network_.parameters().size();
  header["schedule"] = {{"kind", "linear"},
                        {"T", schedule_.steps()},
                        {"beta_min", schedule_.beta_min()},
                        {"beta_max", schedule_.beta_max()}};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << header.dump() << "\n";
  out.write(reinterpret_cast<const char*>(network_.parameters().data()),
            static_cast<std::streamsize>(network_.parameters().size() * sizeof(double)));
  if (!out) throw Error("failed writing checkpoint '" + path.string() + "'");
}

MlpDenoiser MlpDenoiser::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("header", "empty checkpoint");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("header", e.what());
  }
  auto field = [&](const char* key) -> const nlohmann::json& {
    if (!header.contains(key)) throw ParseError(key, "missing field");
    return header.at(key);
  };
  try {
    if (field("format").get<std::string>() != kCheckpointFormat) {
      throw ParseError("format", "not a leadfollow MLP checkpoint");
    }
    if (field("version").get<int>() != kCheckpointVersion) {
      throw ParseError("version", "unsupported checkpoint version");
    }
    if (field("float_width_bits").get<int>() != 64) {
      throw ParseError("float_width_bits", "only 64-bit floats are supported");
    }
    const MotionShape shape{field("frames").get<int>(), field("joints").get<int>()};
    const auto& sched = field("schedule");
    NoiseSchedule schedule = make_schedule(sched.at("T").get<int>(),
                                           sched.at("beta_min").get<double>(),
                                           sched.at("beta_max").get<double>());
    MlpNetwork network(field("input_dim").get<int>(), field("output_dim").get<int>(),
                       field("hidden_width").get<int>(), field("hidden_layers").get<int>());
    const auto count = field("parameter_count").get<Eigen::Index>();
    if (count != network.parameters().size()) {
      throw ParseError("parameter_count", "does not match the declared architecture");
    }
    in.read(reinterpret_cast<char*>(network.parameters().data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
      throw ParseError("weights", "checkpoint truncated");
    }
    return MlpDenoiser(shape, std::move(schedule), std::move(network),
                       field("time_embedding_dim").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("header", e.what());
  }
}

MlpDenoiser train_mlp_denoiser(std::span<const LabeledMotion> dataset,
                               const NoiseSchedule& schedule, const MlpHyperparams& hp,
                               Rng& rng, TrainingReport* report,
                               const std::function<void(int, double)>& on_epoch) {
  if (dataset.empty()) throw ValidationError("train: empty dataset");
  if (hp.epochs < 1 || hp.batch_size < 1 || !(hp.learning_rate > 0.0)) {
    throw ValidationError("train: epochs, batch_size and learning_rate must be positive");
  }
  const MotionShape shape{dataset.front().motion.frames(), dataset.front().motion.joints()};
  const int n = static_cast<int>(dataset.size());
  Eigen::MatrixXd clean(shape.size(), n);
  for (int i = 0; i < n; ++i) {
    const TwoAgentMotion& m = dataset[i].motion;
    if (m.frames() != shape.frames || m.joints() != shape.joints) {
      throw ValidationError("train: dataset item " + std::to_string(i) +
                            " has a different shape");
    }
    clean.col(i) = MotionTensor::from_motion(m).values();
  }

  MlpNetwork network(shape.size() + hp.time_embedding_dim + ConditionLabel::kEmbeddingSize,
                     shape.size(), hp.hidden_width, hp.hidden_layers);
  network.initialize(rng);
  network.set_output_bias(clean.rowwise().mean());

  // Adam state.
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  const Eigen::Index p = network.parameters().size();
  Eigen::VectorXd m1 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd m2 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd grad(p);
  long step = 0;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::uniform_int_distribution<int> draw_t(1, schedule.steps());
  const int in_dim = network.input_dim();
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    int batches = 0;
    for (int start = 0; start < n; start += hp.batch_size) {
      const int b = std::min(hp.batch_size, n - start);
      Eigen::MatrixXd inputs(in_dim, b);
      Eigen::MatrixXd targets(shape.size(), b);
      for (int k = 0; k < b; ++k) {
        const int item = order[start + k];
        const int t = draw_t(rng);
        const Eigen::VectorXd x_t = forward_noise(clean.col(item), t, schedule, rng);
        inputs.col(k) = denoiser_features(x_t, t, dataset[item].label, hp.time_embedding_dim);
        targets.col(k) = clean.col(item);
      }
      const double value = network.loss(inputs, targets, &grad);
      if (!std::isfinite(value) || !grad.allFinite()) {
        throw Error("train: loss diverged at epoch " + std::to_string(epoch) + " (loss=" +
                    std::to_string(value) + "); lower the learning rate");
      }
      ++step;
      m1 = kBeta1 * m1 + (1.0 - kBeta1) * grad;
      m2 = kBeta2 * m2 + (1.0 - kBeta2) * grad.cwiseAbs2();
      const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
      network.parameters().array() -=
          hp.learning_rate * (m1.array() / c1) / ((m2.array() / c2).sqrt() + kEps);
      epoch_loss += value;
      ++batches;
    }
    epoch_loss /= batches;
    if (report != nullptr) report->epoch_loss.push_back(epoch_loss);
    if (on_epoch) on_epoch(epoch, epoch_loss);
  }
  return MlpDenoiser(shape, schedule, std::move(network), hp.time_embedding_dim);
}

}  // namespace leadfollow
