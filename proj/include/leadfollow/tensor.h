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

#ifndef LEADFOLLOW_TENSOR_H_
#define LEADFOLLOW_TENSOR_H_

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "leadfollow/motion.h"

namespace leadfollow {

using Rng = std::mt19937_64;

struct MotionShape {
  int frames = 0;
  int joints = 0;

  int agent_size() const { return frames * joints * 3; }
  int size() const { return 2 * agent_size(); }
  bool operator==(const MotionShape&) const = default;
};

// Flattened two-agent motion, layout [agent][frame][joint][axis]. Agent 0 is
// the leader (agent_a).
class MotionTensor {
 public:
  MotionTensor() = default;
  explicit MotionTensor(MotionShape shape);
  MotionTensor(MotionShape shape, Eigen::VectorXd values);

  static MotionTensor from_motion(const TwoAgentMotion& motion);
  TwoAgentMotion to_motion(double fps = 30.0) const;
  MotionSequence agent(int agent, double fps = 30.0) const;

  const MotionShape& shape() const { return shape_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  int index(int agent, int frame, int joint, int axis) const {
    return ((agent * shape_.frames + frame) * shape_.joints + joint) * 3 + axis;
  }
  double operator()(int agent, int frame, int joint, int axis) const {
    return values_[index(agent, frame, joint, axis)];
  }
  double& operator()(int agent, int frame, int joint, int axis) {
    return values_[index(agent, frame, joint, axis)];
  }

  // Frames x (3 * joints) view of one agent.
  Eigen::Map<RowMatrix> agent_block(int agent);
  Eigen::Map<const RowMatrix> agent_block(int agent) const;

  void set_agent(int agent, const MotionSequence& motion);

  bool operator==(const MotionTensor& other) const {
    return shape_ == other.shape_ && values_ == other.values_;
  }

 private:
  MotionShape shape_;
  Eigen::VectorXd values_;
};

// x_t together with its step index.
struct DiffusionState {
  MotionTensor x;
  int t = 0;
};

Eigen::VectorXd standard_normal(Rng& rng, Eigen::Index n);

// SplitMix64 mixing of a base seed with stream identifiers; used to derive
// independent per-item and per-chain seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t substream = 0);

}  // namespace leadfollow

#endif  // LEADFOLLOW_TENSOR_H_
