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

#include "leadfollow/motion.h"

#include <cmath>
#include <string>

#include "leadfollow/error.h"
#include "leadfollow/tensor.h"

namespace leadfollow {

MotionSequence::MotionSequence(int frames, int joints, std::vector<double> coords,
                               double fps)
    : frames_(frames), joints_(joints), fps_(fps), coords_(std::move(coords)) {
  if (frames_ < 2) throw ValidationError("motion: need at least 2 frames");
  if (joints_ < 1) throw ValidationError("motion: need at least 1 joint");
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) throw ValidationError("motion: fps must be > 0");
  if (coords_.size() != static_cast<size_t>(frames_) * joints_ * 3) {
    throw ValidationError("motion: expected " + std::to_string(frames_ * joints_ * 3) +
                          " coordinates, got " + std::to_string(coords_.size()));
  }
  for (double v : coords_) {
    if (!std::isfinite(v)) throw ValidationError("motion: non-finite coordinate");
  }
}

Eigen::Vector3d MotionSequence::position(int frame, int joint) const {
  const double* p = coords_.data() + (static_cast<size_t>(frame) * joints_ + joint) * 3;
  return {p[0], p[1], p[2]};
}

std::vector<Eigen::Vector3d> MotionSequence::pose(int frame) const {
  std::vector<Eigen::Vector3d> out(joints_);
  for (int j = 0; j < joints_; ++j) out[j] = position(frame, j);
  return out;
}

TwoAgentMotion::TwoAgentMotion(MotionSequence agent_a, MotionSequence agent_b)
    : agent_a_(std::move(agent_a)), agent_b_(std::move(agent_b)) {
  if (agent_a_.frames() != agent_b_.frames() || agent_a_.joints() != agent_b_.joints()) {
    throw ValidationError("two-agent motion: agents differ in shape");
  }
  if (agent_a_.fps() != agent_b_.fps()) {
    throw ValidationError("two-agent motion: agents differ in fps");
  }
}

TwoAgentMotion swap_agents(const TwoAgentMotion& x) {
  return TwoAgentMotion(x.agent_b(), x.agent_a());
}

Trajectory::Trajectory(std::vector<Eigen::Vector2d> planar)
    : Trajectory(std::move(planar), {}) {}

Trajectory::Trajectory(std::vector<Eigen::Vector2d> planar, std::vector<double> height)
    : planar_(std::move(planar)), height_(std::move(height)) {
  if (planar_.empty()) throw ValidationError("trajectory: empty");
  if (!height_.empty() && height_.size() != planar_.size()) {
    throw ValidationError("trajectory: height channel length mismatch");
  }
  for (const auto& p : planar_) {
    if (!p.allFinite()) throw ValidationError("trajectory: non-finite point");
  }
  for (double h : height_) {
    if (!std::isfinite(h)) throw ValidationError("trajectory: non-finite height");
  }
}

void check_compatible(const MotionSequence& motion, const SkeletonSpec& skeleton) {
  if (motion.joints() != skeleton.joint_count()) {
    throw ValidationError("motion has " + std::to_string(motion.joints()) +
                          " joints but skeleton has " +
                          std::to_string(skeleton.joint_count()));
  }
}

Trajectory project_root_trajectory(const MotionSequence& motion,
                                   const SkeletonSpec& skeleton, bool with_height) {
  check_compatible(motion, skeleton);
  std::vector<Eigen::Vector2d> planar(motion.frames());
  std::vector<double> height;
  if (with_height) height.resize(motion.frames());
  for (int f = 0; f < motion.frames(); ++f) {
    const Eigen::Vector3d root = motion.position(f, skeleton.root_index());
    planar[f] = {root[kAxisX], root[kAxisZ]};
    if (with_height) height[f] = root[kAxisUp];
  }
  return Trajectory(std::move(planar), std::move(height));
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kCircleDuet:
      return "circle-duet";
    case ScenarioKind::kApproachCollide:
      return "approach-collide";
    case ScenarioKind::kMirrorWalk:
      return "mirror-walk";
    case ScenarioKind::kOrbit:
      return "orbit";
  }
  return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
  for (ScenarioKind kind : kAllScenarioKinds) {
    if (scenario_name(kind) == name) return kind;
  }
  throw ValidationError("unknown scenario kind '" + std::string(name) +
                        "' (expected circle-duet, approach-collide, mirror-walk or orbit)");
}

Eigen::VectorXd ConditionLabel::embedding() const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(kEmbeddingSize);
  e[index()] = 1.0;
  return e;
}

// MotionTensor lives with the domain types it flattens.

MotionTensor::MotionTensor(MotionShape shape)
    : shape_(shape), values_(Eigen::VectorXd::Zero(shape.size())) {}

MotionTensor::MotionTensor(MotionShape shape, Eigen::VectorXd values)
    : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.size()) {
    throw ValidationError("tensor: expected " + std::to_string(shape_.size()) +
                          " values, got " + std::to_string(values_.size()));
  }
}

MotionTensor MotionTensor::from_motion(const TwoAgentMotion& motion) {
  MotionTensor out({motion.frames(), motion.joints()});
  out.set_agent(0, motion.agent_a());
  out.set_agent(1, motion.agent_b());
  return out;
}

MotionSequence MotionTensor::agent(int agent, double fps) const {
  const int n = shape_.agent_size();
  const double* begin = values_.data() + static_cast<Eigen::Index>(agent) * n;
  return MotionSequence(shape_.frames, shape_.joints, std::vector<double>(begin, begin + n),
                        fps);
}

TwoAgentMotion MotionTensor::to_motion(double fps) const {
  return TwoAgentMotion(agent(0, fps), agent(1, fps));
}

Eigen::Map<RowMatrix> MotionTensor::agent_block(int agent) {
  return {values_.data() + static_cast<Eigen::Index>(agent) * shape_.agent_size(),
          shape_.frames, 3 * shape_.joints};
}

Eigen::Map<const RowMatrix> MotionTensor::agent_block(int agent) const {
  return {values_.data() + static_cast<Eigen::Index>(agent) * shape_.agent_size(),
          shape_.frames, 3 * shape_.joints};
}

void MotionTensor::set_agent(int agent, const MotionSequence& motion) {
  if (motion.frames() != shape_.frames || motion.joints() != shape_.joints) {
    throw ValidationError("tensor: agent shape mismatch");
  }
  const auto coords = motion.coords();
  std::copy(coords.begin(), coords.end(),
            values_.data() + static_cast<Eigen::Index>(agent) * shape_.agent_size());
}

Eigen::VectorXd standard_normal(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = normal(rng);
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                          std::uint64_t substream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ (substream * 0x2545f4914f6cdd1dULL));
}

}  // namespace leadfollow
