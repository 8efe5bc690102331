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

#include "leadfollow/synthetic.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "leadfollow/error.h"
#include "leadfollow/tensor.h"

namespace leadfollow {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPelvisHeight = 0.95;

// Rest offsets from the pelvis in the body frame: x left, y up, z forward.
constexpr std::array<std::array<double, 3>, joint::kDefaultCount> kRestOffsets = {{
    {0.00, 0.00, 0.00},    // pelvis
    {0.09, -0.08, 0.00},   // left hip
    {-0.09, -0.08, 0.00},  // right hip
    {0.00, 0.12, -0.01},   // spine1
    {0.10, -0.50, 0.01},   // left knee
    {-0.10, -0.50, 0.01},  // right knee
    {0.00, 0.25, -0.01},   // spine2
    {0.10, -0.88, -0.03},  // left ankle
    {-0.10, -0.88, -0.03}, // right ankle
    {0.00, 0.38, 0.00},    // spine3
    {0.10, -0.93, 0.10},   // left foot
    {-0.10, -0.93, 0.10},  // right foot
    {0.00, 0.58, 0.00},    // neck
    {0.07, 0.50, 0.00},    // left collar
    {-0.07, 0.50, 0.00},   // right collar
    {0.00, 0.72, 0.02},    // head
    {0.18, 0.49, 0.00},    // left shoulder
    {-0.18, 0.49, 0.00},   // right shoulder
    {0.21, 0.22, -0.01},   // left elbow
    {-0.21, 0.22, -0.01},  // right elbow
    {0.22, -0.02, 0.03},   // left wrist
    {-0.22, -0.02, 0.03},  // right wrist
}};

bool is_leg(int j) {
  using namespace joint;
  return j == kLeftKnee || j == kRightKnee || j == kLeftAnkle || j == kRightAnkle ||
         j == kLeftFoot || j == kRightFoot;
}

bool is_left(int j) { return kRestOffsets[j][0] > 0.0; }

struct SmoothNoise {
  // Three sinusoids per (joint, axis).
  std::vector<std::array<double, 9>> terms;

  SmoothNoise(std::mt19937_64& rng, int joints) {
    std::uniform_real_distribution<double> amp(0.0, 0.006);
    std::uniform_real_distribution<double> freq(0.1, 0.6);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    terms.resize(static_cast<size_t>(joints) * 3);
    for (auto& t : terms) {
      for (int k = 0; k < 3; ++k) {
        t[3 * k] = amp(rng);
        t[3 * k + 1] = freq(rng);
        t[3 * k + 2] = phase(rng);
      }
    }
  }

  double at(int joint, int axis, double seconds) const {
    const auto& t = terms[static_cast<size_t>(joint) * 3 + axis];
    double v = 0.0;
    for (int k = 0; k < 3; ++k) {
      v += t[3 * k] * std::sin(2.0 * kPi * t[3 * k + 1] * seconds + t[3 * k + 2]);
    }
    return v;
  }
};

struct RootPath {
  std::vector<Eigen::Vector2d> xz;
  // Optional facing point per frame for agents that stand still.
  std::vector<Eigen::Vector2d> look_at;
};

// Builds one agent's joints around a prescribed planar root path.
MotionSequence articulate(const RootPath& path, double fps, std::mt19937_64& rng) {
  const int frames = static_cast<int>(path.xz.size());
  const int joints = joint::kDefaultCount;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double gait_phase = 2.0 * kPi * unit(rng);
  const double cadence = 0.85 + 0.2 * unit(rng);  // strides per second
  const SmoothNoise noise(rng, joints);

  std::vector<double> heading(frames, 0.0);
  std::vector<double> speed(frames, 0.0);
  for (int f = 0; f < frames; ++f) {
    const int f0 = std::max(0, f - 1);
    const int f1 = std::min(frames - 1, f + 1);
    const Eigen::Vector2d v = (path.xz[f1] - path.xz[f0]) * fps / static_cast<double>(f1 - f0);
    speed[f] = v.norm();
    Eigen::Vector2d facing = v;
    if (!path.look_at.empty()) facing = path.look_at[f] - path.xz[f];
    if (facing.norm() > 1e-9) {
      heading[f] = std::atan2(facing.x(), facing.y());
    } else {
      heading[f] = f > 0 ? heading[f - 1] : 0.0;
    }
  }

  std::vector<double> coords(static_cast<size_t>(frames) * joints * 3);
  double phase = gait_phase;
  for (int f = 0; f < frames; ++f) {
    const double seconds = f / fps;
    const double stride = std::min(speed[f], 1.4) / 1.4;
    if (f > 0) phase += 2.0 * kPi * cadence * stride / fps;
    const double c = std::cos(heading[f]);
    const double s = std::sin(heading[f]);
    const double bob = 0.015 * stride * std::cos(2.0 * phase);
    for (int j = 0; j < joints; ++j) {
      double lx = kRestOffsets[j][0];
      double ly = kRestOffsets[j][1];
      double lz = kRestOffsets[j][2];
      const double side = is_left(j) ? 1.0 : -1.0;
      const double swing = std::sin(phase + (side > 0 ? 0.0 : kPi));
      if (is_leg(j)) {
        const double reach = std::abs(ly) / 0.93;
        lz += 0.22 * stride * swing * reach;
        // Only the swinging foot lifts, and never far from the ground.
        ly += 0.025 * stride * std::max(0.0, std::cos(phase + (side > 0 ? 0.0 : kPi))) * reach;
        ly -= bob;
      } else if (j == joint::kLeftElbow || j == joint::kRightElbow ||
                 j == joint::kLeftWrist || j == joint::kRightWrist) {
        const double reach = j >= joint::kLeftWrist ? 1.0 : 0.5;
        lz -= 0.18 * stride * swing * reach;
      }
      const double scale = is_leg(j) ? 0.3 : 1.0;
      lx += scale * noise.at(j, 0, seconds);
      ly += scale * noise.at(j, 1, seconds);
      lz += scale * noise.at(j, 2, seconds);
      if (j == 0) {
        lx = 0.0;
        lz = 0.0;
      }
      const size_t base = (static_cast<size_t>(f) * joints + j) * 3;
      coords[base + kAxisX] = path.xz[f].x() + c * lx + s * lz;
      coords[base + kAxisUp] = kPelvisHeight + bob + ly;
      coords[base + kAxisZ] = path.xz[f].y() - s * lx + c * lz;
    }
  }
  return MotionSequence(frames, joints, std::move(coords), fps);
}

Eigen::Vector2d unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

LabeledMotion generate_scenario(ScenarioKind kind, int frames, double fps,
                                std::uint64_t seed) {
  if (frames < 2) throw ValidationError("generate_scenario: frames must be >= 2");
  if (!(fps > 0.0)) throw ValidationError("generate_scenario: fps must be > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = 2.0 * kPi * unit(rng);
  const double speed = 0.8 + 0.4 * unit(rng);
  const Eigen::Vector2d center(unit(rng) - 0.5, unit(rng) - 0.5);
  const double direction = unit(rng) < 0.5 ? -1.0 : 1.0;
  const double lateral = 0.2 * (unit(rng) - 0.5);

  RootPath a;
  RootPath b;
  a.xz.resize(frames);
  b.xz.resize(frames);
  const double mid = frames / 2;  // integer crossing frame
  switch (kind) {
    case ScenarioKind::kCircleDuet: {
      constexpr double kRadius = 1.5;
      const double omega = direction * speed / kRadius;
      for (int f = 0; f < frames; ++f) {
        const double theta = angle + omega * f / fps;
        a.xz[f] = center + kRadius * unit_vector(theta);
        b.xz[f] = center + kRadius * unit_vector(theta + kPi);
      }
      break;
    }
    case ScenarioKind::kApproachCollide: {
      const Eigen::Vector2d u = unit_vector(angle);
      const Eigen::Vector2d n(-u.y(), u.x());
      for (int f = 0; f < frames; ++f) {
        const double offset = speed * (f - mid) / fps;
        a.xz[f] = center + offset * u;
        b.xz[f] = center - offset * u + lateral * n;
      }
      break;
    }
    case ScenarioKind::kMirrorWalk: {
      const Eigen::Vector2d u = unit_vector(angle);
      const Eigen::Vector2d n(-u.y(), u.x());
      for (int f = 0; f < frames; ++f) {
        a.xz[f] = center + speed * (f - mid) / fps * u;
        b.xz[f] = a.xz[f] + n;
      }
      break;
    }
    case ScenarioKind::kOrbit: {
      const double omega = direction * 0.8 * speed;
      a.look_at.resize(frames);
      for (int f = 0; f < frames; ++f) {
        a.xz[f] = center;
        b.xz[f] = center + unit_vector(angle + omega * f / fps);
        a.look_at[f] = b.xz[f];
      }
      break;
    }
    default:
      throw ValidationError("generate_scenario: unknown scenario kind");
  }
  MotionSequence agent_a = articulate(a, fps, rng);
  MotionSequence agent_b = articulate(b, fps, rng);
  return LabeledMotion{TwoAgentMotion(std::move(agent_a), std::move(agent_b)),
                       ConditionLabel(kind)};
}

std::string_view trajectory_shape_name(TrajectoryShape shape) {
  switch (shape) {
    case TrajectoryShape::kLine:
      return "line";
    case TrajectoryShape::kCircle:
      return "circle";
    case TrajectoryShape::kSCurve:
      return "s-curve";
  }
  throw ValidationError("unknown trajectory shape");
}

TrajectoryShape parse_trajectory_shape(std::string_view name) {
  for (TrajectoryShape s :
       {TrajectoryShape::kLine, TrajectoryShape::kCircle, TrajectoryShape::kSCurve}) {
    if (trajectory_shape_name(s) == name) return s;
  }
  throw ValidationError("unknown trajectory shape '" + std::string(name) +
                        "' (expected line, circle or s-curve)");
}

Trajectory generate_trajectory_condition(TrajectoryShape shape, int frames, double scale) {
  if (frames < 2) throw ValidationError("trajectory condition: frames must be >= 2");
  if (!(scale > 0.0)) throw ValidationError("trajectory condition: scale must be > 0");
  std::vector<Eigen::Vector2d> points(frames);
  const double last = frames - 1;
  switch (shape) {
    case TrajectoryShape::kLine:
      for (int f = 0; f < frames; ++f) points[f] = {scale * f / last, 0.0};
      break;
    case TrajectoryShape::kCircle:
      for (int f = 0; f < frames; ++f) points[f] = scale * unit_vector(2.0 * kPi * f / last);
      break;
    case TrajectoryShape::kSCurve: {
      // Dense polyline, then resample at equal arc length.
      const double amplitude = 0.15 * scale;
      auto curve = [&](double u) {
        return Eigen::Vector2d(scale * u, amplitude * std::sin(2.0 * kPi * u));
      };
      const int dense = 64 * frames;
      std::vector<double> arc(dense + 1, 0.0);
      for (int i = 1; i <= dense; ++i) {
        arc[i] = arc[i - 1] + (curve(double(i) / dense) - curve(double(i - 1) / dense)).norm();
      }
      int seg = 0;
      for (int f = 0; f < frames; ++f) {
        const double target = arc[dense] * f / last;
        while (seg < dense - 1 && arc[seg + 1] < target) ++seg;
        const double span = arc[seg + 1] - arc[seg];
        const double w = span > 0.0 ? std::clamp((target - arc[seg]) / span, 0.0, 1.0) : 0.0;
        points[f] = curve((seg + w) / dense);
      }
      break;
    }
    default:
      throw ValidationError("unknown trajectory shape");
  }
  return Trajectory(std::move(points));
}

std::vector<LabeledMotion> Dataset::labeled() const {
  std::vector<LabeledMotion> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.sample);
  return out;
}

Dataset build_dataset(int n_per_kind, std::span<const ScenarioKind> kinds, int frames,
                      double fps, std::uint64_t seed) {
  if (n_per_kind < 1) throw ValidationError("build_dataset: n_per_kind must be >= 1");
  if (kinds.empty()) throw ValidationError("build_dataset: no scenario kinds given");
  Dataset data;
  const MotionShape shape{frames, joint::kDefaultCount};
  data.mean = Eigen::VectorXd::Zero(shape.size());
  for (ScenarioKind kind : kinds) {
    Eigen::VectorXd kind_sum = Eigen::VectorXd::Zero(shape.size());
    for (int i = 0; i < n_per_kind; ++i) {
      const std::uint64_t item_seed =
          derive_seed(seed, static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(i));
      DatasetItem item{generate_scenario(kind, frames, fps, item_seed), item_seed};
      const Eigen::VectorXd flat = MotionTensor::from_motion(item.sample.motion).values();
      kind_sum += flat;
      data.mean += flat;
      data.items.push_back(std::move(item));
    }
    data.kind_means[kind] = kind_sum / n_per_kind;
  }
  data.mean /= static_cast<double>(data.items.size());
  return data;
}

}  // namespace leadfollow
