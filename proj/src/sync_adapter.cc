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

#include "leadfollow/sync_adapter.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "leadfollow/error.h"

namespace leadfollow {
namespace {

void check_pair(const MotionSequence& a, const MotionSequence& b) {
  if (a.frames() != b.frames() || a.joints() != b.joints()) {
    throw ValidationError("adapter: sequences differ in shape");
  }
}

// Coarse scan resolution used before bisecting for the clearing distance.
constexpr double kSeparationScanStep = 0.02;

std::vector<Eigen::Vector3d> translated(std::vector<Eigen::Vector3d> pose,
                                        const Eigen::Vector3d& offset) {
  for (auto& p : pose) p += offset;
  return pose;
}

Eigen::Vector3d horizontal_direction(const std::vector<Eigen::Vector3d>& from,
                                     const std::vector<Eigen::Vector3d>& to, int root) {
  Eigen::Vector3d d = to[root] - from[root];
  d[kAxisUp] = 0.0;
  if (d.norm() > 1e-9) return d.normalized();
  // Coincident roots: fall back to the centroid offset, then to +x.
  Eigen::Vector3d ca = Eigen::Vector3d::Zero();
  Eigen::Vector3d cb = Eigen::Vector3d::Zero();
  for (const auto& p : from) ca += p;
  for (const auto& p : to) cb += p;
  d = (cb - ca) / static_cast<double>(from.size());
  d[kAxisUp] = 0.0;
  if (d.norm() > 1e-9) return d.normalized();
  return Eigen::Vector3d::UnitX();
}

}  // namespace

void AdapterConfig::validate() const {
  if (!(delta > 0.0)) throw ValidationError("adapter: delta must be > 0");
  if (w_joint < 0.0 || w_vel < 0.0) throw ValidationError("adapter: weights must be >= 0");
  if (adapter_steps < 1) throw ValidationError("adapter: adapter_steps must be >= 1");
  if (!(grad_step_size > 0.0)) throw ValidationError("adapter: grad_step_size must be > 0");
  if (grad_iters < 0) throw ValidationError("adapter: grad_iters must be >= 0");
  if (!(vel_epsilon > 0.0)) throw ValidationError("adapter: vel_epsilon must be > 0");
  if (follower != 0 && follower != 1) throw ValidationError("adapter: follower must be 0 or 1");
}

double joint_loss(const MotionSequence& a, const MotionSequence& b, double delta) {
  check_pair(a, b);
  double sum = 0.0;
  for (int f = 0; f < a.frames(); ++f) {
    for (int j = 0; j < a.joints(); ++j) {
      const double h = std::max(0.0, delta - (a.position(f, j) - b.position(f, j)).norm());
      sum += h * h;
    }
  }
  return sum;
}

Eigen::VectorXd joint_loss_gradient(const MotionSequence& a, const MotionSequence& b,
                                    double delta) {
  check_pair(a, b);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(b.coords().size());
  for (int f = 0; f < a.frames(); ++f) {
    for (int j = 0; j < a.joints(); ++j) {
      const Eigen::Vector3d diff = b.position(f, j) - a.position(f, j);
      const double d = diff.norm();
      const double h = delta - d;
      // At d == 0 the hinge has no defined direction; leave the gradient at 0.
      if (h <= 0.0 || d == 0.0) continue;
      grad.segment<3>((f * b.joints() + j) * 3) = -2.0 * h * diff / d;
    }
  }
  return grad;
}

double velocity_loss(const MotionSequence& a, const MotionSequence& b, double epsilon,
                     VelocityLossForm form) {
  check_pair(a, b);
  double sum = 0.0;
  for (int f = 0; f + 1 < a.frames(); ++f) {
    for (int j = 0; j < a.joints(); ++j) {
      const Eigen::Vector3d va = a.position(f + 1, j) - a.position(f, j);
      const Eigen::Vector3d vb = b.position(f + 1, j) - b.position(f, j);
      if (form == VelocityLossForm::kDot) {
        sum += va.dot(vb);
        continue;
      }
      const double na = va.norm();
      const double nb = vb.norm();
      if (na < epsilon || nb < epsilon) continue;
      sum += va.dot(vb) / (na * nb);
    }
  }
  return sum;
}

Eigen::VectorXd velocity_loss_gradient(const MotionSequence& a, const MotionSequence& b,
                                       double epsilon, VelocityLossForm form) {
  check_pair(a, b);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(b.coords().size());
  for (int f = 0; f + 1 < a.frames(); ++f) {
    for (int j = 0; j < a.joints(); ++j) {
      const Eigen::Vector3d va = a.position(f + 1, j) - a.position(f, j);
      const Eigen::Vector3d vb = b.position(f + 1, j) - b.position(f, j);
      Eigen::Vector3d g;
      if (form == VelocityLossForm::kDot) {
        g = va;
      } else {
        const double na = va.norm();
        const double nb = vb.norm();
        if (na < epsilon || nb < epsilon) continue;
        const double cosine = va.dot(vb) / (na * nb);
        g = va / (na * nb) - cosine * vb / (nb * nb);
      }
      // v_b(f) = p_b(f+1) - p_b(f).
      grad.segment<3>(((f + 1) * b.joints() + j) * 3) += g;
      grad.segment<3>((f * b.joints() + j) * 3) -= g;
    }
  }
  return grad;
}

double combined_loss(const MotionSequence& leader, const MotionSequence& follower,
                     const AdapterConfig& config) {
  double value = 0.0;
  if (config.w_joint != 0.0) value += config.w_joint * joint_loss(leader, follower, config.delta);
  if (config.w_vel != 0.0) {
    value += config.w_vel *
             velocity_loss(leader, follower, config.vel_epsilon, config.vel_form);
  }
  return value;
}

Eigen::VectorXd combined_loss_gradient(const MotionSequence& leader,
                                       const MotionSequence& follower,
                                       const AdapterConfig& config) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(follower.coords().size());
  if (config.w_joint != 0.0) {
    grad += config.w_joint * joint_loss_gradient(leader, follower, config.delta);
  }
  if (config.w_vel != 0.0) {
    grad += config.w_vel * velocity_loss_gradient(leader, follower, config.vel_epsilon,
                                                  config.vel_form);
  }
  return grad;
}

std::vector<int> conflict_frames(const MotionSequence& a, const MotionSequence& b,
                                 const SkeletonSpec& skeleton) {
  check_pair(a, b);
  check_compatible(a, skeleton);
  std::vector<int> frames;
  for (int f = 0; f < a.frames(); ++f) {
    if (poses_overlap(pose_to_capsules(a.pose(f), skeleton),
                      pose_to_capsules(b.pose(f), skeleton))) {
      frames.push_back(f);
    }
  }
  return frames;
}

SeparationResult separate_collision(const MotionSequence& follower,
                                    const MotionSequence& leader,
                                    const SkeletonSpec& skeleton,
                                    std::span<const int> frames) {
  check_pair(leader, follower);
  check_compatible(follower, skeleton);
  std::vector<double> coords(follower.coords().begin(), follower.coords().end());
  SeparationResult result{follower, {}, {}, {}};
  const int root = skeleton.root_index();
  for (int f : frames) {
    if (f < 0 || f >= follower.frames()) throw ValidationError("separate: frame out of range");
    const std::vector<Eigen::Vector3d> pose_a = leader.pose(f);
    const std::vector<Eigen::Vector3d> pose_b = follower.pose(f);
    const CapsuleSet caps_a = pose_to_capsules(pose_a, skeleton);
    const Eigen::Vector3d dir = horizontal_direction(pose_a, pose_b, root);
    auto clear = [&](double s) {
      return !poses_overlap(caps_a, pose_to_capsules(translated(pose_b, s * dir), skeleton));
    };
    if (clear(0.0)) continue;
    // First clearing distance on a coarse grid, then bisection below it.
    double lo = 0.0;
    double hi = -1.0;
    for (double s = kSeparationScanStep; s <= kMaxSeparation + 1e-12;
         s += kSeparationScanStep) {
      if (clear(s)) {
        hi = s;
        break;
      }
      lo = s;
    }
    if (hi < 0.0) {
      result.unresolved_frames.push_back(f);
      continue;
    }
    while (hi - lo > kSeparationTolerance) {
      const double mid = 0.5 * (lo + hi);
      (clear(mid) ? hi : lo) = mid;
    }
    const Eigen::Vector3d offset = hi * dir;
    for (int j = 0; j < follower.joints(); ++j) {
      for (int axis = 0; axis < 3; ++axis) {
        coords[(static_cast<size_t>(f) * follower.joints() + j) * 3 + axis] += offset[axis];
      }
    }
    result.treated_frames.push_back(f);
    result.displacement.push_back(hi);
  }
  result.follower =
      MotionSequence(follower.frames(), follower.joints(), std::move(coords), follower.fps());
  return result;
}

MotionTensor adapt_follower(const MotionTensor& x0_pred, const SkeletonSpec& skeleton,
                            const AdapterConfig& config, AdapterReport* report) {
  config.validate();
  const int follower_index = config.follower;
  const MotionSequence leader = x0_pred.agent(1 - follower_index);
  const MotionSequence follower = x0_pred.agent(follower_index);
  const std::vector<int> frames = conflict_frames(leader, follower, skeleton);
  if (report != nullptr) *report = AdapterReport{};
  if (frames.empty()) return x0_pred;

  SeparationResult separated = separate_collision(follower, leader, skeleton, frames);
  MotionSequence current = std::move(separated.follower);
  double loss = combined_loss(leader, current, config);
  std::vector<double> trace{loss};
  constexpr int kMaxHalvings = 5;
  for (int iter = 0; iter < config.grad_iters; ++iter) {
    const Eigen::VectorXd grad = combined_loss_gradient(leader, current, config);
    if (grad.squaredNorm() == 0.0) break;
    const Eigen::Map<const Eigen::VectorXd> x(current.coords().data(),
                                              static_cast<Eigen::Index>(current.coords().size()));
    double step = config.grad_step_size;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, step *= 0.5) {
      const Eigen::VectorXd candidate = x - step * grad;
      MotionSequence next(current.frames(), current.joints(),
                          std::vector<double>(candidate.data(),
                                              candidate.data() + candidate.size()),
                          current.fps());
      const double next_loss = combined_loss(leader, next, config);
      if (next_loss <= loss) {
        current = std::move(next);
        loss = next_loss;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    trace.push_back(loss);
  }

  MotionTensor out = x0_pred;
  out.set_agent(follower_index, current);
  if (report != nullptr) {
    report->conflict = true;
    report->conflict_frames = static_cast<int>(frames.size());
    report->unresolved_frames = static_cast<int>(separated.unresolved_frames.size());
    report->loss_trace = std::move(trace);
  }
  return out;
}

std::vector<int> adapter_fire_steps(std::span<const int> steps, int T,
                                    const GuidanceWindow& window,
                                    const AdapterConfig& config) {
  if (!config.fire_at.empty()) return config.fire_at;
  std::vector<int> inside;
  for (int t : steps) {
    if (t > 0 && in_window(t, T, window)) inside.push_back(t);
  }
  if (inside.empty()) return {};
  const int n = std::min<int>(config.adapter_steps, static_cast<int>(inside.size()));
  if (n == 1) return {inside[inside.size() / 2]};
  std::vector<int> fire;
  for (int i = 0; i < n; ++i) {
    const double pos = static_cast<double>(i) * (inside.size() - 1) / (n - 1);
    fire.push_back(inside[static_cast<size_t>(std::lround(pos))]);
  }
  return fire;
}

SamplerHook adapter_hook(const AdapterConfig& config, const SkeletonSpec& skeleton,
                         std::vector<int> fire_steps,
                         std::function<void(int, const AdapterReport&)> on_invoke) {
  config.validate();
  const std::set<int> fire(fire_steps.begin(), fire_steps.end());
  SamplerHook hook;
  hook.name = "sync-adapter";
  hook.post_predict = [config, skeleton, fire, on_invoke](const MotionTensor& x0, int t,
                                                          Rng&) {
    if (!fire.contains(t)) return x0;
    AdapterReport report;
    MotionTensor out = adapt_follower(x0, skeleton, config, &report);
    if (on_invoke) on_invoke(t, report);
    return out;
  };
  return hook;
}

}  // namespace leadfollow
