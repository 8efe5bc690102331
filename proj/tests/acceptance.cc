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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "commands.h"
#include "leadfollow/capsule.h"
#include "leadfollow/denoiser.h"
#include "leadfollow/metrics.h"
#include "leadfollow/mlp_denoiser.h"
#include "leadfollow/motion_io.h"
#include "leadfollow/pace_controller.h"
#include "leadfollow/sampler.h"
#include "leadfollow/sync_adapter.h"
#include "leadfollow/synthetic.h"
#include "runs.h"
#include "test_util.h"

namespace leadfollow {
namespace {

namespace fs = std::filesystem;
using cli::RunOptions;
using Clock = std::chrono::steady_clock;

constexpr int kFrames = 210;
constexpr double kFps = 30.0;
constexpr std::uint64_t kSeed = 2026;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// Prior fitted the way the CLI fits it when no dataset is given.
std::shared_ptr<AnalyticGaussianPrior> fitted_prior() {
  const Dataset data = build_dataset(
      8, std::vector<ScenarioKind>(kAllScenarioKinds.begin(), kAllScenarioKinds.end()), kFrames,
      kFps, derive_seed(kSeed, 1));
  auto prior = std::make_shared<AnalyticGaussianPrior>(MotionShape{kFrames, joint::kDefaultCount},
                                                       data.mean, make_schedule(1000));
  for (const auto& [kind, mean] : data.kind_means) prior->set_condition_mean(kind, mean);
  return prior;
}

std::vector<Trajectory> shape_targets() {
  return {generate_trajectory_condition(TrajectoryShape::kLine, kFrames, 6.0),
          generate_trajectory_condition(TrajectoryShape::kSCurve, kFrames, 6.0),
          generate_trajectory_condition(TrajectoryShape::kCircle, kFrames, 2.0)};
}

std::vector<std::uint64_t> seeds(std::uint64_t stream, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(derive_seed(kSeed, stream, i));
  return out;
}

Verdict sampler_moments() {
  const auto start = Clock::now();
  const MotionShape shape{6, 2};
  Rng rng(derive_seed(kSeed, 11));
  const Eigen::VectorXd mean = 0.5 * standard_normal(rng, shape.size());
  const AnalyticGaussianPrior prior(shape, mean, make_schedule(1000));
  const ConditionLabel label(ScenarioKind::kOrbit);
  const int chains = 2000;
  Eigen::MatrixXd draws(shape.size(), chains);
  for (int c = 0; c < chains; ++c) {
    Rng chain(derive_seed(kSeed, 12, c));
    draws.col(c) = sample_tensor(prior, label, {}, chain).values();
  }
  const Eigen::VectorXd m = draws.rowwise().mean();
  const Eigen::MatrixXd centered = draws.colwise() - m;
  const Eigen::VectorXd var = centered.rowwise().squaredNorm() / (chains - 1);
  const double expected_var = prior.params().variance + prior.params().jitter;
  double worst_z = 0, worst_var = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    worst_z = std::max(worst_z, std::abs(m[i] - mean[i]) / std::sqrt(var[i] / chains));
    worst_var = std::max(worst_var, std::abs(var[i] - expected_var) / expected_var);
  }
  const double t = seconds_since(start);
  return {worst_z <= 3.0 && worst_var <= 0.15 && t <= 120.0,
          fmt("%d chains on %d coords: max |mean err| %.2f SE (<= 3), max var rel err %.3f (<= 0.15), %.1fs",
              chains, shape.size(), worst_z, worst_var, t)};
}

Verdict trajectory_adherence(const Denoiser& prior) {
  const auto start = Clock::now();
  RunOptions options;
  options.adapter = false;
  const std::vector<Trajectory> targets = shape_targets();
  const std::vector<GuidanceWindow> windows{GuidanceWindow{}};
  const std::vector<std::uint64_t> s = seeds(3, 20);
  const SkeletonSpec skeleton = default_skeleton();
  std::string detail;
  bool pass = true;
  const char* names[] = {"line", "s-curve", "circle"};
  for (size_t k = 0; k < targets.size(); ++k) {
    const auto rows = cli::run_window_ablation(prior, ConditionLabel(ScenarioKind::kMirrorWalk),
                                               {&targets[k], 1}, windows, options, s, skeleton);
    const double ratio = rows[1].trajectory_rmse / rows[0].trajectory_rmse;
    pass &= ratio <= 0.2;
    detail += fmt("%s %.3f/%.3f=%.3f; ", names[k], rows[1].trajectory_rmse,
                  rows[0].trajectory_rmse, ratio);
  }
  const double t = seconds_since(start);
  pass &= t <= 300.0;
  return {pass, detail + fmt("ratios <= 0.2, %.1fs", t)};
}

std::vector<cli::EvaluationCase> collide_cases(int n) {
  std::vector<cli::EvaluationCase> cases;
  for (int i = 0; i < n; ++i) {
    cases.push_back({generate_scenario(ScenarioKind::kApproachCollide, kFrames, kFps,
                                       derive_seed(kSeed, 4, i)),
                     derive_seed(kSeed, 5, i)});
  }
  return cases;
}

std::shared_ptr<const Denoiser> scenario_prior(const cli::EvaluationCase& item) {
  return std::make_shared<const AnalyticGaussianPrior>(
      MotionShape{kFrames, joint::kDefaultCount},
      MotionTensor::from_motion(item.scenario.motion).values(), make_schedule(1000));
}

const cli::EvaluationRow& row_for(const std::vector<cli::EvaluationRow>& rows, bool ctrl,
                                  bool adapter) {
  for (const auto& r : rows) {
    if (r.controller == ctrl && r.adapter == adapter) return r;
  }
  throw std::runtime_error("missing evaluation row");
}

Verdict penetration_reduction(const std::vector<cli::EvaluationRow>& rows, double seconds) {
  const double on = row_for(rows, true, true).penetration_frames;
  const double off = row_for(rows, true, false).penetration_frames;
  const double reduction = off > 0 ? 1.0 - on / off : 0.0;
  return {reduction >= 0.40 && seconds <= 300.0,
          fmt("mean penetration frames %.2f on vs %.2f off: reduction %.1f%% (>= 40%%), %.1fs",
              on, off, 100 * reduction, seconds)};
}

Verdict overhead(const std::vector<cli::EvaluationRow>& rows) {
  const double base = row_for(rows, false, false).seconds;
  const double full = row_for(rows, true, true).seconds;
  const double ratio = full / base - 1.0;
  return {rows.size() == 4 && ratio <= 1.0,
          fmt("%zu rows; base %.3fs, full %.3fs per chain: overhead %.0f%% (<= 100%%)",
              rows.size(), base, full, 100 * ratio)};
}

Verdict anti_homogenization(std::span<const cli::EvaluationCase> cases) {
  const SkeletonSpec skeleton = default_skeleton();
  double with_vel = 0, joint_only = 0, worst = -std::numeric_limits<double>::infinity();
  for (const auto& item : cases) {
    const auto prior = scenario_prior(item);
    PaceTargets targets;
    targets.a = project_root_trajectory(item.scenario.motion.agent_a(), skeleton);
    RunOptions on;
    RunOptions off;
    off.adapter_config.w_vel = 0.0;
    const double a = final_velocity_similarity(
        cli::run_once(*prior, item.scenario.label, targets, on, skeleton, item.seed).motion, 20);
    const double b = final_velocity_similarity(
        cli::run_once(*prior, item.scenario.label, targets, off, skeleton, item.seed).motion, 20);
    with_vel += a;
    joint_only += b;
    worst = std::max(worst, a - b);
  }
  const double n = static_cast<double>(cases.size());
  return {with_vel / n < joint_only / n && worst <= 0.05,
          fmt("mean similarity %.4f with velocity loss vs %.4f joint only; worst per-seed increase %.4f (<= 0.05)",
              with_vel / n, joint_only / n, worst)};
}

Verdict window_ablation(const Denoiser& prior) {
  const std::vector<Trajectory> targets = shape_targets();
  const std::vector<GuidanceWindow> windows{{0.8, 0.2}, {0.7, 0.3}, {0.6, 0.4}};
  const auto rows = cli::run_window_ablation(prior, ConditionLabel(ScenarioKind::kMirrorWalk),
                                             targets, windows, RunOptions{}, seeds(3, 5),
                                             default_skeleton());
  const double r8 = rows[1].trajectory_rmse, r7 = rows[2].trajectory_rmse,
               r6 = rows[3].trajectory_rmse;
  const double smooth_ratio = rows[2].smoothness / rows[0].smoothness;
  return {r8 <= r7 && r7 <= r6 && smooth_ratio <= 1.5,
          fmt("rmse 0.8-0.2 %.4f <= 0.7-0.3 %.4f <= 0.6-0.4 %.4f; smoothness ratio %.3f (<= 1.5)",
              r8, r7, r6, smooth_ratio)};
}

Verdict unidirectionality(const Denoiser& full_prior) {
  LocalityAudit audit;
  const SkeletonSpec skeleton = default_skeleton();
  const LabeledMotion clip = generate_scenario(ScenarioKind::kCircleDuet, 40, kFps, kSeed);
  const AnalyticGaussianPrior small(MotionShape{40, joint::kDefaultCount},
                                    MotionTensor::from_motion(clip.motion).values(),
                                    make_schedule(1000));
  const Trajectory ta = generate_trajectory_condition(TrajectoryShape::kLine, 40, 2.0);
  const Trajectory tb = generate_trajectory_condition(TrajectoryShape::kCircle, 40, 1.0);
  std::vector<double> h(40, 0.9);
  const Trajectory tall(ta.points(), h);
  int runs = 0;
  for (TargetAgent who : {TargetAgent::kA, TargetAgent::kB, TargetAgent::kBoth}) {
    for (InjectionMode mode : {InjectionMode::kNoised, InjectionMode::kRaw}) {
      for (int steps : {1, 3}) {
        for (bool height : {false, true}) {
          PaceConfig config;
          config.target_agent = who;
          config.injection_mode = mode;
          config.grad_steps = steps;
          PaceTargets targets;
          targets.a = height ? tall : ta;
          targets.b = tb;
          Rng rng(derive_seed(kSeed, 13, runs++));
          guided_sample(small, clip.label, targets, config, rng, {}, {}, 0, &audit);
        }
      }
    }
  }
  // One full-size run with the adapter attached as an extra hook.
  PaceTargets targets;
  targets.a = shape_targets()[1];
  const AdapterConfig adapter;
  const std::vector<SamplerHook> extra{adapter_hook(
      adapter, skeleton,
      adapter_fire_steps(default_steps(full_prior.schedule(), SamplerKind::kDdim), 1000,
                         GuidanceWindow{}, adapter))};
  Rng rng(derive_seed(kSeed, 13, runs++));
  guided_sample(full_prior, ConditionLabel(ScenarioKind::kApproachCollide), targets, PaceConfig{},
                rng, {}, extra, 0, &audit);
  return {audit.calls > 0 && audit.violations == 0,
          fmt("%d guided runs, %d audited hook calls, %d violations", runs, audit.calls,
              audit.violations)};
}

double relative_gap(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max({a.norm(), b.norm(), 1e-12});
}

Verdict gradients() {
  Rng rng(derive_seed(kSeed, 14));
  const double h = 1e-6;
  auto numeric = [&](const MotionSequence& b, const std::function<double(const MotionSequence&)>& f) {
    std::vector<double> x(b.coords().begin(), b.coords().end());
    Eigen::VectorXd g(static_cast<Eigen::Index>(x.size()));
    for (size_t i = 0; i < x.size(); ++i) {
      std::vector<double> p = x, m = x;
      p[i] += h;
      m[i] -= h;
      g[static_cast<Eigen::Index>(i)] =
          (f(MotionSequence(b.frames(), b.joints(), p)) - f(MotionSequence(b.frames(), b.joints(), m))) /
          (2 * h);
    }
    return g;
  };
  double worst_joint = 0, worst_vel = 0, worst_mlp = 0;
  int instances = 0;
  while (instances < 50) {
    const TwoAgentMotion x = testing::random_pair(6, 4, rng, 0.4);
    const double delta = 0.8;
    bool near_kink = false;
    for (int f = 0; f < 6; ++f) {
      for (int j = 0; j < 4; ++j) {
        const double d = (x.agent_a().position(f, j) - x.agent_b().position(f, j)).norm();
        near_kink |= std::abs(d - delta) < 1e-3 || d < 1e-3;
      }
    }
    if (near_kink) continue;
    ++instances;
    worst_joint = std::max(
        worst_joint,
        relative_gap(joint_loss_gradient(x.agent_a(), x.agent_b(), delta),
                     numeric(x.agent_b(), [&](const MotionSequence& b) {
                       return joint_loss(x.agent_a(), b, delta);
                     })));
    worst_vel = std::max(
        worst_vel, relative_gap(velocity_loss_gradient(x.agent_a(), x.agent_b(), 1e-6),
                                numeric(x.agent_b(), [&](const MotionSequence& b) {
                                  return velocity_loss(x.agent_a(), b, 1e-6);
                                })));
  }
  MlpNetwork net(9, 6, 8, 2);
  net.initialize(rng);
  net.parameters() += 0.1 * standard_normal(rng, net.parameters().size());
  Eigen::MatrixXd inputs(9, 5), targets(6, 5);
  for (int c = 0; c < 5; ++c) {
    inputs.col(c) = standard_normal(rng, 9);
    targets.col(c) = standard_normal(rng, 6);
  }
  Eigen::VectorXd grad;
  net.loss(inputs, targets, &grad);
  std::uniform_int_distribution<Eigen::Index> pick(0, grad.size() - 1);
  for (int probe = 0; probe < 20; ++probe) {
    const Eigen::Index i = pick(rng);
    MlpNetwork plus = net, minus = net;
    plus.parameters()[i] += 1e-5;
    minus.parameters()[i] -= 1e-5;
    const double fd = (plus.loss(inputs, targets) - minus.loss(inputs, targets)) / 2e-5;
    worst_mlp = std::max(worst_mlp, std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-12}));
  }
  return {worst_joint <= 1e-4 && worst_vel <= 1e-4 && worst_mlp <= 1e-4,
          fmt("max relative error: joint %.2e, velocity %.2e (50 instances), MLP %.2e (20 probes)",
              worst_joint, worst_vel, worst_mlp)};
}

// Closest approach of two capsule axes from dense samples along one axis.
double sampled_axis_distance(const Capsule& a, const Capsule& b, int samples) {
  double best = std::numeric_limits<double>::infinity();
  const Eigen::Vector3d d = b.q - b.p;
  const double len2 = d.squaredNorm();
  for (int i = 0; i <= samples; ++i) {
    const Eigen::Vector3d x = a.p + (a.q - a.p) * (static_cast<double>(i) / samples);
    const double s = len2 > 0 ? std::clamp((x - b.p).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (x - (b.p + s * d)).norm());
  }
  return best;
}

Verdict collision_oracle() {
  const SkeletonSpec s = default_skeleton();
  Rng rng(derive_seed(kSeed, 15));
  std::uniform_real_distribution<double> offset(-0.6, 0.6);
  std::uniform_real_distribution<double> yaw(0.0, 6.283185307179586);
  std::uniform_int_distribution<int> frame(0, 59);
  int compared = 0, agree = 0, positives = 0, skipped = 0;
  for (int trial = 0; compared < 200 && trial < 2000; ++trial) {
    const LabeledMotion clip = generate_scenario(kAllScenarioKinds[trial % 4], 60, kFps, 5000 + trial);
    const std::vector<Eigen::Vector3d> a = clip.motion.agent_a().pose(frame(rng));
    std::vector<Eigen::Vector3d> b = clip.motion.agent_b().pose(frame(rng));
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(yaw(rng), Eigen::Vector3d::UnitY()).toRotationMatrix();
    const Eigen::Vector3d shift = a[0] + Eigen::Vector3d(offset(rng), 0, offset(rng));
    const Eigen::Vector3d center = b[0];
    for (auto& p : b) p = rot * (p - center) + shift;
    bool oracle = false, ambiguous = false;
    for (const Capsule& x : pose_to_capsules(a, s)) {
      for (const Capsule& y : pose_to_capsules(b, s)) {
        const double margin = sampled_axis_distance(x, y, 4000) - (x.radius + y.radius);
        if (std::abs(margin) <= 1e-3) ambiguous = true;
        if (margin < 0) oracle = true;
      }
    }
    if (ambiguous) {
      ++skipped;
      continue;
    }
    ++compared;
    positives += oracle;
    agree += detect_conflict(a, b, s).conflict == oracle;
  }
  return {compared == 200 && agree == 200,
          fmt("%d/%d agree (%d overlapping, %d within 1 mm of contact skipped)", agree, compared,
              positives, skipped)};
}

// Every file except timing tables, relative path -> bytes.
std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() == ".tsv") continue;
    files[fs::relative(e.path(), dir).string()] = read_text_file(e.path());
  }
  return files;
}

Verdict cli_determinism() {
  const fs::path root = testing::scratch_dir("acceptance_cli");
  const fs::path data = root / "data";
  std::ostringstream sink;
  if (cli::run_cli({"make-data", "--frames", "16", "--n-per-kind", "2", "--seed", "3", "--out-dir",
                    data.string()}, sink, sink) != 0) {
    return {false, "make-data failed: " + sink.str()};
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"make-data", {"make-data", "--frames", "16", "--n-per-kind", "2"}},
      {"train", {"train", "--data", data.string(), "--epochs", "3", "--width", "16"}},
      {"generate", {"generate", "--frames", "30", "--prior-items", "2", "--shape", "s-curve",
                    "--scale", "2", "--plot"}},
      {"ablate-window", {"ablate-window", "--frames", "30", "--prior-items", "2", "--n-seeds", "1",
                         "--shapes", "line", "--scale", "2"}},
      {"evaluate", {"evaluate", "--frames", "60", "--n-seeds", "2", "--tail-frames", "10"}}};
  std::string detail;
  bool pass = true;
  for (const auto& [name, args] : commands) {
    std::map<std::string, std::string> runs[2];
    for (int r = 0; r < 2; ++r) {
      const fs::path out = root / (name + "_" + std::to_string(r));
      std::vector<std::string> full = args;
      full.insert(full.end(), {"--seed", "7", "--out-dir", out.string()});
      std::ostringstream log;
      if (cli::run_cli(full, log, log) != 0) return {false, name + " failed: " + log.str()};
      runs[r] = outputs(out);
    }
    const bool same = !runs[0].empty() && runs[0] == runs[1];
    pass &= same;
    detail += fmt("%s %zu files %s; ", name.c_str(), runs[0].size(), same ? "identical" : "DIFFER");
  }
  return {pass, detail};
}

}  // namespace
}  // namespace leadfollow

int main() {
  using namespace leadfollow;
  int failures = 0;
  auto report = [&](int id, const char* title, const Verdict& v) {
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
    std::fflush(stdout);
    failures += !v.pass;
  };
  const auto prior = fitted_prior();

  report(1, "sampler moments", sampler_moments());
  report(2, "trajectory adherence", trajectory_adherence(*prior));

  const auto cases = collide_cases(20);
  const auto start = Clock::now();
  const auto rows = cli::run_evaluation(scenario_prior, cases, cli::RunOptions{}, default_skeleton());
  const double eval_seconds = seconds_since(start);
  report(3, "penetration reduction", penetration_reduction(rows, eval_seconds));
  report(4, "anti-homogenization", anti_homogenization(cases));
  report(5, "window ablation", window_ablation(*prior));
  report(6, "overhead", overhead(rows));
  report(7, "unidirectionality", unidirectionality(*prior));
  report(8, "gradients", gradients());
  report(9, "collision oracle", collision_oracle());
  report(10, "determinism", cli_determinism());
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
