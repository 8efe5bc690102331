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

#include <gtest/gtest.h>

#include <cmath>

#include "leadfollow/denoiser.h"
#include "leadfollow/error.h"
#include "leadfollow/metrics.h"
#include "leadfollow/pace_controller.h"
#include "leadfollow/synthetic.h"
#include "test_util.h"

namespace leadfollow {
namespace {

TEST(InWindowTest, InclusiveBounds) {
  const GuidanceWindow w;
  EXPECT_TRUE(in_window(500, 1000, w));
  EXPECT_FALSE(in_window(900, 1000, w));
  EXPECT_TRUE(in_window(700, 1000, w));
  EXPECT_TRUE(in_window(300, 1000, w));
  EXPECT_FALSE(in_window(701, 1000, w));
  EXPECT_FALSE(in_window(299, 1000, w));
  // Fractional bounds are floored: 0.75 * 10 = 7.5 -> 7, 0.25 * 10 = 2.5 -> 2.
  EXPECT_TRUE(in_window(7, 10, {0.75, 0.25}));
  EXPECT_FALSE(in_window(8, 10, {0.75, 0.25}));
  EXPECT_TRUE(in_window(2, 10, {0.75, 0.25}));
}

TEST(InWindowTest, ZeroWidthWindowIsEmpty) {
  const GuidanceWindow w{0.5, 0.5};
  EXPECT_TRUE(w.empty());
  for (int t = 0; t <= 1000; ++t) EXPECT_FALSE(in_window(t, 1000, w));
}

TEST(PaceConfigTest, Validation) {
  EXPECT_THROW((GuidanceWindow{0.3, 0.7}.validate()), ValidationError);
  EXPECT_THROW((GuidanceWindow{1.2, 0.1}.validate()), ValidationError);
  PaceConfig c;
  c.grad_step_size = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
  c.grad_step_size = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c.grad_step_size = 1.0;
  c.grad_steps = 0;
  EXPECT_THROW(c.validate(), ValidationError);
}

struct Fixture {
  MotionShape shape{8, 3};
  NoiseSchedule schedule = make_schedule(1000);
  Trajectory target = generate_trajectory_condition(TrajectoryShape::kSCurve, 8, 2.0);
  MotionTensor random_tensor(Rng& rng) const {
    return MotionTensor(shape, standard_normal(rng, shape.size()));
  }
};

// Every channel except the listed ones must be bit-identical.
void expect_only_changed(const MotionTensor& before, const MotionTensor& after,
                         const std::vector<int>& allowed) {
  std::vector<char> ok(before.values().size(), 0);
  for (int i : allowed) ok[i] = 1;
  for (Eigen::Index i = 0; i < before.values().size(); ++i) {
    if (!ok[i]) {
      EXPECT_EQ(before.values()[i], after.values()[i]) << "channel " << i;
    }
  }
}

TEST(InjectTrajectoryTest, RawModeWritesTargetVerbatim) {
  Fixture fx;
  Rng rng(41);
  const DiffusionState state{fx.random_tensor(rng), 500};
  const DiffusionState out =
      inject_trajectory(state, fx.target, 0, 1, fx.schedule, InjectionMode::kRaw, rng);
  for (int f = 0; f < 8; ++f) {
    EXPECT_EQ(out.x(0, f, 1, kAxisX), fx.target.planar(f).x());
    EXPECT_EQ(out.x(0, f, 1, kAxisZ), fx.target.planar(f).y());
  }
  expect_only_changed(state.x, out.x, root_channel_indices(fx.shape, 0, 1, false));
}

TEST(InjectTrajectoryTest, NoisedModeZeroDrawScalesTarget) {
  Fixture fx;
  Rng rng(42);
  const DiffusionState state{fx.random_tensor(rng), 400};
  const std::vector<double> zeros(16, 0.0);
  const DiffusionState out =
      inject_trajectory(state, fx.target, 1, 0, fx.schedule, InjectionMode::kNoised, zeros);
  const double s = std::sqrt(fx.schedule.alpha_bar(400));
  for (int f = 0; f < 8; ++f) {
    EXPECT_EQ(out.x(1, f, 0, kAxisX), s * fx.target.planar(f).x());
    EXPECT_EQ(out.x(1, f, 0, kAxisZ), s * fx.target.planar(f).y());
  }
  expect_only_changed(state.x, out.x, root_channel_indices(fx.shape, 1, 0, false));
}

TEST(InjectTrajectoryTest, NoisedModeNearCleanStaysClose) {
  Fixture fx;
  Rng rng(43);
  const DiffusionState state{fx.random_tensor(rng), 1};
  const DiffusionState out =
      inject_trajectory(state, fx.target, 0, 0, fx.schedule, InjectionMode::kNoised, rng);
  const double bound = 5.0 * std::sqrt(1.0 - fx.schedule.alpha_bar(1)) + 2.0 * 1e-4;
  for (int f = 0; f < 8; ++f) {
    EXPECT_NEAR(out.x(0, f, 0, kAxisX), fx.target.planar(f).x(), bound);
    EXPECT_NEAR(out.x(0, f, 0, kAxisZ), fx.target.planar(f).y(), bound);
  }
}

TEST(InjectTrajectoryTest, HeightChannelWhenPresent) {
  Fixture fx;
  Rng rng(44);
  const Trajectory tall(fx.target.points(), std::vector<double>(8, 0.9));
  const DiffusionState state{fx.random_tensor(rng), 10};
  const DiffusionState out =
      inject_trajectory(state, tall, 0, 0, fx.schedule, InjectionMode::kRaw, rng);
  for (int f = 0; f < 8; ++f) EXPECT_EQ(out.x(0, f, 0, kAxisUp), 0.9);
  expect_only_changed(state.x, out.x, root_channel_indices(fx.shape, 0, 0, true));
}

TEST(InjectTrajectoryTest, LengthMismatchIsRejected) {
  Fixture fx;
  Rng rng(45);
  const DiffusionState state{fx.random_tensor(rng), 10};
  const Trajectory short_path = generate_trajectory_condition(TrajectoryShape::kLine, 5, 1.0);
  EXPECT_THROW(inject_trajectory(state, short_path, 0, 0, fx.schedule, InjectionMode::kRaw, rng),
               ValidationError);
}

TEST(RefineX0Test, StepSizeOneLandsOnTargetAndHalfHalves) {
  Fixture fx;
  Rng rng(46);
  const MotionTensor x0 = fx.random_tensor(rng);
  PaceConfig c;
  c.grad_step_size = 1.0;
  const MotionTensor exact = refine_x0(x0, fx.target, 0, 0, c);
  EXPECT_LT(trajectory_mse(exact, fx.target, 0, 0), 1e-28);
  c.grad_step_size = 0.5;
  const MotionTensor half = refine_x0(x0, fx.target, 0, 0, c);
  for (int f = 0; f < 8; ++f) {
    const double before = x0(0, f, 0, kAxisX) - fx.target.planar(f).x();
    const double after = half(0, f, 0, kAxisX) - fx.target.planar(f).x();
    EXPECT_NEAR(after, 0.5 * before, 1e-14);
  }
  expect_only_changed(x0, half, root_channel_indices(fx.shape, 0, 0, false));
}

TEST(RefineX0Test, AlreadyOnTargetIsUnchanged) {
  Fixture fx;
  Rng rng(47);
  const std::vector<double> noise(16, 0.0);
  const MotionTensor on = inject_trajectory({fx.random_tensor(rng), 500}, fx.target, 1, 2,
                                            fx.schedule, InjectionMode::kRaw, noise)
                              .x;
  PaceConfig c;
  c.grad_step_size = 0.5;
  c.grad_steps = 3;
  EXPECT_EQ(refine_x0(on, fx.target, 1, 2, c), on);
}

TEST(RefineX0Test, EachStepStrictlyDecreasesError) {
  Fixture fx;
  Rng rng(48);
  MotionTensor x = fx.random_tensor(rng);
  PaceConfig c;
  c.grad_step_size = 0.3;
  double last = trajectory_mse(x, fx.target, 0, 0);
  for (int i = 0; i < 5; ++i) {
    x = refine_x0(x, fx.target, 0, 0, c);
    const double now = trajectory_mse(x, fx.target, 0, 0);
    EXPECT_LT(now, last);
    last = now;
  }
}

class GuidedSampleTest : public ::testing::Test {
 protected:
  GuidedSampleTest()
      : prior_(shape_, Eigen::VectorXd::Zero(shape_.size()), make_schedule(1000)) {}
  MotionShape shape_{30, 2};
  AnalyticGaussianPrior prior_;
  SkeletonSpec skeleton_ = testing::chain_skeleton(2);
  ConditionLabel label_{ScenarioKind::kMirrorWalk};
  Trajectory target_ = generate_trajectory_condition(TrajectoryShape::kLine, 30, 3.0);
};

TEST_F(GuidedSampleTest, EmptyWindowEqualsUnguided) {
  PaceConfig c;
  c.window = {0.4, 0.4};
  Rng a(51), b(51);
  EXPECT_EQ(guided_sample(prior_, label_, {target_, {}}, c, a), sample(prior_, label_, {}, b));
}

TEST_F(GuidedSampleTest, GuidanceReducesRootErrorFivefold) {
  double guided_sum = 0, plain_sum = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng a(seed), b(seed);
    const TwoAgentMotion guided = guided_sample(prior_, label_, {target_, {}}, PaceConfig{}, a);
    const TwoAgentMotion plain = sample(prior_, label_, {}, b);
    const double g = trajectory_rmse(guided.agent_a(), target_, skeleton_);
    const double p = trajectory_rmse(plain.agent_a(), target_, skeleton_);
    EXPECT_LT(g, 0.5 * p) << "seed " << seed;
    guided_sum += g;
    plain_sum += p;
  }
  EXPECT_LE(guided_sum, 0.2 * plain_sum);
}

TEST_F(GuidedSampleTest, RawInjectionAlsoTracksTarget) {
  PaceConfig c;
  c.injection_mode = InjectionMode::kRaw;
  Rng a(52), b(52);
  const TwoAgentMotion guided = guided_sample(prior_, label_, {target_, {}}, c, a);
  const TwoAgentMotion plain = sample(prior_, label_, {}, b);
  EXPECT_LT(trajectory_rmse(guided.agent_a(), target_, skeleton_),
            0.5 * trajectory_rmse(plain.agent_a(), target_, skeleton_));
}

TEST_F(GuidedSampleTest, WiderWindowThroughTheEndNeverHurts) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PaceConfig narrow, wide;
    wide.window = {0.7, 0.0};
    Rng a(seed), b(seed);
    const double rn = trajectory_rmse(
        guided_sample(prior_, label_, {target_, {}}, narrow, a).agent_a(), target_, skeleton_);
    const double rw = trajectory_rmse(
        guided_sample(prior_, label_, {target_, {}}, wide, b).agent_a(), target_, skeleton_);
    EXPECT_LE(rw, rn) << "seed " << seed;
  }
}

TEST_F(GuidedSampleTest, BothAgentsGuidedWithAuditClean) {
  const Trajectory other = generate_trajectory_condition(TrajectoryShape::kCircle, 30, 1.0);
  PaceConfig c;
  c.target_agent = TargetAgent::kBoth;
  LocalityAudit audit;
  Rng a(53), b(53);
  const TwoAgentMotion guided =
      guided_sample(prior_, label_, {target_, other}, c, a, {}, {}, 0, &audit);
  const TwoAgentMotion plain = sample(prior_, label_, {}, b);
  EXPECT_GT(audit.calls, 0);
  EXPECT_EQ(audit.violations, 0);
  EXPECT_LT(trajectory_rmse(guided.agent_a(), target_, skeleton_),
            trajectory_rmse(plain.agent_a(), target_, skeleton_));
  EXPECT_LT(trajectory_rmse(guided.agent_b(), other, skeleton_),
            trajectory_rmse(plain.agent_b(), other, skeleton_));
}

TEST_F(GuidedSampleTest, MissingTargetIsRejected) {
  PaceConfig c;
  c.target_agent = TargetAgent::kB;
  Rng a(54);
  EXPECT_THROW(guided_sample(prior_, label_, {target_, {}}, c, a), ValidationError);
}

}  // namespace
}  // namespace leadfollow
