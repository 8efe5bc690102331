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

#include "leadfollow/error.h"
#include "leadfollow/metrics.h"
#include "leadfollow/motion.h"
#include "leadfollow/motion_io.h"
#include "test_util.h"

namespace leadfollow {
namespace {

using testing::chain_skeleton;
using testing::random_pair;

TEST(SkeletonTest, DefaultHas22JointsAnd21Bones) {
  const SkeletonSpec s = default_skeleton();
  EXPECT_EQ(s.joint_count(), 22);
  EXPECT_EQ(s.bone_count(), 21);
  EXPECT_EQ(s.root_index(), 0);
  for (const Bone& b : s.bones()) EXPECT_DOUBLE_EQ(b.radius, 0.06);
  EXPECT_EQ(default_joint_name(joint::kHead), "head");
}

TEST(SkeletonTest, RejectsBrokenTrees) {
  EXPECT_THROW(SkeletonSpec(3, {{0, 1}, {1, 5}}), ValidationError);       // index out of range
  EXPECT_THROW(SkeletonSpec(3, {{0, 1}}), ValidationError);               // too few bones
  EXPECT_THROW(SkeletonSpec(3, {{0, 1}, {0, 1}}), ValidationError);       // two parents
  EXPECT_THROW(SkeletonSpec(3, {{1, 2}, {2, 1}}), ValidationError);       // cycle off the root
  EXPECT_THROW(SkeletonSpec(2, {{0, 1, 0.0}}), ValidationError);          // zero radius
  EXPECT_NO_THROW(SkeletonSpec(3, {{0, 1}, {0, 2}}));
}

TEST(MotionSequenceTest, EnforcesInvariants) {
  EXPECT_THROW(MotionSequence(1, 1, {0, 0, 0}), ValidationError);
  EXPECT_THROW(MotionSequence(2, 1, {0, 0, 0}), ValidationError);
  EXPECT_THROW(MotionSequence(2, 1, {0, 0, 0, 0, NAN, 0}), ValidationError);
  const MotionSequence m(2, 1, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m.position(1, 0), Eigen::Vector3d(4, 5, 6));
}

TEST(TwoAgentMotionTest, RejectsMismatchedAgents) {
  const MotionSequence a(2, 1, {0, 0, 0, 0, 0, 0});
  const MotionSequence b(3, 1, {0, 0, 0, 0, 0, 0, 0, 0, 0});
  const MotionSequence c(2, 1, {0, 0, 0, 0, 0, 0}, 60.0);
  EXPECT_THROW(TwoAgentMotion(a, b), ValidationError);
  EXPECT_THROW(TwoAgentMotion(a, c), ValidationError);
}

TEST(ProjectRootTrajectoryTest, FixedRootGivesOrigins) {
  const int L = 5;
  std::vector<double> coords(L * 2 * 3, 0.0);
  for (int f = 0; f < L; ++f) coords[(f * 2 + 1) * 3 + 1] = 1.0;  // child above root
  const Trajectory t = project_root_trajectory(MotionSequence(L, 2, coords), chain_skeleton(2));
  ASSERT_EQ(t.size(), L);
  for (int f = 0; f < L; ++f) EXPECT_EQ(t.planar(f), Eigen::Vector2d(0, 0));
}

TEST(ProjectRootTrajectoryTest, LinearRootGivesStraightLine) {
  const int L = 11;
  std::vector<double> coords;
  for (int f = 0; f < L; ++f) coords.insert(coords.end(), {2.0 * f / (L - 1), 0.0, 0.0});
  const Trajectory t = project_root_trajectory(MotionSequence(L, 1, coords), chain_skeleton(1));
  EXPECT_EQ(t.planar(0), Eigen::Vector2d(0, 0));
  EXPECT_EQ(t.planar(L - 1), Eigen::Vector2d(2, 0));
  for (int f = 0; f < L; ++f) EXPECT_NEAR(t.planar(f).x(), 0.2 * f, 1e-15);
}

TEST(ProjectRootTrajectoryTest, MatchesDirectIndexing) {
  Rng rng(3);
  const MotionSequence m = testing::random_motion(9, 4, rng);
  const SkeletonSpec s(4, {{2, 0}, {2, 1}, {2, 3}}, 2);
  const Trajectory t = project_root_trajectory(m, s);
  const Trajectory h = project_root_trajectory(m, s, true);
  for (int f = 0; f < 9; ++f) {
    const size_t base = (static_cast<size_t>(f) * 4 + 2) * 3;
    EXPECT_EQ(t.planar(f).x(), m.coords()[base + 0]);
    EXPECT_EQ(t.planar(f).y(), m.coords()[base + 2]);
    EXPECT_EQ(h.height(f), m.coords()[base + 1]);
  }
  EXPECT_FALSE(t.has_height());
}

TEST(ProjectRootTrajectoryTest, RejectsJointCountMismatch) {
  Rng rng(1);
  EXPECT_THROW(project_root_trajectory(testing::random_motion(3, 3, rng), chain_skeleton(4)),
               ValidationError);
}

TEST(SwapAgentsTest, IsAnInvolution) {
  Rng rng(5);
  const TwoAgentMotion x = random_pair(6, 3, rng);
  const TwoAgentMotion y = swap_agents(x);
  EXPECT_EQ(y.agent_a(), x.agent_b());
  EXPECT_EQ(y.agent_b(), x.agent_a());
  EXPECT_EQ(swap_agents(y), x);
}

TEST(SwapAgentsTest, PenetrationCountIsSymmetric) {
  Rng rng(8);
  const SkeletonSpec s = chain_skeleton(4, 0.2);
  for (int i = 0; i < 5; ++i) {
    const TwoAgentMotion x = random_pair(12, 4, rng);
    EXPECT_EQ(penetration_frames(x, s), penetration_frames(swap_agents(x), s));
  }
}

TEST(SwapAgentsTest, DiversityIsInvariantUnderElementwiseSwap) {
  Rng rng(9);
  std::vector<TwoAgentMotion> xs, swapped;
  for (int i = 0; i < 5; ++i) {
    xs.push_back(random_pair(5, 2, rng));
    swapped.push_back(swap_agents(xs.back()));
  }
  Rng r1(1), r2(1);
  EXPECT_NEAR(diversity(xs, 0, r1), diversity(swapped, 0, r2), 1e-12);
}

TEST(ConditionLabelTest, ParsesNamesAndEmbedsOneHot) {
  for (ScenarioKind k : kAllScenarioKinds) {
    EXPECT_EQ(parse_scenario(scenario_name(k)), k);
    const Eigen::VectorXd e = ConditionLabel(k).embedding();
    ASSERT_EQ(e.size(), ConditionLabel::kEmbeddingSize);
    EXPECT_DOUBLE_EQ(e.sum(), 1.0);
    EXPECT_DOUBLE_EQ(e[static_cast<int>(k)], 1.0);
  }
  EXPECT_THROW(parse_scenario("tango"), ValidationError);
}

TEST(MotionIoTest, RoundTripIsExact) {
  Rng rng(11);
  const TwoAgentMotion x = random_pair(7, 3, rng, 5.0);
  const auto dir = testing::scratch_dir("motion_io");
  save_motion(x, dir / "m.json");
  EXPECT_EQ(load_motion(dir / "m.json"), x);
}

TEST(MotionIoTest, TruncatedFileIsAParseError) {
  Rng rng(12);
  const std::string text = motion_to_json(random_pair(4, 2, rng));
  EXPECT_THROW(motion_from_json(text.substr(0, text.size() / 2)), ParseError);
}

TEST(MotionIoTest, ErrorsNameTheOffendingField) {
  Rng rng(13);
  std::string text = motion_to_json(random_pair(3, 2, rng));
  const auto at = text.find("\"version\":1");
  ASSERT_NE(at, std::string::npos);
  std::string bad_version = text;
  bad_version.replace(at, 11, "\"version\":7");
  try {
    motion_from_json(bad_version);
    FAIL() << "version mismatch accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "version");
  }
  try {
    motion_from_json(R"({"version":1,"fps":30,"joint_count":1,"agents":[{"frames":[[[0,0,0]],[[0,0,"x"]]]},{"frames":[[[0,0,0]],[[0,0,0]]]}]})");
    FAIL() << "non-numeric coordinate accepted";
  } catch (const ParseError& e) {
    EXPECT_NE(e.field().find("agents[0].frames[1]"), std::string::npos) << e.field();
  }
}

TEST(MotionIoTest, SingleFrameFileIsAValidationError) {
  EXPECT_THROW(
      motion_from_json(R"({"version":1,"fps":30,"joint_count":1,"agents":[{"frames":[[[0,0,0]]]},{"frames":[[[0,0,0]]]}]})"),
      ValidationError);
}

TEST(TrajectoryIoTest, RoundTripWithAndWithoutHeight) {
  const Trajectory flat({{0.1, 0.2}, {1.0 / 3.0, -2.5}});
  double fps = 0.0;
  EXPECT_EQ(trajectory_from_text(trajectory_to_text(flat, 24.0), &fps), flat);
  EXPECT_DOUBLE_EQ(fps, 24.0);
  const Trajectory tall({{0.1, 0.2}, {0.3, 0.4}}, {0.9, 1.0});
  EXPECT_EQ(trajectory_from_text(trajectory_to_text(tall)), tall);
}

TEST(TrajectoryIoTest, RejectsMalformedText) {
  EXPECT_THROW(trajectory_from_text(""), ParseError);
  EXPECT_THROW(trajectory_from_text("fps=30 frames=2\n0 0\n"), ParseError);
  EXPECT_THROW(trajectory_from_text("fps=30 frames=2\n0 0\n1 q\n"), ParseError);
  EXPECT_THROW(trajectory_from_text("frames=2\n0 0\n1 1\n"), ParseError);
}

}  // namespace
}  // namespace leadfollow
