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

#include <random>

#include <Eigen/Geometry>

#include "leadfollow/capsule.h"
#include "leadfollow/error.h"
#include "leadfollow/synthetic.h"
#include "test_util.h"

namespace leadfollow {
namespace {

using Eigen::Vector3d;

TEST(PoseToCapsulesTest, OneCapsulePerBoneAtJointPositions) {
  const SkeletonSpec s = default_skeleton(0.07);
  const LabeledMotion clip = generate_scenario(ScenarioKind::kOrbit, 10, 30.0, 1);
  const std::vector<Vector3d> pose = clip.motion.agent_a().pose(4);
  const CapsuleSet caps = pose_to_capsules(pose, s);
  ASSERT_EQ(caps.size(), 21u);
  for (size_t i = 0; i < caps.size(); ++i) {
    EXPECT_EQ(caps[i].p, pose[s.bones()[i].parent]);
    EXPECT_EQ(caps[i].q, pose[s.bones()[i].child]);
    EXPECT_EQ(caps[i].radius, 0.07);
  }
  EXPECT_THROW(pose_to_capsules(std::vector<Vector3d>(5), s), ValidationError);
}

TEST(SegmentDistanceTest, KnownConfigurations) {
  // Crossing at right angles, 1 apart vertically.
  EXPECT_NEAR(segment_distance({-1, 0, 0}, {1, 0, 0}, {0, 1, -1}, {0, 1, 1}), 1.0, 1e-15);
  // Parallel, offset.
  EXPECT_NEAR(segment_distance({0, 0, 0}, {1, 0, 0}, {0.5, 0, 2}, {3, 0, 2}), 2.0, 1e-15);
  // Collinear, disjoint.
  EXPECT_NEAR(segment_distance({0, 0, 0}, {1, 0, 0}, {3, 0, 0}, {4, 0, 0}), 2.0, 1e-15);
  // Degenerate segments behave as points.
  EXPECT_NEAR(segment_distance({0, 0, 0}, {0, 0, 0}, {3, 4, 0}, {3, 4, 0}), 5.0, 1e-15);
  EXPECT_NEAR(segment_distance({0, 2, 0}, {0, 2, 0}, {-1, 0, 0}, {1, 0, 0}), 2.0, 1e-15);
  EXPECT_NEAR(point_segment_distance({2, 1, 0}, {0, 0, 0}, {1, 0, 0}), std::sqrt(2.0), 1e-15);
}

TEST(DetectConflictTest, FarApartPosesDoNotConflict) {
  const SkeletonSpec s = default_skeleton();
  const LabeledMotion clip = generate_scenario(ScenarioKind::kMirrorWalk, 4, 30.0, 2);
  std::vector<Vector3d> a = clip.motion.agent_a().pose(0);
  std::vector<Vector3d> b = a;
  for (auto& p : b) p += Vector3d(10, 0, 0);
  const ConflictResult r = detect_conflict(a, b, s);
  EXPECT_FALSE(r.conflict);
  EXPECT_TRUE(r.contacts.empty());
}

TEST(DetectConflictTest, SuperimposedPosesReportFullDepth) {
  const SkeletonSpec s = default_skeleton();
  const LabeledMotion clip = generate_scenario(ScenarioKind::kMirrorWalk, 4, 30.0, 3);
  const std::vector<Vector3d> a = clip.motion.agent_a().pose(1);
  const ConflictResult r = detect_conflict(a, a, s);
  EXPECT_TRUE(r.conflict);
  int aligned = 0;
  for (const Contact& c : r.contacts) {
    EXPECT_GT(c.depth, 0.0);
    if (c.bone_a == c.bone_b) {
      ++aligned;
      EXPECT_NEAR(c.depth, 0.12, 1e-12);
    }
  }
  EXPECT_EQ(aligned, 21);
}

TEST(DetectConflictTest, DegenerateBoneIsASphere) {
  const SkeletonSpec s = testing::chain_skeleton(2, 0.1);
  const std::vector<Vector3d> a{{0, 0, 0}, {0, 0, 0}};
  const std::vector<Vector3d> near{{0.15, 0, 0}, {0.15, 0, 0}};
  const std::vector<Vector3d> touching{{0.2, 0, 0}, {0.2, 0, 0}};
  EXPECT_TRUE(detect_conflict(a, near, s).conflict);
  EXPECT_NEAR(detect_conflict(a, near, s).contacts[0].depth, 0.05, 1e-15);
  // Exactly touching is not a conflict.
  EXPECT_FALSE(detect_conflict(a, touching, s).conflict);
}

// Closest approach of two capsule axes estimated by dense sampling of one
// axis against the exact distance to the other.
double sampled_axis_distance(const Capsule& a, const Capsule& b, int samples) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const Vector3d x = a.p + (a.q - a.p) * (static_cast<double>(i) / samples);
    const Vector3d d = b.q - b.p;
    const double len2 = d.squaredNorm();
    const double s = len2 > 0 ? std::clamp((x - b.p).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (x - (b.p + s * d)).norm());
  }
  return best;
}

TEST(DetectConflictTest, AgreesWithPointSamplingOracle) {
  const SkeletonSpec s = default_skeleton();
  Rng rng(61);
  std::uniform_real_distribution<double> offset(-0.6, 0.6);
  std::uniform_real_distribution<double> yaw(0.0, 6.283185307179586);
  std::uniform_int_distribution<int> frame(0, 59);
  int compared = 0, positives = 0;
  for (int trial = 0; compared < 200; ++trial) {
    ASSERT_LT(trial, 1000) << "too many boundary cases";
    const auto kind = kAllScenarioKinds[trial % 4];
    const LabeledMotion clip = generate_scenario(kind, 60, 30.0, 1000 + trial);
    const std::vector<Vector3d> a = clip.motion.agent_a().pose(frame(rng));
    std::vector<Vector3d> b = clip.motion.agent_b().pose(frame(rng));
    // Re-place b near a with a random heading.
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(yaw(rng), Vector3d::UnitY()).toRotationMatrix();
    const Vector3d shift = a[0] + Vector3d(offset(rng), 0, offset(rng));
    const Vector3d center = b[0];
    for (auto& p : b) p = rot * (p - center) + shift;

    const CapsuleSet ca = pose_to_capsules(a, s);
    const CapsuleSet cb = pose_to_capsules(b, s);
    bool oracle = false, ambiguous = false;
    for (const Capsule& x : ca) {
      for (const Capsule& y : cb) {
        const double reach = x.radius + y.radius;
        const double margin = sampled_axis_distance(x, y, 4000) - reach;
        // Sampling overestimates the distance by at most 0.05 mm here.
        if (std::abs(margin) <= 1e-3) ambiguous = true;
        if (margin < 0) oracle = true;
      }
    }
    if (ambiguous) continue;
    ++compared;
    positives += oracle;
    EXPECT_EQ(detect_conflict(a, b, s).conflict, oracle) << "trial " << trial;
    EXPECT_EQ(poses_overlap(ca, cb), oracle) << "trial " << trial;
  }
  // The placement range gives both outcomes in quantity.
  EXPECT_GT(positives, 40);
  EXPECT_LT(positives, 160);
}

}  // namespace
}  // namespace leadfollow
