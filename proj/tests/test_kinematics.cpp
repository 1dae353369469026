// Copyright 2026 The fwpd Authors
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
#include <numbers>
#include <random>

#include "fwpd/kinematics.hpp"
#include "test_support.hpp"

using namespace fwpd;
using namespace fwpd::kinematics;

namespace
{

constexpr double kPi = std::numbers::pi;

JointVector random_joints(const RobotModel & m, std::mt19937_64 & rng)
{
  JointVector q;
  for (const Interval & lim : m.joint_limits) {
    q.push_back(std::uniform_real_distribution<double>(lim.lo, lim.hi)(rng));
  }
  return q;
}

}  // namespace

TEST(Fk, StraightArmSumsLinks)
{
  const ArmTarget t = fk(RobotModel{}, {0.0, 0.0, 0.0}, 0.0);
  EXPECT_NEAR(t.d, 0.80, 1e-12);
  EXPECT_NEAR(t.z, 0.70, 1e-12);
  EXPECT_NEAR(t.pitch, 0.0, 1e-12);
}

TEST(Fk, VerticalArm)
{
  const ArmTarget t = fk(RobotModel{}, {kPi / 2.0, 0.0, 0.0}, 0.0);
  EXPECT_NEAR(t.d, 0.0, 1e-12);
  EXPECT_NEAR(t.z, 1.50, 1e-12);
  EXPECT_NEAR(t.pitch, kPi / 2.0, 1e-12);
}

// Reference values from a homogeneous-transform chain evaluated offline.
TEST(Fk, MatchesTransformChainOracle)
{
  const ArmTarget a = fk(RobotModel{}, {0.5236, -0.7854, 0.2618}, 0.0);
  EXPECT_NEAR(a.d, 0.742886377405923, 1e-12);
  EXPECT_NEAR(a.z, 0.7973544801939856, 1e-12);
  EXPECT_NEAR(a.pitch, 0.0, 1e-12);

  const ArmTarget b = fk(RobotModel{}, {1.0, -0.5, 0.3}, 0.2);
  EXPECT_NEAR(b.d, 0.5568865820230356, 1e-12);
  EXPECT_NEAR(b.z, 1.4459459198989528, 1e-12);
  EXPECT_NEAR(b.pitch, 0.8, 1e-12);
}

TEST(Fk, LipschitzInEachJoint)
{
  const RobotModel m;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const JointVector q = random_joints(m, rng);
    const ArmTarget a = fk(m, q, 0.1);
    for (std::size_t j = 0; j < q.size(); ++j) {
      JointVector p = q;
      p[j] += 1e-6;
      const ArmTarget b = fk(m, p, 0.1);
      EXPECT_LE(std::hypot(a.d - b.d, a.z - b.z), 1e-6 * m.reach() + 1e-15);
    }
  }
}

TEST(Ik, BeyondReachHasNoSolution)
{
  const RobotModel m;
  EXPECT_FALSE(ik(m, {m.reach() + 0.5, 0.7, 0.0}, 0.0, home_joints(m), 1).has_value());
}

TEST(Ik, ExactSeedIsKept)
{
  const RobotModel m;
  const auto q = ik(m, {0.80, 0.70, 0.0}, 0.0, {0.0, 0.0, 0.0}, 1);
  ASSERT_TRUE(q.has_value());
  for (double v : *q) {
    EXPECT_NEAR(v, 0.0, 1e-3);
  }
}

TEST(Ik, RoundTripOnRandomReachableTargets)
{
  const RobotModel m;
  const IkOptions opts;
  std::mt19937_64 rng(42);
  int ok = 0;
  constexpr int kTrials = 300;
  for (int i = 0; i < kTrials; ++i) {
    const double torso = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
    const ArmTarget target = fk(m, random_joints(m, rng), torso);
    const auto q = ik(m, target, torso, home_joints(m), rng());
    if (!q) {
      continue;
    }
    ++ok;
    ASSERT_TRUE(within_limits(m, *q));
    const PoseError e = pose_error(m, *q, torso, target);
    EXPECT_LE(e.position, opts.tol_pos);
    EXPECT_LE(e.angle, opts.tol_ang);
  }
  EXPECT_GE(ok, kTrials * 99 / 100);
}

TEST(Ik, SameSeedSameAnswer)
{
  const RobotModel m;
  const ArmTarget target{0.4, 0.6, -kPi / 2.0};
  const auto a = ik(m, target, 0.2, home_joints(m), 77);
  const auto b = ik(m, target, 0.2, home_joints(m), 77);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
}

TEST(ReachPrecheck, Examples)
{
  const RobotModel m;
  RobotState s = default_robot_state(m, {});
  s.torso_height = 0.0;
  EXPECT_EQ(reach_precheck(m, s, {0.0, m.shoulder_z(0.0), 0.0}), Reach::InReach);
  EXPECT_EQ(reach_precheck(m, s, {2.0, m.shoulder_z(0.0), 0.0}), Reach::OutOfReach);
  // The fully stretched arm is on the boundary, a micrometre past it is not.
  EXPECT_EQ(reach_precheck(m, s, {0.80, 0.70, 0.0}), Reach::InReach);
  EXPECT_EQ(reach_precheck(m, s, {0.80 + 1e-6, 0.70, 0.0}), Reach::OutOfReach);
  // In reach by distance, but pointing back at the shoulder puts the wrist too far out.
  const ArmTarget backwards{0.79 * m.reach(), m.shoulder_z(0.0), kPi};
  EXPECT_EQ(reach_precheck(m, s, backwards), Reach::InReach);
  EXPECT_FALSE(ik(m, backwards, 0.0, home_joints(m), 5).has_value());
}

TEST(ReachPrecheck, OutOfReachImpliesNoSolution)
{
  const RobotModel m;
  RobotState s = default_robot_state(m, {});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-1.2, 1.2);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const ArmTarget t{d(rng), m.shoulder_z(s.torso_height) + d(rng), a(rng)};
    if (reach_precheck(m, s, t) == Reach::OutOfReach) {
      EXPECT_FALSE(ik(m, t, s.torso_height, s.joints, rng()).has_value());
    }
  }
}

TEST(SliceScene, AxisAlignedBox)
{
  Scene scene = test::open_scene();
  scene.obstacles.push_back({{1.0, 2.0}, {-0.5, 0.5}, {0.0, 0.8}, "box"});
  const auto obs = slice_scene(scene, RobotModel{}, {0.0, 0.0, 0.0});
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_NEAR(obs[0].d.lo, 0.9, 1e-12);
  EXPECT_NEAR(obs[0].d.hi, 1.9, 1e-12);
  EXPECT_DOUBLE_EQ(obs[0].z.lo, 0.0);
  EXPECT_DOUBLE_EQ(obs[0].z.hi, 0.8);
}

TEST(SliceScene, OffPlaneBoxOmitted)
{
  Scene scene = test::open_scene();
  scene.obstacles.push_back({{1.0, 2.0}, {0.5, 1.0}, {0.0, 0.8}, "side"});
  EXPECT_TRUE(slice_scene(scene, RobotModel{}, {0.0, 0.0, 0.0}).empty());
}

TEST(SliceScene, DiagonalHeading)
{
  Scene scene = test::open_scene();
  scene.obstacles.push_back({{1.0, 2.0}, {1.0, 2.0}, {0.0, 0.8}, "diag"});
  const auto obs = slice_scene(scene, RobotModel{}, {0.0, 0.0, kPi / 4.0});
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_NEAR(obs[0].d.lo, std::sqrt(2.0) - 0.1, 1e-12);
  EXPECT_NEAR(obs[0].d.hi, 2.0 * std::sqrt(2.0) - 0.1, 1e-12);
}

TEST(SliceScene, AgreesWithRaySampling)
{
  const RobotModel m;
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> pos(-2.5, 2.5);
  std::uniform_real_distribution<double> size(0.1, 1.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  constexpr double kStep = 1e-3;
  constexpr double kSpan = 8.0;
  for (int trial = 0; trial < 100; ++trial) {
    Scene scene = test::open_scene(4.0);
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      const double x = pos(rng);
      const double y = pos(rng);
      scene.obstacles.push_back(
        {{x, x + size(rng)}, {y, y + size(rng)}, {0.0, size(rng)}, "b" + std::to_string(i)});
    }
    const Pose2 base{pos(rng), pos(rng), ang(rng)};
    const auto obs = slice_scene(scene, m, base);

    for (const Box & box : scene.obstacles) {
      double lo = 1e9;
      double hi = -1e9;
      for (double t = -kSpan; t <= kSpan; t += kStep) {
        const double x = base.x + t * std::cos(base.heading);
        const double y = base.y + t * std::sin(base.heading);
        if (box.x.contains(x) && box.y.contains(y)) {
          lo = std::min(lo, t);
          hi = std::max(hi, t);
        }
      }
      const auto it = std::find_if(
        obs.begin(), obs.end(), [&](const ArmPlaneObstacle & o) {return o.label == box.label;});
      if (lo > hi) {
        // The sampled ray may miss a sliver thinner than one step.
        if (it != obs.end()) {
          EXPECT_LT(it->d.width(), 2.0 * kStep) << box.label;
        }
        continue;
      }
      ASSERT_NE(it, obs.end()) << "trial " << trial << " " << box.label;
      EXPECT_NEAR(it->d.lo, lo - m.shoulder_forward_offset, kStep);
      EXPECT_NEAR(it->d.hi, hi - m.shoulder_forward_offset, kStep);
      EXPECT_EQ(it->z, box.z);
    }
  }
}

TEST(ArmCollision, NoObstaclesNeverCollides)
{
  EXPECT_FALSE(arm_collides(RobotModel{}, {0.3, -0.2, 0.1}, 0.0, {}));
}

TEST(ArmCollision, LinkThroughRectangle)
{
  const RobotModel m;
  // Straight arm at z = 0.7 runs through a block spanning d in [0.3, 0.4].
  const std::vector<ArmPlaneObstacle> obs{{{0.3, 0.4}, {0.6, 0.8}, "block"}};
  EXPECT_TRUE(arm_collides(m, {0.0, 0.0, 0.0}, 0.0, obs));
  EXPECT_FALSE(arm_collides(m, {kPi / 2.0, 0.0, 0.0}, 0.0, obs));
}

TEST(ArmCollision, AgreesWithPointSampling)
{
  const RobotModel m;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  std::uniform_real_distribution<double> z(0.0, 1.6);
  std::uniform_real_distribution<double> size(0.02, 0.5);
  constexpr int kPoints = 10000;
  const double band = m.link_radius * 1e-3;
  int compared = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const JointVector q = random_joints(m, rng);
    const double d0 = d(rng);
    const double z0 = z(rng);
    const std::vector<ArmPlaneObstacle> obs{{{d0, d0 + size(rng)}, {z0, z0 + size(rng)}, "r"}};
    const auto pts = chain_points(m, q, 0.2);
    double nearest = 1e9;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      for (int k = 0; k <= kPoints; ++k) {
        const double s = static_cast<double>(k) / kPoints;
        nearest = std::min(nearest, point_rect_distance(pts[i] + s * (pts[i + 1] - pts[i]), obs[0].rect()));
      }
    }
    if (std::abs(nearest - m.link_radius) <= band) {
      continue;
    }
    ++compared;
    EXPECT_EQ(arm_collides(m, q, 0.2, obs), nearest <= m.link_radius) << "trial " << trial;
  }
  EXPECT_GT(compared, 990);
}

TEST(ArmCollision, SweepBoundCoversMotion)
{
  const RobotModel m;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const JointVector a = random_joints(m, rng);
    const JointVector b = random_joints(m, rng);
    JointVector delta(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      delta[i] = b[i] - a[i];
    }
    const double bound = sweep_bound(m, delta);
    const auto pa = chain_points(m, a, 0.0);
    for (int k = 1; k <= 50; ++k) {
      const double s = k / 50.0;
      JointVector q(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        q[i] = a[i] + s * delta[i];
      }
      const auto pq = chain_points(m, q, 0.0);
      for (std::size_t j = 0; j < pa.size(); ++j) {
        EXPECT_LE((pq[j] - pa[j]).norm(), bound + 1e-12);
      }
    }
  }
}
