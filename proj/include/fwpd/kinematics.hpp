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

#ifndef FWPD_KINEMATICS_HPP_
#define FWPD_KINEMATICS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fwpd/robot.hpp"
#include "fwpd/scene.hpp"

namespace fwpd::kinematics
{

/// Obstacle cross-section in arm-plane coordinates (d, z).
struct ArmPlaneObstacle
{
  Interval d;
  Interval z;
  std::string label;

  [[nodiscard]] Rect rect() const { return {d, z}; }
};

struct IkOptions
{
  double tol_pos{1e-3};
  double tol_ang{1e-3};
  int restarts{20};
  int iterations{200};
  double damping{0.05};
};

enum class Reach { InReach, OutOfReach };

/// Effector pose for the given joints; the shoulder sits at d = 0.
ArmTarget fk(const RobotModel & model, const JointVector & joints, double torso_height);

/// Joint positions (d, z) from the shoulder to the effector, joint_count() + 1 points.
std::vector<Vec2> chain_points(
  const RobotModel & model, const JointVector & joints, double torso_height);

/// Position and angle error of fk(joints) against a target.
struct PoseError
{
  double position{0.0};
  double angle{0.0};
};
PoseError pose_error(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const ArmTarget & target);

/**
 * Damped least-squares IK with random restarts.
 *
 * The first attempt starts from `seed`; each restart draws a uniform
 * configuration inside the joint limits from a generator seeded with
 * `rng_seed`. Targets outside the reachable disc are rejected up front.
 * Returns std::nullopt when no attempt converges within tolerance.
 */
std::optional<JointVector> ik(
  const RobotModel & model, const ArmTarget & target, double torso_height,
  const JointVector & seed, std::uint64_t rng_seed, const IkOptions & options = {});

/// Purely geometric: is the target farther from the shoulder than the arm is long?
Reach reach_precheck(const RobotModel & model, const RobotState & state, const ArmTarget & target);

/**
 * Cuts the scene with the vertical plane through the base center along the
 * heading. Each box crossed by the heading line becomes an (d, z) rectangle
 * with d measured from the shoulder's ground projection (negative behind it).
 * z is taken relative to the scene floor.
 */
std::vector<ArmPlaneObstacle> slice_scene(
  const Scene & scene, const RobotModel & model, const Pose2 & base_pose);

/// True iff any link capsule touches any obstacle rectangle.
bool arm_collides(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const std::vector<ArmPlaneObstacle> & obstacles);

/**
 * Signed clearance: smallest link-capsule surface distance to any obstacle.
 * Non-positive exactly when arm_collides() is true. +inf without obstacles.
 */
double arm_clearance(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const std::vector<ArmPlaneObstacle> & obstacles);

/**
 * Upper bound on how far any point of the arm moves when the joints travel
 * linearly by `delta`. Used to certify straight joint-space motions.
 */
double sweep_bound(const RobotModel & model, const JointVector & delta);

}  // namespace fwpd::kinematics

#endif  // FWPD_KINEMATICS_HPP_
