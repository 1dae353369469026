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

#ifndef FWPD_MANIP_PLANNER_HPP_
#define FWPD_MANIP_PLANNER_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fwpd/kinematics.hpp"
#include "fwpd/robot.hpp"
#include "fwpd/scene.hpp"
#include "fwpd/timeline.hpp"
#include "fwpd/waypoint.hpp"

namespace fwpd::manip
{

struct ManipSegment
{
  JointVector start_joints;
  JointVector end_joints;
  std::vector<JointVector> path;          ///< dense, collision-free, path.front() == start
  std::optional<double> terminal_gripper;
};

struct ManipPlan
{
  std::vector<ManipSegment> segments;     ///< one per waypoint, in label order
  std::vector<RobotState> ghost;
};

enum class FailureReason { IkUnreachable, PlanTimeout, StartInCollision };

struct ManipFailure
{
  std::size_t label{0};
  FailureReason reason{FailureReason::IkUnreachable};
  /// Segments for labels 1..label-1; never executed.
  std::vector<ManipSegment> completed;
};

using ManipResult = std::variant<ManipPlan, ManipFailure>;

struct PlannerOptions
{
  double step_max{0.05};          ///< densified per-joint spacing (rad)
  double rrt_step{0.1};           ///< tree extension step (rad)
  std::size_t node_cap{5000};
  int shortcut_attempts{100};
  std::chrono::milliseconds segment_timeout{2000};
  int goal_attempts{8};           ///< IK solves tried per waypoint for a collision-free goal
  double ghost_dt{0.05};
  kinematics::IkOptions ik;
};

/**
 * Obstacles the arm must avoid at `base_pose`: the scene cut into the arm
 * plane plus the floor slab.
 */
std::vector<kinematics::ArmPlaneObstacle> arm_obstacles(
  const Scene & scene, const RobotModel & model, const Pose2 & base_pose);

/**
 * Certifies a straight joint-space motion: advances along the edge by the
 * current clearance divided by the sweep bound, so no configuration between
 * checks can touch an obstacle.
 */
bool motion_valid(
  const RobotModel & model, double torso_height, const JointVector & from, const JointVector & to,
  const std::vector<kinematics::ArmPlaneObstacle> & obstacles);

/**
 * Plans through the manipulation waypoints in label order with the base and
 * torso held fixed. Deterministic for a given rng_seed unless the wall-clock
 * segment timeout trips.
 */
ManipResult plan_manipulation(
  const RobotModel & model, const RobotState & state, const Scene & scene,
  const std::vector<ManipulationWaypoint> & waypoints, std::uint64_t rng_seed,
  const PlannerOptions & options = {});

/**
 * Builds the plan timeline. With `instant_gripper`, gripper commands switch in
 * zero time (preview); otherwise they take |delta| / gripper_rate seconds.
 */
Timeline manip_timeline(
  const ManipPlan & plan, const RobotModel & model, const RobotState & start, bool instant_gripper);

/// Ghost preview: states every `dt` seconds at joint_max_speed.
std::vector<RobotState> sample_ghost(
  const ManipPlan & plan, const RobotModel & model, const RobotState & start, double dt = 0.05);

std::string_view to_string(FailureReason reason);

}  // namespace fwpd::manip

#endif  // FWPD_MANIP_PLANNER_HPP_
