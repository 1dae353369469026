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

#ifndef FWPD_ROBOT_HPP_
#define FWPD_ROBOT_HPP_

#include <numbers>
#include <vector>

#include "fwpd/geometry.hpp"

namespace fwpd
{

/// One angle (rad) per arm joint, ordered shoulder to effector.
using JointVector = std::vector<double>;

/**
 * @brief Kinematic description of the simulated mobile manipulator.
 *
 * The arm is a planar revolute chain living in the vertical plane through the
 * base center along the base heading. Heights are measured from the floor the
 * robot stands on.
 */
struct RobotModel
{
  double base_radius{0.30};
  double torso_base_height{0.70};      ///< shoulder mount z with the torso fully retracted
  Interval torso_range{0.0, 0.40};
  double shoulder_forward_offset{0.10};
  std::vector<double> link_lengths{0.35, 0.30, 0.15};
  std::vector<Interval> joint_limits{
    {-170.0 * std::numbers::pi / 180.0, 170.0 * std::numbers::pi / 180.0},
    {-170.0 * std::numbers::pi / 180.0, 170.0 * std::numbers::pi / 180.0},
    {-170.0 * std::numbers::pi / 180.0, 170.0 * std::numbers::pi / 180.0}};
  double link_radius{0.03};
  double gripper_max_opening{0.10};
  Interval head_pan_limits{-std::numbers::pi / 2.0, std::numbers::pi / 2.0};
  Interval head_tilt_limits{-std::numbers::pi / 4.0, std::numbers::pi / 2.0};
  double head_offset_z{0.40};          ///< head pivot above the shoulder mount
  double base_max_speed{0.50};
  double base_max_turn_rate{1.00};
  double joint_max_speed{1.00};
  double torso_max_speed{0.10};
  double gripper_rate{1.00};           ///< aperture fraction per second

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  [[nodiscard]] std::size_t joint_count() const { return link_lengths.size(); }
  [[nodiscard]] double reach() const;
  [[nodiscard]] double shoulder_z(double torso_height) const
  {
    return torso_base_height + torso_height;
  }
  [[nodiscard]] double head_z(double torso_height) const
  {
    return shoulder_z(torso_height) + head_offset_z;
  }
  /// Tallest extent of the robot, torso fully raised.
  [[nodiscard]] double max_height() const { return head_z(torso_range.hi); }
  /// Physical finger opening for a slider value in [0, 1].
  [[nodiscard]] double gripper_opening(double fraction) const
  {
    return fraction * gripper_max_opening;
  }
};

/// Live configuration of the robot. Values stay inside the model intervals.
struct RobotState
{
  Pose2 base_pose;
  double torso_height{0.0};
  JointVector joints;
  double gripper_aperture{0.0};
  double head_pan{0.0};
  double head_tilt{0.0};

  friend bool operator==(const RobotState &, const RobotState &) = default;
};

/// Effector goal in arm-plane coordinates.
struct ArmTarget
{
  double d{0.0};       ///< forward distance from the shoulder
  double z{0.0};       ///< height above the floor
  double pitch{0.0};

  friend bool operator==(const ArmTarget &, const ArmTarget &) = default;
};

/// Tucked arm configuration used for new robots.
JointVector home_joints(const RobotModel & model);

/// Robot at `pose` with the torso at 0.2 m (clamped), arm tucked, gripper open.
RobotState default_robot_state(const RobotModel & model, const Pose2 & pose);

/// Clamps every field into the model's intervals.
RobotState clamp_state(const RobotModel & model, RobotState state);

[[nodiscard]] bool within_limits(const RobotModel & model, const JointVector & joints);

}  // namespace fwpd

#endif  // FWPD_ROBOT_HPP_
