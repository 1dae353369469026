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

#include "fwpd/robot.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fwpd
{

namespace
{

void require(bool ok, const std::string & what)
{
  if (!ok) {
    throw std::invalid_argument("robot model: " + what);
  }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void RobotModel::validate() const
{
  require(positive(base_radius), "base_radius must be > 0");
  require(positive(torso_base_height), "torso_base_height must be > 0");
  require(!torso_range.empty() && torso_range.lo >= 0.0, "torso_range must be a nonempty interval >= 0");
  require(positive(shoulder_forward_offset), "shoulder_forward_offset must be > 0");
  require(!link_lengths.empty(), "link_lengths must not be empty");
  for (std::size_t i = 0; i < link_lengths.size(); ++i) {
    require(positive(link_lengths[i]), "link_lengths[" + std::to_string(i) + "] must be > 0");
  }
  require(
    joint_limits.size() == link_lengths.size(),
    "joint_limits must have one interval per link");
  for (std::size_t i = 0; i < joint_limits.size(); ++i) {
    require(!joint_limits[i].empty(), "joint_limits[" + std::to_string(i) + "] is empty");
  }
  require(positive(link_radius), "link_radius must be > 0");
  require(positive(gripper_max_opening), "gripper_max_opening must be > 0");
  require(!head_pan_limits.empty(), "head_pan_limits is empty");
  require(!head_tilt_limits.empty(), "head_tilt_limits is empty");
  require(positive(head_offset_z), "head_offset_z must be > 0");
  require(positive(base_max_speed), "base_max_speed must be > 0");
  require(positive(base_max_turn_rate), "base_max_turn_rate must be > 0");
  require(positive(joint_max_speed), "joint_max_speed must be > 0");
  require(positive(torso_max_speed), "torso_max_speed must be > 0");
  require(positive(gripper_rate), "gripper_rate must be > 0");
  require(std::isfinite(reach()), "reach must be finite");
}

double RobotModel::reach() const
{
  return std::accumulate(link_lengths.begin(), link_lengths.end(), 0.0);
}

JointVector home_joints(const RobotModel & model)
{
  // Upper arm raised, forearm folded back down, hand level.
  JointVector q(model.joint_count(), 0.0);
  const JointVector tucked{1.5, -2.8, 1.3};
  for (std::size_t i = 0; i < q.size() && i < tucked.size(); ++i) {
    q[i] = model.joint_limits[i].clamp(tucked[i]);
  }
  return q;
}

RobotState default_robot_state(const RobotModel & model, const Pose2 & pose)
{
  RobotState s;
  s.base_pose = pose;
  s.torso_height = model.torso_range.clamp(0.2);
  s.joints = home_joints(model);
  s.gripper_aperture = 1.0;
  s.head_pan = model.head_pan_limits.clamp(0.0);
  s.head_tilt = model.head_tilt_limits.clamp(0.0);
  return s;
}

RobotState clamp_state(const RobotModel & model, RobotState state)
{
  state.torso_height = model.torso_range.clamp(state.torso_height);
  state.joints.resize(model.joint_count(), 0.0);
  for (std::size_t i = 0; i < state.joints.size(); ++i) {
    state.joints[i] = model.joint_limits[i].clamp(state.joints[i]);
  }
  state.gripper_aperture = std::clamp(state.gripper_aperture, 0.0, 1.0);
  state.head_pan = model.head_pan_limits.clamp(state.head_pan);
  state.head_tilt = model.head_tilt_limits.clamp(state.head_tilt);
  return state;
}

bool within_limits(const RobotModel & model, const JointVector & joints)
{
  if (joints.size() != model.joint_count()) {
    return false;
  }
  for (std::size_t i = 0; i < joints.size(); ++i) {
    if (!model.joint_limits[i].contains(joints[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace fwpd
