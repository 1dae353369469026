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

#ifndef FWPD_WAYPOINT_HPP_
#define FWPD_WAYPOINT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "fwpd/geometry.hpp"
#include "fwpd/robot.hpp"

namespace fwpd
{

/// Opaque per-session identity; never shown to the operator (labels are).
using WaypointId = std::uint64_t;

enum class WaypointKind { Manipulation, Navigation };

/// Default = plannable, Warning = pre-check failed, Error = planner failed here.
enum class ColorState { Default, Warning, Error };

std::string_view to_string(WaypointKind kind);
std::string_view to_string(ColorState color);
std::optional<WaypointKind> parse_kind(std::string_view text);

struct ManipulationWaypoint
{
  WaypointId id{0};
  ArmTarget target;
  std::optional<double> gripper_command;  ///< slider value in [0, 1]
  ColorState color_state{ColorState::Default};
  bool plan_failed{false};                ///< last planning attempt failed here

  friend bool operator==(const ManipulationWaypoint &, const ManipulationWaypoint &) = default;
};

struct NavigationWaypoint
{
  WaypointId id{0};
  Pose2 pose;                             ///< floor-locked: no z, roll or pitch
  std::optional<double> height_command;   ///< torso height in torso_range
  bool collision_toggle{true};
  ColorState color_state{ColorState::Default};
  bool plan_failed{false};

  friend bool operator==(const NavigationWaypoint &, const NavigationWaypoint &) = default;
};

using Waypoint = std::variant<ManipulationWaypoint, NavigationWaypoint>;

/// Pose part of a waypoint, used for moves and duplication.
using WaypointPose = std::variant<ArmTarget, Pose2>;

WaypointKind kind_of(const Waypoint & w);
WaypointKind kind_of(const WaypointPose & p);
WaypointId id_of(const Waypoint & w);
ColorState color_of(const Waypoint & w);
WaypointPose pose_of(const Waypoint & w);

struct GripperCommand
{
  double value{0.0};
};
struct HeightCommand
{
  double value{0.0};
};
struct CollisionToggle
{
  bool enabled{true};
};
using StateCommand = std::variant<GripperCommand, HeightCommand, CollisionToggle>;

enum class ErrorCode
{
  KindMismatch,
  BadPosition,
  NotFound,
  PlacementBlocked,
  Busy,
  EmptyList,
  InvalidState,
};

std::string_view to_string(ErrorCode code);

/// Rejected operation. State is unchanged when this is thrown.
class OperationError : public std::runtime_error
{
public:
  OperationError(ErrorCode code, const std::string & message)
  : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace fwpd

#endif  // FWPD_WAYPOINT_HPP_
