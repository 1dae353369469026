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

#include "fwpd/waypoint.hpp"

namespace fwpd
{

std::string_view to_string(WaypointKind kind)
{
  return kind == WaypointKind::Manipulation ? "manipulation" : "navigation";
}

std::string_view to_string(ColorState color)
{
  switch (color) {
    case ColorState::Default: return "default";
    case ColorState::Warning: return "warning";
    case ColorState::Error: return "error";
  }
  return "default";
}

std::optional<WaypointKind> parse_kind(std::string_view text)
{
  if (text == "manipulation") {
    return WaypointKind::Manipulation;
  }
  if (text == "navigation") {
    return WaypointKind::Navigation;
  }
  return std::nullopt;
}

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::KindMismatch: return "kind_mismatch";
    case ErrorCode::BadPosition: return "bad_position";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::PlacementBlocked: return "placement_blocked";
    case ErrorCode::Busy: return "busy";
    case ErrorCode::EmptyList: return "empty_list";
    case ErrorCode::InvalidState: return "invalid_state";
  }
  return "invalid_state";
}

WaypointKind kind_of(const Waypoint & w)
{
  return std::holds_alternative<ManipulationWaypoint>(w) ? WaypointKind::Manipulation
                                                         : WaypointKind::Navigation;
}

WaypointKind kind_of(const WaypointPose & p)
{
  return std::holds_alternative<ArmTarget>(p) ? WaypointKind::Manipulation
                                              : WaypointKind::Navigation;
}

WaypointId id_of(const Waypoint & w)
{
  return std::visit([](const auto & v) { return v.id; }, w);
}

ColorState color_of(const Waypoint & w)
{
  return std::visit([](const auto & v) { return v.color_state; }, w);
}

WaypointPose pose_of(const Waypoint & w)
{
  if (const auto * m = std::get_if<ManipulationWaypoint>(&w)) {
    return m->target;
  }
  return std::get<NavigationWaypoint>(w).pose;
}

}  // namespace fwpd
