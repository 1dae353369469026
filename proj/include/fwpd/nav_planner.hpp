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

#ifndef FWPD_NAV_PLANNER_HPP_
#define FWPD_NAV_PLANNER_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fwpd/robot.hpp"
#include "fwpd/scene.hpp"
#include "fwpd/timeline.hpp"
#include "fwpd/waypoint.hpp"

namespace fwpd::nav
{

struct Cell
{
  int x{0};
  int y{0};

  friend bool operator==(const Cell &, const Cell &) = default;
};

/// Boolean occupancy over the scene bounds, obstacles inflated by the base radius.
struct OccupancyGrid
{
  double resolution{0.05};
  Vec2 origin;
  int width{0};
  int height{0};
  double inflation{0.0};
  std::vector<std::uint8_t> cells;  ///< row-major, 1 = occupied

  [[nodiscard]] bool in_grid(Cell c) const
  {
    return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;
  }
  [[nodiscard]] std::size_t index(Cell c) const
  {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(c.x);
  }
  /// Cells outside the grid count as occupied.
  [[nodiscard]] bool occupied(Cell c) const { return !in_grid(c) || cells[index(c)] != 0; }
  [[nodiscard]] Vec2 center(Cell c) const
  {
    return {origin.x + (c.x + 0.5) * resolution, origin.y + (c.y + 0.5) * resolution};
  }
  [[nodiscard]] std::optional<Cell> cell_of(Vec2 p) const;
};

/// Exact path cost: `straight` unit moves plus `diagonal` sqrt(2) moves.
struct PathCost
{
  std::int64_t straight{0};
  std::int64_t diagonal{0};

  [[nodiscard]] double value() const
  {
    return static_cast<double>(straight) + static_cast<double>(diagonal) * std::sqrt(2.0);
  }
  friend bool operator==(const PathCost &, const PathCost &) = default;
};

struct GridPath
{
  std::vector<Cell> cells;
  PathCost cost;
};

enum class Placement { Free, Colliding };

/// Whether a box's height band can touch the robot standing on the floor.
bool blocks_base(const Box & box, const Scene & scene, const RobotModel & model);

/**
 * A cell is occupied iff its center lies within base_radius of a blocking
 * box footprint, or outside the scene bounds.
 */
OccupancyGrid rasterize(const Scene & scene, const RobotModel & model, double resolution = 0.05);

/**
 * 8-connected A* with the octile heuristic. Diagonal moves require both
 * adjacent cardinal cells to be free. Returns std::nullopt when the goal is
 * unreachable or either endpoint is occupied.
 */
std::optional<GridPath> astar(const OccupancyGrid & grid, Cell start, Cell goal);

/// Exact disc-vs-rectangle test of the base footprint at `pose`.
Placement placement_check(const Scene & scene, const RobotModel & model, const Pose2 & pose);

struct NavSegment
{
  std::vector<Pose2> poses;
  std::optional<double> terminal_height;
};

struct NavPlan
{
  std::vector<NavSegment> segments;
  std::vector<Vec2> path_markers;   ///< decimated for display
};

enum class NavFailureReason { NoPath, PlacementViolation };

struct NavFailure
{
  std::size_t label{0};  ///< 1-based label of the waypoint that could not be reached
  NavFailureReason reason{NavFailureReason::NoPath};
};

struct NavOptions
{
  double resolution{0.05};
  double marker_spacing{0.25};
};

using NavResult = std::variant<NavPlan, NavFailure>;

/**
 * Routes the base through the waypoints in label order. Each segment starts
 * where the previous one ended (the live pose for the first), follows grid
 * cell centers, and finishes with an in-place turn to the waypoint heading.
 * Every pose is re-checked with placement_check().
 */
NavResult plan_navigation(
  const Scene & scene, const RobotModel & model, const RobotState & state,
  const std::vector<NavigationWaypoint> & waypoints, const NavOptions & options = {});

/// Markers roughly `spacing` apart along the poses, first and last included.
std::vector<Vec2> path_markers(const std::vector<NavSegment> & segments, double spacing);

/**
 * Time-parameterizes a plan at base speed and turn rate. Height commands run
 * after arrival at torso speed.
 */
Timeline nav_timeline(const NavPlan & plan, const RobotModel & model, const RobotState & start);

/// Ghost preview of a navigation plan, one state every `dt` seconds.
std::vector<RobotState> sample_ghost(
  const NavPlan & plan, const RobotModel & model, const RobotState & start, double dt = 0.05);

std::string_view to_string(NavFailureReason reason);

}  // namespace fwpd::nav

#endif  // FWPD_NAV_PLANNER_HPP_
