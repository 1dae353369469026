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

#include "fwpd/nav_planner.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

namespace fwpd::nav
{

std::optional<Cell> OccupancyGrid::cell_of(Vec2 p) const
{
  const Cell c{
    static_cast<int>(std::floor((p.x - origin.x) / resolution)),
    static_cast<int>(std::floor((p.y - origin.y) / resolution))};
  if (!in_grid(c)) {
    return std::nullopt;
  }
  return c;
}

bool blocks_base(const Box & box, const Scene & scene, const RobotModel & model)
{
  return box.z.intersects({scene.floor_z, scene.floor_z + model.max_height()});
}

OccupancyGrid rasterize(const Scene & scene, const RobotModel & model, double resolution)
{
  OccupancyGrid grid;
  grid.resolution = resolution;
  grid.origin = {scene.bounds.u.lo, scene.bounds.v.lo};
  grid.width = std::max(1, static_cast<int>(std::ceil(scene.bounds.u.width() / resolution - 1e-9)));
  grid.height = std::max(1, static_cast<int>(std::ceil(scene.bounds.v.width() / resolution - 1e-9)));
  grid.inflation = model.base_radius;
  grid.cells.assign(static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height), 0);

  std::vector<Rect> blocking;
  for (const Box & b : scene.obstacles) {
    if (blocks_base(b, scene, model)) {
      blocking.push_back(b.footprint());
    }
  }
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      const Cell c{x, y};
      const Vec2 p = grid.center(c);
      bool occ = !scene.bounds.contains(p);
      for (std::size_t i = 0; !occ && i < blocking.size(); ++i) {
        occ = point_rect_distance(p, blocking[i]) <= model.base_radius;
      }
      grid.cells[grid.index(c)] = occ ? 1 : 0;
    }
  }
  return grid;
}

namespace
{

double octile(Cell a, Cell b)
{
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  return std::max(dx, dy) - std::min(dx, dy) + std::sqrt(2.0) * std::min(dx, dy);
}

constexpr std::array<std::array<int, 2>, 8> kMoves{{
  {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

}  // namespace

std::optional<GridPath> astar(const OccupancyGrid & grid, Cell start, Cell goal)
{
  if (grid.occupied(start) || grid.occupied(goal)) {
    return std::nullopt;
  }
  const std::size_t n = grid.cells.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<PathCost> g(n);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint8_t> closed(n, 0);
  std::vector<std::size_t> parent(n, none);

  // (f, h, index): ties prefer nodes nearer the goal, then lower index.
  using Entry = std::tuple<double, double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = grid.index(start);
  const std::size_t goal_index = grid.index(goal);
  seen[s] = 1;
  open.emplace(octile(start, goal), octile(start, goal), s);

  const auto cell_at = [&](std::size_t i) {
      return Cell{static_cast<int>(i % static_cast<std::size_t>(grid.width)),
        static_cast<int>(i / static_cast<std::size_t>(grid.width))};
    };

  while (!open.empty()) {
    const auto [f, h, cur] = open.top();
    open.pop();
    if (closed[cur]) {
      continue;
    }
    closed[cur] = 1;
    if (cur == goal_index) {
      GridPath path;
      path.cost = g[cur];
      for (std::size_t i = cur; i != none; i = parent[i]) {
        path.cells.push_back(cell_at(i));
      }
      std::reverse(path.cells.begin(), path.cells.end());
      return path;
    }
    const Cell c = cell_at(cur);
    for (const auto & mv : kMoves) {
      const Cell nb{c.x + mv[0], c.y + mv[1]};
      if (grid.occupied(nb)) {
        continue;
      }
      const bool diagonal = mv[0] != 0 && mv[1] != 0;
      if (diagonal && (grid.occupied({c.x + mv[0], c.y}) || grid.occupied({c.x, c.y + mv[1]}))) {
        continue;
      }
      const std::size_t ni = grid.index(nb);
      if (closed[ni]) {
        continue;
      }
      PathCost cand = g[cur];
      (diagonal ? cand.diagonal : cand.straight) += 1;
      if (!seen[ni] || cand.value() < g[ni].value()) {
        seen[ni] = 1;
        g[ni] = cand;
        parent[ni] = cur;
        const double hn = octile(nb, goal);
        open.emplace(cand.value() + hn, hn, ni);
      }
    }
  }
  return std::nullopt;
}

Placement placement_check(const Scene & scene, const RobotModel & model, const Pose2 & pose)
{
  for (const Box & b : scene.obstacles) {
    if (blocks_base(b, scene, model) &&
      point_rect_distance(pose.position(), b.footprint()) <= model.base_radius)
    {
      return Placement::Colliding;
    }
  }
  return Placement::Free;
}

namespace
{

// Cell centers along the path with diagonal midpoints, bracketed by the exact
// start and goal positions. Consecutive points are at most one cell apart.
std::vector<Vec2> path_points(const OccupancyGrid & grid, const GridPath & path, Vec2 from, Vec2 to)
{
  std::vector<Vec2> pts{from};
  const auto push = [&pts](Vec2 p) {
      if (!(pts.back() == p)) {
        pts.push_back(p);
      }
    };
  const std::size_t n = path.cells.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 c = grid.center(path.cells[i]);
    if (i > 0 && path.cells[i].x != path.cells[i - 1].x && path.cells[i].y != path.cells[i - 1].y) {
      push(0.5 * (grid.center(path.cells[i - 1]) + c));
    }
    // The exact start and goal already lie in the first and last cells;
    // visiting those centers would add a back-and-forth turn.
    if (n < 2 || (i != 0 && i + 1 != n)) {
      push(c);
    }
  }
  push(to);
  return pts;
}

std::vector<Pose2> to_poses(const std::vector<Vec2> & pts, const Pose2 & start, const Pose2 & goal)
{
  std::vector<Pose2> poses{start};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec2 d = pts[i] - pts[i - 1];
    poses.push_back({pts[i].x, pts[i].y, std::atan2(d.y, d.x)});
  }
  // The last point is the goal position; finish with an in-place turn.
  if (!(poses.back() == goal)) {
    poses.push_back(goal);
  }
  return poses;
}

}  // namespace

NavResult plan_navigation(
  const Scene & scene, const RobotModel & model, const RobotState & state,
  const std::vector<NavigationWaypoint> & waypoints, const NavOptions & options)
{
  const OccupancyGrid grid = rasterize(scene, model, options.resolution);
  NavPlan plan;
  Pose2 from = state.base_pose;

  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    const std::size_t label = k + 1;
    const Pose2 & goal = waypoints[k].pose;
    NavSegment seg;
    seg.terminal_height = waypoints[k].height_command;

    if (from == goal) {
      seg.poses = {from};
    } else if (from.x == goal.x && from.y == goal.y) {
      seg.poses = {from, goal};
    } else {
      const auto sc = grid.cell_of(from.position());
      const auto gc = grid.cell_of(goal.position());
      if (!sc || !gc) {
        return NavFailure{label, NavFailureReason::NoPath};
      }
      const auto path = astar(grid, *sc, *gc);
      if (!path) {
        return NavFailure{label, NavFailureReason::NoPath};
      }
      seg.poses = to_poses(path_points(grid, *path, from.position(), goal.position()), from, goal);
    }

    for (const Pose2 & p : seg.poses) {
      if (!scene.bounds.contains(p.position()) ||
        placement_check(scene, model, p) != Placement::Free)
      {
        return NavFailure{label, NavFailureReason::PlacementViolation};
      }
    }
    from = goal;
    plan.segments.push_back(std::move(seg));
  }
  plan.path_markers = path_markers(plan.segments, options.marker_spacing);
  return plan;
}

std::vector<Vec2> path_markers(const std::vector<NavSegment> & segments, double spacing)
{
  std::vector<Vec2> markers;
  double since_last = 0.0;
  std::optional<Vec2> prev;
  for (const NavSegment & seg : segments) {
    for (const Pose2 & p : seg.poses) {
      const Vec2 pos = p.position();
      if (!prev) {
        markers.push_back(pos);
      } else {
        since_last += (pos - *prev).norm();
        if (since_last >= spacing) {
          markers.push_back(pos);
          since_last = 0.0;
        }
      }
      prev = pos;
    }
  }
  if (prev && !(markers.back() == *prev)) {
    markers.push_back(*prev);
  }
  return markers;
}

Timeline nav_timeline(const NavPlan & plan, const RobotModel & model, const RobotState & start)
{
  Timeline tl(start);
  RobotState cur = start;
  for (std::size_t k = 0; k < plan.segments.size(); ++k) {
    const std::size_t label = k + 1;
    const NavSegment & seg = plan.segments[k];
    tl.mark(MarkKind::SegmentStarted, label);
    for (std::size_t i = 1; i < seg.poses.size(); ++i) {
      const Pose2 & a = seg.poses[i - 1];
      const Pose2 & b = seg.poses[i];
      const double travel = std::hypot(b.x - a.x, b.y - a.y) / model.base_max_speed;
      const double turn = std::abs(wrap_angle(b.heading - a.heading)) / model.base_max_turn_rate;
      cur.base_pose = b;
      tl.append(std::max(travel, turn), cur);
    }
    tl.mark(MarkKind::WaypointReached, label);
    if (seg.terminal_height) {
      const double target = model.torso_range.clamp(*seg.terminal_height);
      const double duration = std::abs(target - cur.torso_height) / model.torso_max_speed;
      cur.torso_height = target;
      tl.append(duration, cur);
      tl.mark(MarkKind::StateCommandApplied, label);
    }
  }
  return tl;
}

std::vector<RobotState> sample_ghost(
  const NavPlan & plan, const RobotModel & model, const RobotState & start, double dt)
{
  return nav_timeline(plan, model, start).sample(dt);
}

std::string_view to_string(NavFailureReason reason)
{
  return reason == NavFailureReason::NoPath ? "no_path" : "placement_violation";
}

}  // namespace fwpd::nav
