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
#include <queue>
#include <random>

#include "fwpd/nav_planner.hpp"
#include "test_support.hpp"

using namespace fwpd;
using namespace fwpd::nav;

namespace
{

OccupancyGrid blank_grid(int w, int h)
{
  OccupancyGrid g;
  g.resolution = 1.0;
  g.width = w;
  g.height = h;
  g.cells.assign(static_cast<std::size_t>(w * h), 0);
  return g;
}

/// Plain Dijkstra over the same 8-connected moves (no corner cutting).
std::optional<double> dijkstra(const OccupancyGrid & g, Cell s, Cell t)
{
  std::vector<double> dist(g.cells.size(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[g.index(s)] = 0.0;
  pq.push({0.0, g.index(s)});
  while (!pq.empty()) {
    const auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) {
      continue;
    }
    const Cell c{static_cast<int>(i % g.width), static_cast<int>(i / g.width)};
    if (c == t) {
      return d;
    }
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) {
          continue;
        }
        const Cell n{c.x + dx, c.y + dy};
        if (g.occupied(n)) {
          continue;
        }
        if (dx != 0 && dy != 0 && (g.occupied({c.x + dx, c.y}) || g.occupied({c.x, c.y + dy}))) {
          continue;
        }
        const double nd = d + ((dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0);
        if (nd < dist[g.index(n)]) {
          dist[g.index(n)] = nd;
          pq.push({nd, g.index(n)});
        }
      }
    }
  }
  return std::nullopt;
}

NavigationWaypoint waypoint(double x, double y, double heading = 0.0)
{
  NavigationWaypoint w;
  w.pose = {x, y, heading};
  return w;
}

}  // namespace

TEST(Rasterize, EmptySceneAllFree)
{
  const auto g = rasterize(test::open_scene(1.0), RobotModel{}, 0.05);
  EXPECT_EQ(g.width, 40);
  EXPECT_EQ(g.height, 40);
  EXPECT_TRUE(std::all_of(g.cells.begin(), g.cells.end(), [](auto c) {return c == 0;}));
}

TEST(Rasterize, BoxCenterOccupied)
{
  Scene s = test::open_scene(2.0);
  s.obstacles.push_back({{0.5, 1.0}, {0.5, 1.0}, {0.0, 0.7}, "box"});
  const auto g = rasterize(s, RobotModel{}, 0.05);
  EXPECT_TRUE(g.occupied(*g.cell_of({0.75, 0.75})));
  EXPECT_FALSE(g.occupied(*g.cell_of({-1.0, -1.0})));
}

TEST(Rasterize, OverheadBoxDoesNotBlockBase)
{
  Scene s = test::open_scene(2.0);
  const RobotModel m;
  s.obstacles.push_back({{0.5, 1.0}, {0.5, 1.0}, {m.max_height() + 0.1, 3.0}, "shelf"});
  const auto g = rasterize(s, m, 0.05);
  EXPECT_FALSE(g.occupied(*g.cell_of({0.75, 0.75})));
}

TEST(Rasterize, AgreesWithDistanceOracle)
{
  const Scene s = test::arena();
  const RobotModel m;
  const auto g = rasterize(s, m, 0.05);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const Cell c{static_cast<int>(rng() % g.width), static_cast<int>(rng() % g.height)};
    const Vec2 p = g.center(c);
    bool expect = false;
    for (const Box & b : s.obstacles) {
      const double dx = std::max({b.x.lo - p.x, 0.0, p.x - b.x.hi});
      const double dy = std::max({b.y.lo - p.y, 0.0, p.y - b.y.hi});
      expect = expect || std::hypot(dx, dy) <= m.base_radius;
    }
    EXPECT_EQ(g.occupied(c), expect) << c.x << "," << c.y;
  }
}

TEST(AStar, StartEqualsGoal)
{
  const auto g = blank_grid(5, 5);
  const auto p = astar(g, {2, 2}, {2, 2});
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->cells.size(), 1u);
  EXPECT_EQ(p->cost, (PathCost{0, 0}));
}

TEST(AStar, PureDiagonal)
{
  const auto g = blank_grid(10, 10);
  const auto p = astar(g, {0, 0}, {9, 9});
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->cost, (PathCost{0, 9}));
  EXPECT_DOUBLE_EQ(p->cost.value(), 9.0 * std::sqrt(2.0));
}

TEST(AStar, BlockedGoalHasNoPath)
{
  auto g = blank_grid(6, 6);
  for (int y = 0; y < 6; ++y) {
    g.cells[g.index({3, y})] = 1;
  }
  EXPECT_FALSE(astar(g, {0, 0}, {5, 5}).has_value());
}

TEST(AStar, MatchesDijkstraOnRandomGrids)
{
  std::mt19937_64 rng(123);
  int solvable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto g = blank_grid(32, 32);
    for (auto & c : g.cells) {
      c = (rng() % 100) < 20 ? 1 : 0;
    }
    const Cell s{0, 0};
    const Cell t{31, 31};
    g.cells[g.index(s)] = 0;
    g.cells[g.index(t)] = 0;
    const auto oracle = dijkstra(g, s, t);
    const auto path = astar(g, s, t);
    ASSERT_EQ(oracle.has_value(), path.has_value()) << "trial " << trial;
    if (!path) {
      continue;
    }
    ++solvable;
    EXPECT_NEAR(path->cost.value(), *oracle, 1e-9);
    // The path itself is a legal move sequence with the reported cost.
    PathCost walked;
    for (std::size_t i = 1; i < path->cells.size(); ++i) {
      const int dx = std::abs(path->cells[i].x - path->cells[i - 1].x);
      const int dy = std::abs(path->cells[i].y - path->cells[i - 1].y);
      ASSERT_LE(std::max(dx, dy), 1);
      ASSERT_FALSE(g.occupied(path->cells[i]));
      (dx && dy ? walked.diagonal : walked.straight) += 1;
    }
    EXPECT_EQ(walked, path->cost);
  }
  EXPECT_GT(solvable, 50);
}

TEST(Placement, DiscInsideTableCollides)
{
  EXPECT_EQ(placement_check(test::arena(), RobotModel{}, {1.5, 0.0, 0.0}), Placement::Colliding);
  EXPECT_EQ(placement_check(test::arena(), RobotModel{}, {0.0, 0.0, 0.0}), Placement::Free);
}

TEST(Placement, BoundaryAtBaseRadius)
{
  const RobotModel m;
  const Scene s = test::arena();
  // table_1 near edge is x = 1.2.
  EXPECT_EQ(placement_check(s, m, {1.2 - m.base_radius + 1e-6, 0.0, 0.0}), Placement::Colliding);
  EXPECT_EQ(placement_check(s, m, {1.2 - m.base_radius - 1e-6, 0.0, 0.0}), Placement::Free);
  // Corner of table_1 at (1.2, 0.6): diagonal approach.
  const double r = m.base_radius;
  const double c = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(
    placement_check(s, m, {1.2 - (r - 1e-6) * c, 0.6 + (r - 1e-6) * c, 0.0}), Placement::Colliding);
  EXPECT_EQ(
    placement_check(s, m, {1.2 - (r + 1e-6) * c, 0.6 + (r + 1e-6) * c, 0.0}), Placement::Free);
}

TEST(Placement, TranslationInvariant)
{
  const RobotModel m;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.9, 2.9);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  const Scene base = test::arena();
  for (int i = 0; i < 200; ++i) {
    const double tx = shift(rng);
    const double ty = shift(rng);
    Scene moved = base;
    moved.bounds = {{base.bounds.u.lo + tx, base.bounds.u.hi + tx},
      {base.bounds.v.lo + ty, base.bounds.v.hi + ty}};
    for (Box & b : moved.obstacles) {
      b.x = {b.x.lo + tx, b.x.hi + tx};
      b.y = {b.y.lo + ty, b.y.hi + ty};
    }
    const Pose2 p{u(rng), u(rng), 0.0};
    // Stay away from the exact boundary where rounding of the shift decides.
    double margin = 1e9;
    for (const Box & b : base.obstacles) {
      margin = std::min(margin, std::abs(point_rect_distance(p.position(), b.footprint()) - m.base_radius));
    }
    if (margin < 1e-9) {
      continue;
    }
    EXPECT_EQ(placement_check(base, m, p), placement_check(moved, m, {p.x + tx, p.y + ty, 0.0}));
  }
}

TEST(PlanNavigation, WaypointAtCurrentPose)
{
  const Scene s = test::arena();
  const RobotModel m;
  const RobotState st = default_robot_state(m, s.robot_start());
  const auto r = plan_navigation(s, m, st, {waypoint(0.0, 0.0, 0.0)});
  ASSERT_TRUE(std::holds_alternative<NavPlan>(r));
  const auto & plan = std::get<NavPlan>(r);
  ASSERT_EQ(plan.segments.size(), 1u);
  EXPECT_EQ(plan.segments[0].poses.size(), 1u);
  EXPECT_DOUBLE_EQ(nav_timeline(plan, m, st).duration(), 0.0);
}

TEST(PlanNavigation, WalledOffGoalFails)
{
  Scene s = test::open_scene(3.0);
  // A closed pen around (2, 2).
  s.obstacles = {
    {{1.0, 3.0}, {1.0, 1.1}, {0.0, 1.0}, "s"}, {{1.0, 3.0}, {2.9, 3.0}, {0.0, 1.0}, "n"},
    {{1.0, 1.1}, {1.0, 3.0}, {0.0, 1.0}, "w"}, {{2.9, 3.0}, {1.0, 3.0}, {0.0, 1.0}, "e"}};
  const RobotModel m;
  const RobotState st = default_robot_state(m, {-1.0, -1.0, 0.0});
  const auto r = plan_navigation(s, m, st, {waypoint(2.0, 2.0)});
  ASSERT_TRUE(std::holds_alternative<NavFailure>(r));
  EXPECT_EQ(std::get<NavFailure>(r).label, 1u);
  EXPECT_EQ(std::get<NavFailure>(r).reason, NavFailureReason::NoPath);
}

TEST(PlanNavigation, FailureReportsLabelOfBadWaypoint)
{
  const Scene s = test::arena();
  const RobotModel m;
  const RobotState st = default_robot_state(m, s.robot_start());
  const auto r = plan_navigation(s, m, st, {waypoint(0.0, -0.8), waypoint(1.5, 0.0)});
  ASSERT_TRUE(std::holds_alternative<NavFailure>(r));
  EXPECT_EQ(std::get<NavFailure>(r).label, 2u);
}

TEST(PlanNavigation, RouteAroundTablesStaysFree)
{
  const Scene s = test::arena();
  const RobotModel m;
  const RobotState st = default_robot_state(m, s.robot_start());
  const auto r = plan_navigation(
    s, m, st, {waypoint(2.3, 0.0, 1.0), waypoint(-2.3, 0.2, -2.0), waypoint(-1.4, -1.2, -1.5)});
  ASSERT_TRUE(std::holds_alternative<NavPlan>(r));
  const auto & plan = std::get<NavPlan>(r);
  ASSERT_EQ(plan.segments.size(), 3u);
  for (const auto & seg : plan.segments) {
    for (const Pose2 & p : seg.poses) {
      EXPECT_TRUE(s.bounds.contains(p.position()));
      EXPECT_EQ(placement_check(s, m, p), Placement::Free);
    }
  }
  EXPECT_EQ(plan.segments[2].poses.back(), (Pose2{-1.4, -1.2, -1.5}));
  // Display markers are decimated but keep both ends.
  ASSERT_GE(plan.path_markers.size(), 2u);
  EXPECT_EQ(plan.path_markers.front(), (Vec2{0.0, 0.0}));
  EXPECT_EQ(plan.path_markers.back(), (Vec2{-1.4, -1.2}));
}

TEST(PlanNavigation, HeightChangesAfterArrivalAndTurn)
{
  const Scene s = test::arena();
  const RobotModel m;
  const RobotState st = default_robot_state(m, s.robot_start());
  NavigationWaypoint w = waypoint(0.0, -0.8, 1.0);
  w.height_command = 0.35;
  const auto r = plan_navigation(s, m, st, {w});
  ASSERT_TRUE(std::holds_alternative<NavPlan>(r));
  const Timeline tl = nav_timeline(std::get<NavPlan>(r), m, st);
  double reached = -1.0;
  double applied = -1.0;
  for (const auto & mark : tl.marks()) {
    if (mark.kind == MarkKind::WaypointReached) {
      reached = mark.t;
    } else if (mark.kind == MarkKind::StateCommandApplied) {
      applied = mark.t;
    }
  }
  ASSERT_GE(reached, 0.0);
  ASSERT_GT(applied, reached);
  // At arrival the base is at its final pose and the torso has not moved yet.
  const RobotState at_arrival = tl.at(reached);
  EXPECT_EQ(at_arrival.base_pose, w.pose);
  EXPECT_DOUBLE_EQ(at_arrival.torso_height, st.torso_height);
  EXPECT_DOUBLE_EQ(tl.final_state().torso_height, 0.35);
  EXPECT_NEAR(applied - reached, (0.35 - st.torso_height) / m.torso_max_speed, 1e-9);
}

TEST(PlanNavigation, GhostSamplesAreOrderedAndEndAtGoal)
{
  const Scene s = test::arena();
  const RobotModel m;
  const RobotState st = default_robot_state(m, s.robot_start());
  const auto r = plan_navigation(s, m, st, {waypoint(0.0, 0.8, 0.5)});
  ASSERT_TRUE(std::holds_alternative<NavPlan>(r));
  const auto ghost = sample_ghost(std::get<NavPlan>(r), m, st, 0.05);
  ASSERT_GE(ghost.size(), 2u);
  EXPECT_EQ(ghost.front(), st);
  EXPECT_EQ(ghost.back().base_pose, (Pose2{0.0, 0.8, 0.5}));
}
