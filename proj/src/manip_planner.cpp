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

#include "fwpd/manip_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace fwpd::manip
{

using kinematics::ArmPlaneObstacle;

std::vector<ArmPlaneObstacle> arm_obstacles(
  const Scene & scene, const RobotModel & model, const Pose2 & base_pose)
{
  std::vector<ArmPlaneObstacle> obs = kinematics::slice_scene(scene, model, base_pose);
  const double span = model.reach() + model.shoulder_forward_offset + 1.0;
  obs.push_back({{-span, span}, {-1.0, 0.0}, "floor"});
  return obs;
}

namespace
{

// Below this clearance a motion is treated as touching.
constexpr double kMinClearance = 1e-7;

double max_abs_diff(const JointVector & a, const JointVector & b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double dist2(const JointVector & a, const JointVector & b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

JointVector lerp(const JointVector & a, const JointVector & b, double t)
{
  JointVector q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    q[i] = a[i] + (b[i] - a[i]) * t;
  }
  return q;
}

}  // namespace

bool motion_valid(
  const RobotModel & model, double torso_height, const JointVector & from, const JointVector & to,
  const std::vector<ArmPlaneObstacle> & obstacles)
{
  JointVector delta(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    delta[i] = to[i] - from[i];
  }
  const double sweep = kinematics::sweep_bound(model, delta);
  double t = 0.0;
  for (;;) {
    const JointVector q = t >= 1.0 ? to : lerp(from, to, t);
    const double c = kinematics::arm_clearance(model, q, torso_height, obstacles);
    if (!(c > kMinClearance)) {
      return false;
    }
    if (t >= 1.0 || sweep == 0.0) {
      return true;
    }
    t = std::min(1.0, t + c / sweep);
  }
}

namespace
{

struct Tree
{
  std::vector<JointVector> nodes;
  std::vector<std::size_t> parent;

  [[nodiscard]] std::size_t nearest(const JointVector & q) const
  {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double d = dist2(nodes[i], q);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }

  std::size_t add(JointVector q, std::size_t from)
  {
    nodes.push_back(std::move(q));
    parent.push_back(from);
    return nodes.size() - 1;
  }

  /// Root-to-node chain.
  [[nodiscard]] std::vector<JointVector> chain(std::size_t i) const
  {
    std::vector<JointVector> out;
    for (;;) {
      out.push_back(nodes[i]);
      if (i == 0) {
        break;
      }
      i = parent[i];
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

enum class Extend { Trapped, Advanced, Reached };

class SegmentPlanner
{
public:
  SegmentPlanner(
    const RobotModel & model, double torso, const std::vector<ArmPlaneObstacle> & obstacles,
    const PlannerOptions & options, std::mt19937_64 & rng)
  : model_(model), torso_(torso), obstacles_(obstacles), options_(options), rng_(rng) {}

  std::optional<std::vector<JointVector>> plan(const JointVector & start, const JointVector & goal)
  {
    if (start == goal) {
      return std::vector<JointVector>{start};
    }
    std::vector<JointVector> path;
    if (motion_valid(model_, torso_, start, goal, obstacles_)) {
      path = {start, goal};
    } else {
      auto found = connect_trees(start, goal);
      if (!found) {
        return std::nullopt;
      }
      path = std::move(*found);
      shortcut(path);
    }
    return densify(path);
  }

private:
  bool valid_motion(const JointVector & a, const JointVector & b) const
  {
    return motion_valid(model_, torso_, a, b, obstacles_);
  }

  Extend extend(Tree & tree, const JointVector & target, std::size_t & added)
  {
    const std::size_t near = tree.nearest(target);
    const JointVector & qn = tree.nodes[near];
    const double d = std::sqrt(dist2(qn, target));
    const bool reaches = d <= options_.rrt_step;
    JointVector qnew = reaches ? target : lerp(qn, target, options_.rrt_step / d);
    if (!valid_motion(qn, qnew)) {
      return Extend::Trapped;
    }
    added = tree.add(std::move(qnew), near);
    return reaches ? Extend::Reached : Extend::Advanced;
  }

  Extend connect(Tree & tree, const JointVector & target, std::size_t & added)
  {
    Extend r = Extend::Advanced;
    while (r == Extend::Advanced && !over_budget(tree)) {
      r = extend(tree, target, added);
    }
    return r;
  }

  bool over_budget(const Tree & t) const
  {
    return nodes_ + t.nodes.size() >= options_.node_cap ||
           std::chrono::steady_clock::now() > deadline_;
  }

  std::optional<std::vector<JointVector>> connect_trees(
    const JointVector & start, const JointVector & goal)
  {
    deadline_ = std::chrono::steady_clock::now() + options_.segment_timeout;
    Tree a;
    Tree b;
    a.add(start, 0);
    b.add(goal, 0);
    bool a_is_start = true;

    while (a.nodes.size() + b.nodes.size() < options_.node_cap &&
      std::chrono::steady_clock::now() <= deadline_)
    {
      JointVector sample(model_.joint_count());
      for (std::size_t i = 0; i < sample.size(); ++i) {
        std::uniform_real_distribution<double> u(
          model_.joint_limits[i].lo, model_.joint_limits[i].hi);
        sample[i] = u(rng_);
      }
      std::size_t na = 0;
      if (extend(a, sample, na) != Extend::Trapped) {
        std::size_t nb = 0;
        nodes_ = a.nodes.size();
        const Extend r = connect(b, a.nodes[na], nb);
        nodes_ = 0;
        if (r == Extend::Reached) {
          std::vector<JointVector> front = a.chain(na);
          std::vector<JointVector> back = b.chain(nb);
          back.pop_back();  // duplicate of a.nodes[na]
          std::reverse(back.begin(), back.end());
          front.insert(front.end(), back.begin(), back.end());
          if (!a_is_start) {
            std::reverse(front.begin(), front.end());
          }
          return front;
        }
      }
      std::swap(a, b);
      a_is_start = !a_is_start;
    }
    return std::nullopt;
  }

  void shortcut(std::vector<JointVector> & path)
  {
    for (int attempt = 0; attempt < options_.shortcut_attempts && path.size() > 2; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, path.size() - 1);
      std::size_t i = pick(rng_);
      std::size_t j = pick(rng_);
      if (i > j) {
        std::swap(i, j);
      }
      if (j - i < 2) {
        continue;
      }
      if (valid_motion(path[i], path[j])) {
        path.erase(
          path.begin() + static_cast<std::ptrdiff_t>(i + 1),
          path.begin() + static_cast<std::ptrdiff_t>(j));
      }
    }
  }

  std::vector<JointVector> densify(const std::vector<JointVector> & path) const
  {
    std::vector<JointVector> out{path.front()};
    for (std::size_t e = 1; e < path.size(); ++e) {
      const JointVector & a = path[e - 1];
      const JointVector & b = path[e];
      const auto steps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(max_abs_diff(a, b) / options_.step_max - 1e-12)));
      for (std::size_t s = 1; s < steps; ++s) {
        out.push_back(lerp(a, b, static_cast<double>(s) / static_cast<double>(steps)));
      }
      out.push_back(b);
    }
    return out;
  }

  const RobotModel & model_;
  double torso_;
  const std::vector<ArmPlaneObstacle> & obstacles_;
  const PlannerOptions & options_;
  std::mt19937_64 & rng_;
  std::chrono::steady_clock::time_point deadline_{};
  std::size_t nodes_{0};
};

}  // namespace

ManipResult plan_manipulation(
  const RobotModel & model, const RobotState & state, const Scene & scene,
  const std::vector<ManipulationWaypoint> & waypoints, std::uint64_t rng_seed,
  const PlannerOptions & options)
{
  const std::vector<ArmPlaneObstacle> obstacles = arm_obstacles(scene, model, state.base_pose);
  const double torso = state.torso_height;
  std::mt19937_64 rng(rng_seed);
  SegmentPlanner planner(model, torso, obstacles, options, rng);

  std::vector<ManipSegment> segments;
  JointVector current = state.joints;
  if (kinematics::arm_collides(model, current, torso, obstacles)) {
    return ManipFailure{1, FailureReason::StartInCollision, {}};
  }

  for (std::size_t k = 0; k < waypoints.size(); ++k) {
    const std::size_t label = k + 1;
    const ArmTarget & target = waypoints[k].target;

    std::optional<JointVector> goal;
    for (int attempt = 0; attempt < options.goal_attempts && !goal; ++attempt) {
      JointVector seed = current;
      if (attempt > 0) {
        for (std::size_t i = 0; i < seed.size(); ++i) {
          std::uniform_real_distribution<double> u(model.joint_limits[i].lo, model.joint_limits[i].hi);
          seed[i] = u(rng);
        }
      }
      auto q = kinematics::ik(model, target, torso, seed, rng(), options.ik);
      if (!q) {
        // Restarts already explored the joint space; another seed will not help.
        break;
      }
      if (!kinematics::arm_collides(model, *q, torso, obstacles)) {
        goal = std::move(q);
      }
    }
    if (!goal) {
      return ManipFailure{label, FailureReason::IkUnreachable, std::move(segments)};
    }

    auto path = planner.plan(current, *goal);
    if (!path) {
      return ManipFailure{label, FailureReason::PlanTimeout, std::move(segments)};
    }
    ManipSegment seg;
    seg.start_joints = current;
    seg.end_joints = *goal;
    seg.path = std::move(*path);
    seg.terminal_gripper = waypoints[k].gripper_command;
    current = *goal;
    segments.push_back(std::move(seg));
  }

  ManipPlan plan;
  plan.segments = std::move(segments);
  plan.ghost = sample_ghost(plan, model, state, options.ghost_dt);
  return plan;
}

Timeline manip_timeline(
  const ManipPlan & plan, const RobotModel & model, const RobotState & start, bool instant_gripper)
{
  Timeline tl(start);
  RobotState cur = start;
  for (std::size_t k = 0; k < plan.segments.size(); ++k) {
    const std::size_t label = k + 1;
    const ManipSegment & seg = plan.segments[k];
    tl.mark(MarkKind::SegmentStarted, label);
    for (std::size_t i = 1; i < seg.path.size(); ++i) {
      const double duration = max_abs_diff(seg.path[i - 1], seg.path[i]) / model.joint_max_speed;
      cur.joints = seg.path[i];
      tl.append(duration, cur);
    }
    tl.mark(MarkKind::WaypointReached, label);
    if (seg.terminal_gripper) {
      const double target = std::clamp(*seg.terminal_gripper, 0.0, 1.0);
      const double duration =
        instant_gripper ? 0.0 : std::abs(target - cur.gripper_aperture) / model.gripper_rate;
      cur.gripper_aperture = target;
      tl.append(duration, cur);
      tl.mark(MarkKind::StateCommandApplied, label);
    }
  }
  return tl;
}

std::vector<RobotState> sample_ghost(
  const ManipPlan & plan, const RobotModel & model, const RobotState & start, double dt)
{
  return manip_timeline(plan, model, start, true).sample(dt);
}

std::string_view to_string(FailureReason reason)
{
  switch (reason) {
    case FailureReason::IkUnreachable: return "ik_unreachable";
    case FailureReason::PlanTimeout: return "plan_timeout";
    case FailureReason::StartInCollision: return "start_in_collision";
  }
  return "ik_unreachable";
}

}  // namespace fwpd::manip
