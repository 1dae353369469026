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

#include "fwpd/waypoint_list.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fwpd/kinematics.hpp"
#include "fwpd/nav_planner.hpp"

namespace fwpd
{

ColorState Prechecker::color(const Waypoint & w) const
{
  if (const auto * m = std::get_if<ManipulationWaypoint>(&w)) {
    if (m->plan_failed) {
      return ColorState::Error;
    }
    return kinematics::reach_precheck(model_, robot_, m->target) == kinematics::Reach::OutOfReach
           ? ColorState::Warning
           : ColorState::Default;
  }
  const auto & n = std::get<NavigationWaypoint>(w);
  if (n.plan_failed) {
    return ColorState::Error;
  }
  return footprint_collides(n.pose) ? ColorState::Warning : ColorState::Default;
}

bool Prechecker::footprint_collides(const Pose2 & pose) const
{
  return nav::placement_check(scene_, model_, pose) == nav::Placement::Colliding;
}

namespace
{

void set_color(Waypoint & w, ColorState c)
{
  std::visit([c](auto & v) { v.color_state = c; }, w);
}

void set_plan_failed(Waypoint & w, bool failed)
{
  std::visit([failed](auto & v) { v.plan_failed = failed; }, w);
}

void check_kind(WaypointKind expected, WaypointKind got)
{
  if (expected != got) {
    throw OperationError(
      ErrorCode::KindMismatch, "expected a " + std::string(to_string(expected)) +
      " waypoint, got " + std::string(to_string(got)));
  }
}

}  // namespace

std::optional<std::size_t> WaypointList::label_of(WaypointId id) const
{
  const auto it = position_.find(id);
  if (it == position_.end()) {
    return std::nullopt;
  }
  return it->second + 1;
}

void WaypointList::reindex(std::size_t first)
{
  for (std::size_t i = first; i < items_.size(); ++i) {
    position_[id_of(items_[i])] = i;
  }
}

const Waypoint * WaypointList::find(WaypointId id) const
{
  const auto label = label_of(id);
  return label ? &items_[*label - 1] : nullptr;
}

Waypoint & WaypointList::get(WaypointId id)
{
  const auto label = label_of(id);
  if (!label) {
    throw OperationError(ErrorCode::NotFound, "no waypoint with id " + std::to_string(id));
  }
  return items_[*label - 1];
}

WaypointId WaypointList::create(
  Waypoint payload, std::optional<std::size_t> insert_after, WaypointId new_id,
  const Prechecker & check)
{
  check_kind(kind_, kind_of(payload));
  if (position_.count(new_id) != 0) {
    throw std::invalid_argument("waypoint id " + std::to_string(new_id) + " is already in use");
  }
  if (insert_after && (*insert_after < 1 || *insert_after > items_.size())) {
    throw OperationError(
      ErrorCode::BadPosition, "insert_after " + std::to_string(*insert_after) +
      " outside [1, " + std::to_string(items_.size()) + "]");
  }
  std::visit(
    [&](auto & v) {
      v.id = new_id;
      v.plan_failed = false;
    },
    payload);
  if (auto * m = std::get_if<ManipulationWaypoint>(&payload); m && m->gripper_command) {
    m->gripper_command = std::clamp(*m->gripper_command, 0.0, 1.0);
  }
  if (auto * n = std::get_if<NavigationWaypoint>(&payload); n && n->height_command) {
    n->height_command = check.model().torso_range.clamp(*n->height_command);
  }
  set_color(payload, check.color(payload));
  const std::size_t pos = insert_after.value_or(items_.size());
  items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(payload));
  reindex(pos);
  return new_id;
}

WaypointId WaypointList::duplicate_after(
  WaypointId source, const std::optional<WaypointPose> & pose, WaypointId new_id,
  const Prechecker & check)
{
  const auto label = label_of(source);
  if (!label) {
    throw OperationError(ErrorCode::NotFound, "no waypoint with id " + std::to_string(source));
  }
  Waypoint copy = items_[*label - 1];
  if (pose) {
    check_kind(kind_, kind_of(*pose));
    if (auto * m = std::get_if<ManipulationWaypoint>(&copy)) {
      m->target = std::get<ArmTarget>(*pose);
    } else {
      std::get<NavigationWaypoint>(copy).pose = std::get<Pose2>(*pose);
    }
  }
  return create(std::move(copy), label, new_id, check);
}

std::optional<WaypointId> WaypointList::remove_last()
{
  if (items_.empty()) {
    return std::nullopt;
  }
  const WaypointId id = id_of(items_.back());
  items_.pop_back();
  position_.erase(id);
  return id;
}

ColorState WaypointList::move(WaypointId id, const WaypointPose & pose, const Prechecker & check)
{
  Waypoint & w = get(id);
  check_kind(kind_, kind_of(pose));
  if (auto * m = std::get_if<ManipulationWaypoint>(&w)) {
    m->target = std::get<ArmTarget>(pose);
  } else {
    auto & n = std::get<NavigationWaypoint>(w);
    const Pose2 & next = std::get<Pose2>(pose);
    if (n.collision_toggle && check.footprint_collides(next)) {
      throw OperationError(
        ErrorCode::PlacementBlocked, "navigation waypoint " + std::to_string(id) +
        " would collide with the scene");
    }
    n.pose = next;
  }
  set_plan_failed(w, false);
  set_color(w, check.color(w));
  return color_of(w);
}

void WaypointList::set_state(WaypointId id, const StateCommand & command, const Prechecker & check)
{
  Waypoint & w = get(id);
  if (const auto * g = std::get_if<GripperCommand>(&command)) {
    auto * m = std::get_if<ManipulationWaypoint>(&w);
    if (m == nullptr) {
      throw OperationError(ErrorCode::KindMismatch, "gripper command on a navigation waypoint");
    }
    m->gripper_command = std::clamp(g->value, 0.0, 1.0);
  } else if (const auto * h = std::get_if<HeightCommand>(&command)) {
    auto * n = std::get_if<NavigationWaypoint>(&w);
    if (n == nullptr) {
      throw OperationError(ErrorCode::KindMismatch, "height command on a manipulation waypoint");
    }
    n->height_command = check.model().torso_range.clamp(h->value);
  } else {
    auto * n = std::get_if<NavigationWaypoint>(&w);
    if (n == nullptr) {
      throw OperationError(ErrorCode::KindMismatch, "collision toggle on a manipulation waypoint");
    }
    n->collision_toggle = std::get<CollisionToggle>(command).enabled;
  }
  set_color(w, check.color(w));
}

void WaypointList::refresh_colors(const Prechecker & check)
{
  for (Waypoint & w : items_) {
    set_color(w, check.color(w));
  }
}

void WaypointList::clear_plan_errors(const Prechecker & check)
{
  for (Waypoint & w : items_) {
    set_plan_failed(w, false);
  }
  refresh_colors(check);
}

void WaypointList::mark_plan_failed(std::size_t label, const Prechecker & check)
{
  Waypoint & w = items_.at(label - 1);
  set_plan_failed(w, true);
  set_color(w, check.color(w));
}

}  // namespace fwpd
