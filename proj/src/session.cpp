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

#include "fwpd/session.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwpd
{

using nlohmann::json;

json Event::to_json() const
{
  json j = payload;
  j["t"] = t;
  j["type"] = type;
  return j;
}

json to_json(const RobotState & s)
{
  return {
    {"base", {{"x", s.base_pose.x}, {"y", s.base_pose.y}, {"heading", s.base_pose.heading}}},
    {"torso_height", s.torso_height},
    {"joints", s.joints},
    {"gripper", s.gripper_aperture},
    {"head_pan", s.head_pan},
    {"head_tilt", s.head_tilt}};
}

json to_json(const Waypoint & w, std::size_t label)
{
  json j{
    {"id", id_of(w)},
    {"label", label},
    {"list", std::string(to_string(kind_of(w)))},
    {"color_state", std::string(to_string(color_of(w)))}};
  if (const auto * m = std::get_if<ManipulationWaypoint>(&w)) {
    j["target"] = {{"d", m->target.d}, {"z", m->target.z}, {"pitch", m->target.pitch}};
    j["gripper"] = m->gripper_command ? json(*m->gripper_command) : json(nullptr);
  } else {
    const auto & n = std::get<NavigationWaypoint>(w);
    j["pose"] = {{"x", n.pose.x}, {"y", n.pose.y}, {"heading", n.pose.heading}};
    j["height"] = n.height_command ? json(*n.height_command) : json(nullptr);
    j["collision_toggle"] = n.collision_toggle;
  }
  return j;
}

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double approach(double current, double target, double max_step)
{
  if (std::abs(target - current) <= max_step) {
    return target;
  }
  return current + std::copysign(max_step, target - current);
}

}  // namespace

Session::Session(
  std::string id, Scene scene, RobotModel model, std::uint64_t rng_seed, SessionOptions options)
: id_(std::move(id)), scene_(std::move(scene)), model_(std::move(model)), rng_seed_(rng_seed),
  options_(std::move(options))
{
  model_.validate();
  validate_scene(scene_);
  robot_ = default_robot_state(model_, scene_.robot_start());
  emit("status", {{"text", status_.render()}});
}

Session::~Session()
{
  if (job_.valid()) {
    job_.wait();
  }
}

const WaypointList & Session::list(WaypointKind kind) const
{
  return kind == WaypointKind::Manipulation ? manip_list_ : nav_list_;
}

WaypointList & Session::list_mut(WaypointKind kind)
{
  return kind == WaypointKind::Manipulation ? manip_list_ : nav_list_;
}

std::optional<WaypointKind> Session::kind_of_waypoint(WaypointId id) const
{
  if (manip_list_.label_of(id)) {
    return WaypointKind::Manipulation;
  }
  if (nav_list_.label_of(id)) {
    return WaypointKind::Navigation;
  }
  return std::nullopt;
}

WaypointList & Session::owning_list(WaypointId id)
{
  const auto kind = kind_of_waypoint(id);
  if (!kind) {
    throw OperationError(ErrorCode::NotFound, "no waypoint with id " + std::to_string(id));
  }
  return list_mut(*kind);
}

bool Session::actuators_moving() const
{
  return torso_target_.has_value() || gripper_target_.has_value();
}

bool Session::idle() const
{
  return !planning_kind_ && !execution_ && !actuators_moving();
}

void Session::emit(std::string type, json payload, double t)
{
  Event e;
  e.t = t < 0.0 ? clock_ : t;
  if (!log_.empty()) {
    e.t = std::max(e.t, log_.back().t);
  }
  e.type = std::move(type);
  e.payload = std::move(payload);
  log_.push_back(std::move(e));
}

void Session::set_status(const PlannerStatus & next, double t)
{
  if (next == status_) {
    return;
  }
  status_ = next;
  emit("status", {{"text", status_.render()}}, t);
}

void Session::guard_mutation()
{
  if (status_.busy()) {
    throw OperationError(ErrorCode::Busy, "waypoints are locked while " + status_.render());
  }
}

void Session::after_mutation()
{
  if (status_.phase() == PlannerStatus::Phase::Successful) {
    proposal_.reset();
    emit("proposal_invalidated");
    set_status(PlannerStatus::ready());
  } else if (status_.phase() == PlannerStatus::Phase::Failed) {
    set_status(PlannerStatus::ready());
  }
}

WaypointId Session::create_waypoint(Waypoint payload, std::optional<std::size_t> insert_after)
{
  guard_mutation();
  WaypointList & list = list_mut(kind_of(payload));
  const WaypointId id = list.create(std::move(payload), insert_after, next_id_, prechecker());
  ++next_id_;
  emit("waypoint_created", {
      {"list", std::string(to_string(list.kind()))}, {"id", id}, {"label", *list.label_of(id)}});
  after_mutation();
  return id;
}

WaypointId Session::duplicate_after(WaypointId source, const std::optional<WaypointPose> & pose)
{
  guard_mutation();
  WaypointList & list = owning_list(source);
  const WaypointId id = list.duplicate_after(source, pose, next_id_, prechecker());
  ++next_id_;
  emit("waypoint_created", {
      {"list", std::string(to_string(list.kind()))}, {"id", id}, {"label", *list.label_of(id)},
      {"duplicate_of", source}});
  after_mutation();
  return id;
}

std::optional<WaypointId> Session::remove_last(WaypointKind kind)
{
  guard_mutation();
  WaypointList & list = list_mut(kind);
  const auto label = list.size();
  const auto removed = list.remove_last();
  if (removed) {
    emit("waypoint_removed", {
        {"list", std::string(to_string(kind))}, {"id", *removed}, {"label", label}});
    after_mutation();
  }
  return removed;
}

ColorState Session::move_waypoint(WaypointId id, const WaypointPose & pose)
{
  guard_mutation();
  WaypointList & list = owning_list(id);
  const ColorState color = list.move(id, pose, prechecker());
  emit("waypoint_moved", {
      {"list", std::string(to_string(list.kind()))}, {"id", id},
      {"color_state", std::string(to_string(color))}});
  after_mutation();
  return color;
}

void Session::set_waypoint_state(WaypointId id, const StateCommand & command)
{
  guard_mutation();
  WaypointList & list = owning_list(id);
  list.set_state(id, command, prechecker());
  json payload{{"list", std::string(to_string(list.kind()))}, {"id", id}};
  if (const auto * g = std::get_if<GripperCommand>(&command)) {
    payload["gripper"] = g->value;
  } else if (const auto * h = std::get_if<HeightCommand>(&command)) {
    payload["height"] = h->value;
  } else {
    payload["collision_toggle"] = std::get<CollisionToggle>(command).enabled;
  }
  emit("waypoint_state_set", std::move(payload));
  after_mutation();
}

void Session::request_plan(WaypointKind kind)
{
  if (status_.busy()) {
    throw OperationError(ErrorCode::Busy, "cannot plan while " + status_.render());
  }
  if (actuators_moving()) {
    throw OperationError(ErrorCode::Busy, "cannot plan while immediate commands are settling");
  }
  WaypointList & list = list_mut(kind);
  if (list.empty()) {
    throw OperationError(
      ErrorCode::EmptyList, "the " + std::string(to_string(kind)) + " list is empty");
  }
  if (proposal_) {
    proposal_.reset();
    emit("proposal_invalidated");
  }
  list.clear_plan_errors(prechecker());

  const std::uint64_t seed = splitmix64(rng_seed_ + plan_requests_++);
  planning_kind_ = kind;
  planning_start_ = robot_;
  emit("plan_requested", {{"list", std::string(to_string(kind))}, {"waypoints", list.size()}});
  set_status(PlannerStatus::planning());

  if (kind == WaypointKind::Manipulation) {
    std::vector<ManipulationWaypoint> wps;
    for (const Waypoint & w : list.items()) {
      wps.push_back(std::get<ManipulationWaypoint>(w));
    }
    job_ = std::async(
      std::launch::async,
      [model = model_, state = robot_, scene = scene_, wps = std::move(wps), seed,
      opts = options_.manip]() -> PlanOutcome {
        return manip::plan_manipulation(model, state, scene, wps, seed, opts);
      });
  } else {
    std::vector<NavigationWaypoint> wps;
    for (const Waypoint & w : list.items()) {
      wps.push_back(std::get<NavigationWaypoint>(w));
    }
    job_ = std::async(
      std::launch::async,
      [model = model_, state = robot_, scene = scene_, wps = std::move(wps),
      opts = options_.nav]() -> PlanOutcome {
        return nav::plan_navigation(scene, model, state, wps, opts);
      });
  }
}

void Session::wait_for_planner() const
{
  if (job_.valid()) {
    job_.wait();
  }
}

void Session::deliver_plan(double t)
{
  const WaypointKind kind = *planning_kind_;
  planning_kind_.reset();
  PlanOutcome outcome = job_.get();
  WaypointList & list = list_mut(kind);
  const std::string list_name(to_string(kind));

  std::optional<std::size_t> failed_label;
  std::string reason;
  if (kind == WaypointKind::Manipulation) {
    auto & result = std::get<manip::ManipResult>(outcome);
    if (auto * plan = std::get_if<manip::ManipPlan>(&result)) {
      Proposal p;
      p.kind = kind;
      p.start = planning_start_;
      p.ghost = plan->ghost;
      p.waypoint_count = plan->segments.size();
      p.plan = std::move(*plan);
      proposal_ = std::move(p);
    } else {
      const auto & f = std::get<manip::ManipFailure>(result);
      failed_label = f.label;
      reason = manip::to_string(f.reason);
    }
  } else {
    auto & result = std::get<nav::NavResult>(outcome);
    if (auto * plan = std::get_if<nav::NavPlan>(&result)) {
      Proposal p;
      p.kind = kind;
      p.start = planning_start_;
      p.ghost = nav::sample_ghost(*plan, model_, planning_start_, options_.ghost_dt);
      p.path_markers = plan->path_markers;
      p.waypoint_count = plan->segments.size();
      p.plan = std::move(*plan);
      proposal_ = std::move(p);
    } else {
      const auto & f = std::get<nav::NavFailure>(result);
      failed_label = f.label;
      reason = nav::to_string(f.reason);
    }
  }

  if (failed_label) {
    list.mark_plan_failed(*failed_label, prechecker());
    emit("plan_failed", {{"list", list_name}, {"label", *failed_label}, {"reason", reason}}, t);
    set_status(PlannerStatus::failed(*failed_label), t);
  } else {
    emit("plan_proposed", {
        {"list", list_name}, {"waypoints", proposal_->waypoint_count},
        {"ghost_samples", proposal_->ghost.size()}}, t);
    set_status(PlannerStatus::successful(), t);
  }
}

void Session::approve()
{
  if (status_.phase() != PlannerStatus::Phase::Successful || !proposal_) {
    throw OperationError(ErrorCode::InvalidState, "nothing to approve while " + status_.render());
  }
  if (!(proposal_->start == robot_)) {
    proposal_.reset();
    emit("proposal_invalidated");
    set_status(PlannerStatus::ready());
    throw OperationError(ErrorCode::InvalidState, "robot moved since the plan was computed");
  }
  Proposal p = std::move(*proposal_);
  proposal_.reset();
  Timeline tl = p.kind == WaypointKind::Manipulation
                ? manip::manip_timeline(std::get<manip::ManipPlan>(p.plan), model_, robot_, false)
                : nav::nav_timeline(std::get<nav::NavPlan>(p.plan), model_, robot_);
  execution_ = Execution{std::move(tl), p.kind, p.waypoint_count, 0.0, 0};
  emit("plan_approved", {{"list", std::string(to_string(p.kind))}, {"waypoints", p.waypoint_count}});
  set_status(PlannerStatus::executing(1, p.waypoint_count));
  advance_execution(0.0);
}

void Session::deny()
{
  if (status_.phase() != PlannerStatus::Phase::Successful || !proposal_) {
    throw OperationError(ErrorCode::InvalidState, "nothing to deny while " + status_.render());
  }
  const std::string list_name(to_string(proposal_->kind));
  proposal_.reset();
  emit("plan_denied", {{"list", list_name}});
  set_status(PlannerStatus::ready());
}

void Session::immediate(const ImmediateCommand & command)
{
  if (execution_) {
    throw OperationError(ErrorCode::Busy, "the approved plan owns the actuators");
  }
  if (planning_kind_) {
    throw OperationError(ErrorCode::Busy, "cannot command the robot while planning");
  }
  if (proposal_) {
    proposal_.reset();
    emit("proposal_invalidated");
    set_status(PlannerStatus::ready());
  }
  if (const auto * h = std::get_if<SetHeight>(&command)) {
    torso_target_ = model_.torso_range.clamp(h->value);
    emit("immediate", {{"command", "height"}, {"value", *torso_target_}});
  } else if (const auto * g = std::get_if<SetGripper>(&command)) {
    gripper_target_ = std::clamp(g->value, 0.0, 1.0);
    emit("immediate", {{"command", "gripper"}, {"value", *gripper_target_}});
  } else {
    const auto & look = std::get<LookAt>(command);
    const Pose2 & base = robot_.base_pose;
    const double dx = look.x - base.x;
    const double dy = look.y - base.y;
    const double head_z = scene_.floor_z + model_.head_z(robot_.torso_height);
    // Tilt is positive when looking down.
    robot_.head_pan = model_.head_pan_limits.clamp(wrap_angle(std::atan2(dy, dx) - base.heading));
    robot_.head_tilt = model_.head_tilt_limits.clamp(std::atan2(head_z - look.z, std::hypot(dx, dy)));
    emit("immediate", {
        {"command", "look_at"}, {"point", {look.x, look.y, look.z}},
        {"head_pan", robot_.head_pan}, {"head_tilt", robot_.head_tilt}});
  }
}

void Session::advance_execution(double dt)
{
  Execution & ex = *execution_;
  const double t0 = ex.time;
  const double end = ex.timeline.duration();
  const double t1 = std::min(t0 + dt, end);

  const auto & marks = ex.timeline.marks();
  while (ex.next_mark < marks.size() && marks[ex.next_mark].t <= t1) {
    const TimelineMark & m = marks[ex.next_mark++];
    const double when = clock_ + (m.t - t0);
    switch (m.kind) {
      case MarkKind::SegmentStarted:
        if (m.label > 1) {
          set_status(PlannerStatus::executing(m.label, ex.total), when);
        }
        emit("segment_started", {{"label", m.label}}, when);
        break;
      case MarkKind::WaypointReached:
        emit("waypoint_reached", {{"label", m.label}}, when);
        break;
      case MarkKind::StateCommandApplied: {
          const RobotState s = ex.timeline.at(m.t);
          json payload{{"label", m.label}};
          if (ex.kind == WaypointKind::Manipulation) {
            payload["command"] = "gripper";
            payload["value"] = s.gripper_aperture;
          } else {
            payload["command"] = "height";
            payload["value"] = s.torso_height;
          }
          emit("state_command_applied", std::move(payload), when);
          break;
        }
    }
  }

  ex.time = t1;
  robot_ = ex.timeline.at(t1);
  if (t1 >= end) {
    robot_ = ex.timeline.final_state();
    const double when = clock_ + (end - t0);
    emit("plan_completed", {{"waypoints", ex.total}}, when);
    execution_.reset();
    set_status(PlannerStatus::ready(), when);
  }
}

void Session::advance_actuators(double dt)
{
  if (torso_target_) {
    robot_.torso_height = approach(robot_.torso_height, *torso_target_, model_.torso_max_speed * dt);
    if (robot_.torso_height == *torso_target_) {
      emit("actuator_settled", {{"command", "height"}, {"value", *torso_target_}}, clock_ + dt);
      torso_target_.reset();
    }
  }
  if (gripper_target_) {
    robot_.gripper_aperture =
      approach(robot_.gripper_aperture, *gripper_target_, model_.gripper_rate * dt);
    if (robot_.gripper_aperture == *gripper_target_) {
      emit("actuator_settled", {{"command", "gripper"}, {"value", *gripper_target_}}, clock_ + dt);
      gripper_target_.reset();
    }
  }
}

void Session::refresh_colors()
{
  const Prechecker check = prechecker();
  manip_list_.refresh_colors(check);
  nav_list_.refresh_colors(check);
}

std::vector<Event> Session::tick(double dt)
{
  if (!(dt > 0.0)) {
    throw std::invalid_argument("tick: dt must be > 0");
  }
  const std::size_t first = log_.size();
  const RobotState before = robot_;
  if (planning_kind_) {
    deliver_plan(clock_);
  }
  if (execution_) {
    advance_execution(dt);
  } else {
    advance_actuators(dt);
  }
  clock_ += dt;
  if (!(robot_ == before)) {
    refresh_colors();
  }
  return {log_.begin() + static_cast<std::ptrdiff_t>(first), log_.end()};
}

void Session::write_log(std::ostream & out) const
{
  for (const Event & e : log_) {
    out << e.to_json().dump() << '\n';
  }
  out.flush();
}

}  // namespace fwpd
