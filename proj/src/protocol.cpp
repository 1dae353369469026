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

#include "fwpd/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace fwpd
{

using nlohmann::json;

namespace
{

/// Malformed inbound message: missing field, wrong type.
class BadMessage : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class UnknownOp : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

const json & field(const json & m, const char * name)
{
  auto it = m.find(name);
  if (it == m.end()) {
    throw BadMessage(std::string("missing field '") + name + "'");
  }
  return *it;
}

double number(const json & m, const char * name)
{
  const json & v = field(m, name);
  if (!v.is_number()) {
    throw BadMessage(std::string("field '") + name + "' must be a number");
  }
  return v.get<double>();
}

double number_or(const json & m, const char * name, double fallback)
{
  return m.contains(name) ? number(m, name) : fallback;
}

std::optional<double> optional_number(const json & m, const char * name)
{
  auto it = m.find(name);
  if (it == m.end() || it->is_null()) {
    return std::nullopt;
  }
  return number(m, name);
}

WaypointId waypoint_id(const json & m)
{
  const json & v = field(m, "id");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw BadMessage("field 'id' must be a non-negative integer");
  }
  return v.get<WaypointId>();
}

WaypointKind list_kind(const json & m)
{
  const json & v = field(m, "list");
  if (!v.is_string()) {
    throw BadMessage("field 'list' must be a string");
  }
  auto kind = parse_kind(v.get<std::string>());
  if (!kind) {
    throw BadMessage("unknown list '" + v.get<std::string>() + "'");
  }
  return *kind;
}

ArmTarget arm_target(const json & t)
{
  if (!t.is_object()) {
    throw BadMessage("field 'target' must be an object");
  }
  return ArmTarget{number(t, "d"), number(t, "z"), number_or(t, "pitch", 0.0)};
}

Pose2 base_pose(const json & p)
{
  if (!p.is_object()) {
    throw BadMessage("field 'pose' must be an object");
  }
  return Pose2{number(p, "x"), number(p, "y"), number_or(p, "heading", 0.0)};
}

/// Pose carried by the message, if any: "target" for the arm, "pose" for the base.
std::optional<WaypointPose> message_pose(const json & m)
{
  const bool has_target = m.contains("target");
  const bool has_pose = m.contains("pose");
  if (has_target && has_pose) {
    throw BadMessage("give either 'target' or 'pose', not both");
  }
  if (has_target) {
    return arm_target(m.at("target"));
  }
  if (has_pose) {
    return base_pose(m.at("pose"));
  }
  return std::nullopt;
}

Waypoint waypoint_payload(const json & m)
{
  const auto pose = message_pose(m);
  if (!pose) {
    throw BadMessage("create_waypoint needs 'target' or 'pose'");
  }
  if (m.contains("list") && list_kind(m) != kind_of(*pose)) {
    throw OperationError(
      ErrorCode::KindMismatch,
      "a " + std::string(to_string(kind_of(*pose))) + " pose cannot go in the " +
      std::string(to_string(list_kind(m))) + " list");
  }
  if (const auto * t = std::get_if<ArmTarget>(&*pose)) {
    ManipulationWaypoint w;
    w.target = *t;
    w.gripper_command = optional_number(m, "gripper");
    return w;
  }
  NavigationWaypoint w;
  w.pose = std::get<Pose2>(*pose);
  w.height_command = optional_number(m, "height");
  if (m.contains("collision_toggle")) {
    if (!m.at("collision_toggle").is_boolean()) {
      throw BadMessage("field 'collision_toggle' must be a boolean");
    }
    w.collision_toggle = m.at("collision_toggle").get<bool>();
  }
  return w;
}

std::optional<std::size_t> insert_position(const json & m)
{
  auto it = m.find("insert_after");
  if (it == m.end() || it->is_null()) {
    return std::nullopt;
  }
  if (!it->is_number_integer()) {
    throw BadMessage("field 'insert_after' must be an integer label");
  }
  const auto label = it->get<std::int64_t>();
  if (label < 0) {
    throw OperationError(ErrorCode::BadPosition, "insert_after must be >= 0");
  }
  return static_cast<std::size_t>(label);
}

}  // namespace

Dispatcher::Dispatcher(Session & session, Sink sink)
: session_(session), sink_(std::move(sink)) {}

void Dispatcher::start()
{
  published_events_ = session_.event_log().size();
  send_robot_state();
  send({{"op", "status"}, {"text", session_.status().render()}});
}

void Dispatcher::handle_text(std::string_view raw)
{
  json message;
  try {
    message = json::parse(raw);
  } catch (const json::parse_error & e) {
    send_error("bad_message", std::string("invalid JSON: ") + e.what());
    return;
  }
  handle(message);
}

void Dispatcher::handle(const json & message)
{
  const Snapshot before = snapshot();
  const std::size_t sent_before = sent_;
  std::vector<WaypointId> acks;
  try {
    if (!message.is_object()) {
      throw BadMessage("message must be a JSON object");
    }
    dispatch(message, acks);
  } catch (const BadMessage & e) {
    send_error("bad_message", e.what());
  } catch (const UnknownOp & e) {
    send_error("unknown_op", e.what());
  } catch (const OperationError & e) {
    send_error(to_string(e.code()), e.what());
  } catch (const json::exception & e) {
    send_error("bad_message", e.what());
  }
  publish(published_events_, before, acks);
  if (sent_ == sent_before) {
    send_robot_state();
  }
}

void Dispatcher::dispatch(const json & m, std::vector<WaypointId> & acks)
{
  const json & op_field = field(m, "op");
  if (!op_field.is_string()) {
    throw BadMessage("field 'op' must be a string");
  }
  const std::string op = op_field.get<std::string>();

  if (op == "create_waypoint") {
    session_.create_waypoint(waypoint_payload(m), insert_position(m));
  } else if (op == "duplicate_after") {
    session_.duplicate_after(waypoint_id(m), message_pose(m));
  } else if (op == "move_waypoint") {
    const WaypointId id = waypoint_id(m);
    const auto pose = message_pose(m);
    if (!pose) {
      throw BadMessage("move_waypoint needs 'target' or 'pose'");
    }
    // The target is echoed even when the move is refused, so the operator's
    // marker snaps back to the confirmed pose.
    acks.push_back(id);
    session_.move_waypoint(id, *pose);
  } else if (op == "remove_last") {
    const WaypointKind kind = list_kind(m);
    if (!session_.remove_last(kind)) {
      throw OperationError(
        ErrorCode::EmptyList, "the " + std::string(to_string(kind)) + " list is empty");
    }
  } else if (op == "set_gripper") {
    const WaypointId id = waypoint_id(m);
    acks.push_back(id);
    session_.set_waypoint_state(id, GripperCommand{number(m, "value")});
  } else if (op == "set_height") {
    const WaypointId id = waypoint_id(m);
    acks.push_back(id);
    session_.set_waypoint_state(id, HeightCommand{number(m, "value")});
  } else if (op == "set_collision_toggle") {
    const WaypointId id = waypoint_id(m);
    const json & v = field(m, "value");
    if (!v.is_boolean()) {
      throw BadMessage("field 'value' must be a boolean");
    }
    acks.push_back(id);
    session_.set_waypoint_state(id, CollisionToggle{v.get<bool>()});
  } else if (op == "request_plan") {
    session_.request_plan(list_kind(m));
  } else if (op == "approve") {
    session_.approve();
  } else if (op == "deny") {
    session_.deny();
  } else if (op == "immediate_height") {
    session_.immediate(SetHeight{number(m, "value")});
  } else if (op == "immediate_gripper") {
    session_.immediate(SetGripper{number(m, "value")});
  } else if (op == "look_at") {
    session_.immediate(LookAt{number(m, "x"), number(m, "y"), number(m, "z")});
  } else {
    throw UnknownOp("unknown op '" + op + "'");
  }
}

void Dispatcher::tick(double dt)
{
  const Snapshot before = snapshot();
  // Changes found during a tick are stamped with the tick's start time,
  // like the events that caused them.
  stamp_ = session_.clock();
  session_.tick(dt);
  publish(published_events_, before, {});
  stamp_.reset();
  send_robot_state();
}

Dispatcher::Snapshot Dispatcher::snapshot() const
{
  Snapshot out;
  for (WaypointKind kind : {WaypointKind::Manipulation, WaypointKind::Navigation}) {
    const WaypointList & list = session_.list(kind);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Waypoint & w = list.items()[i];
      out.emplace(id_of(w), to_json(w, i + 1));
    }
  }
  return out;
}

void Dispatcher::publish(
  std::size_t first_event, const Snapshot & before, const std::vector<WaypointId> & acks)
{
  const Snapshot after = snapshot();
  std::vector<WaypointId> sent_ids;
  for (const auto & [id, wp] : before) {
    if (!after.count(id)) {
      send({{"op", "waypoint_update"}, {"id", id}, {"list", wp.at("list")}, {"removed", true}});
    }
  }
  for (const auto & [id, wp] : after) {
    auto it = before.find(id);
    const bool acked = std::find(acks.begin(), acks.end(), id) != acks.end();
    if (it == before.end() || it->second != wp || acked) {
      send({{"op", "waypoint_update"}, {"waypoint", wp}});
    }
  }

  const auto & log = session_.event_log();
  for (std::size_t i = first_event; i < log.size(); ++i) {
    const Event & e = log[i];
    if (e.type == "status") {
      send({{"op", "status"}, {"t", e.t}, {"text", e.payload.at("text")}});
      continue;
    }
    if (e.type == "plan_proposed" && session_.proposal()) {
      const Proposal & p = *session_.proposal();
      json ghost = json::array();
      for (const RobotState & s : p.ghost) {
        ghost.push_back(to_json(s));
      }
      json markers = json::array();
      for (const Vec2 & v : p.path_markers) {
        markers.push_back({v.x, v.y});
      }
      send({
          {"op", "plan_proposal"}, {"t", e.t}, {"list", std::string(to_string(p.kind))},
          {"waypoints", p.waypoint_count}, {"ghost", std::move(ghost)},
          {"path_markers", std::move(markers)}});
    }
    send({{"op", "event"}, {"t", e.t}, {"event", e.to_json()}});
  }
  published_events_ = log.size();
}

void Dispatcher::send(json message)
{
  if (!message.contains("t")) {
    message["t"] = stamp_.value_or(session_.clock());
  }
  ++sent_;
  sink_(message);
}

void Dispatcher::send_error(std::string_view code, const std::string & text)
{
  send({{"op", "error"}, {"code", std::string(code)}, {"message", text}});
}

void Dispatcher::send_robot_state()
{
  send({{"op", "robot_state"}, {"state", to_json(session_.robot())}});
}

}  // namespace fwpd
