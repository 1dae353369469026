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

#ifndef FWPD_PROTOCOL_HPP_
#define FWPD_PROTOCOL_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fwpd/session.hpp"

namespace fwpd
{

/**
 * @brief Operator wire protocol on top of a Session.
 *
 * Inbound ops: create_waypoint, move_waypoint, duplicate_after, remove_last,
 * set_gripper, set_height, set_collision_toggle, request_plan, approve, deny,
 * immediate_height, immediate_gripper, look_at.
 *
 * Outbound ops: robot_state, waypoint_update, status, plan_proposal, event,
 * error. Every outbound message carries the session clock as "t". Every
 * inbound message is answered by at least one outbound message.
 *
 * The server and the headless replayer both drive sessions through this
 * class, so their outbound streams agree for identical inputs.
 */
class Dispatcher
{
public:
  using Sink = std::function<void(const nlohmann::json &)>;

  Dispatcher(Session & session, Sink sink);

  /// Greets a new operator: robot_state, then the current status.
  void start();

  /// Parses one raw text frame; malformed JSON yields error "bad_message".
  void handle_text(std::string_view raw);
  void handle(const nlohmann::json & message);

  /// Advances the session, publishes what changed, then broadcasts robot_state.
  void tick(double dt);

  [[nodiscard]] Session & session() { return session_; }

private:
  using Snapshot = std::map<WaypointId, nlohmann::json>;

  [[nodiscard]] Snapshot snapshot() const;
  void dispatch(const nlohmann::json & message, std::vector<WaypointId> & acks);
  void publish(std::size_t first_event, const Snapshot & before, const std::vector<WaypointId> & acks);
  void send(nlohmann::json message);
  void send_error(std::string_view code, const std::string & text);
  void send_robot_state();

  Session & session_;
  Sink sink_;
  std::size_t published_events_{0};
  std::size_t sent_{0};
  std::optional<double> stamp_;
};

}  // namespace fwpd

#endif  // FWPD_PROTOCOL_HPP_
