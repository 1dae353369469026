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

#ifndef FWPD_SESSION_HPP_
#define FWPD_SESSION_HPP_

#include <cstdint>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fwpd/manip_planner.hpp"
#include "fwpd/nav_planner.hpp"
#include "fwpd/robot.hpp"
#include "fwpd/scene.hpp"
#include "fwpd/status.hpp"
#include "fwpd/timeline.hpp"
#include "fwpd/waypoint_list.hpp"

namespace fwpd
{

/// One lifecycle log entry. Serialized as {"t": ..., "type": ..., ...payload}.
struct Event
{
  double t{0.0};
  std::string type;
  nlohmann::json payload = nlohmann::json::object();

  [[nodiscard]] nlohmann::json to_json() const;
};

struct SetHeight
{
  double value{0.0};
};
struct SetGripper
{
  double value{0.0};
};
struct LookAt
{
  double x{0.0};
  double y{0.0};
  double z{0.0};
};
/// Planner-bypassing operator command.
using ImmediateCommand = std::variant<SetHeight, SetGripper, LookAt>;

/// A computed, not yet approved plan.
struct Proposal
{
  WaypointKind kind{WaypointKind::Manipulation};
  std::variant<manip::ManipPlan, nav::NavPlan> plan;
  RobotState start;
  std::vector<RobotState> ghost;
  std::vector<Vec2> path_markers;
  std::size_t waypoint_count{0};
};

struct SessionOptions
{
  manip::PlannerOptions manip;
  nav::NavOptions nav;
  double ghost_dt{0.05};
};

/**
 * @brief One operator's planning session over a simulated robot.
 *
 * Single writer: every mutation goes through this object on one logical
 * owner. Planner jobs run on a background thread against a snapshot; their
 * result is folded in on the first tick() after the request, so a replay of
 * the same inputs produces the same log regardless of planner speed.
 *
 * Rejected operations throw OperationError and leave the session unchanged.
 */
class Session
{
public:
  Session(std::string id, Scene scene, RobotModel model, std::uint64_t rng_seed,
    SessionOptions options = {});
  ~Session();

  Session(const Session &) = delete;
  Session & operator=(const Session &) = delete;

  WaypointId create_waypoint(Waypoint payload, std::optional<std::size_t> insert_after = {});
  WaypointId duplicate_after(WaypointId source, const std::optional<WaypointPose> & pose = {});
  std::optional<WaypointId> remove_last(WaypointKind kind);
  ColorState move_waypoint(WaypointId id, const WaypointPose & pose);
  void set_waypoint_state(WaypointId id, const StateCommand & command);

  void request_plan(WaypointKind kind);
  void approve();
  void deny();
  void immediate(const ImmediateCommand & command);

  /// Advances simulated time; returns the events emitted during this tick.
  std::vector<Event> tick(double dt);

  /// Blocks until an outstanding planner job has finished (does not apply it).
  void wait_for_planner() const;

  [[nodiscard]] const std::string & id() const { return id_; }
  [[nodiscard]] const Scene & scene() const { return scene_; }
  [[nodiscard]] const RobotModel & model() const { return model_; }
  [[nodiscard]] const RobotState & robot() const { return robot_; }
  [[nodiscard]] const PlannerStatus & status() const { return status_; }
  [[nodiscard]] const WaypointList & list(WaypointKind kind) const;
  [[nodiscard]] const std::optional<Proposal> & proposal() const { return proposal_; }
  [[nodiscard]] const std::vector<Event> & event_log() const { return log_; }
  [[nodiscard]] double clock() const { return clock_; }
  [[nodiscard]] bool executing() const { return execution_.has_value(); }
  /// True while immediate height/gripper targets are still being tracked.
  [[nodiscard]] bool actuators_moving() const;
  /// No planner job, no execution and no immediate motion in progress.
  [[nodiscard]] bool idle() const;
  /// Which list holds `id`, if any.
  [[nodiscard]] std::optional<WaypointKind> kind_of_waypoint(WaypointId id) const;

  /// Writes the event log as JSONL, one event per line.
  void write_log(std::ostream & out) const;

private:
  using PlanOutcome = std::variant<manip::ManipResult, nav::NavResult>;

  struct Execution
  {
    Timeline timeline;
    WaypointKind kind{WaypointKind::Manipulation};
    std::size_t total{0};
    double time{0.0};
    std::size_t next_mark{0};
  };

  WaypointList & list_mut(WaypointKind kind);
  WaypointList & owning_list(WaypointId id);
  Prechecker prechecker() const { return Prechecker(model_, robot_, scene_); }
  void emit(std::string type, nlohmann::json payload = nlohmann::json::object(), double t = -1.0);
  void set_status(const PlannerStatus & next, double t = -1.0);
  void guard_mutation();
  void after_mutation();
  void deliver_plan(double t);
  void advance_execution(double dt);
  void advance_actuators(double dt);
  void refresh_colors();

  std::string id_;
  Scene scene_;
  RobotModel model_;
  std::uint64_t rng_seed_;
  SessionOptions options_;

  RobotState robot_;
  WaypointList manip_list_{WaypointKind::Manipulation};
  WaypointList nav_list_{WaypointKind::Navigation};
  WaypointId next_id_{1};
  PlannerStatus status_ = PlannerStatus::ready();
  std::optional<Proposal> proposal_;
  std::vector<Event> log_;
  double clock_{0.0};
  std::uint64_t plan_requests_{0};

  std::optional<WaypointKind> planning_kind_;
  RobotState planning_start_;
  std::future<PlanOutcome> job_;
  std::optional<Execution> execution_;
  std::optional<double> torso_target_;
  std::optional<double> gripper_target_;
};

nlohmann::json to_json(const RobotState & state);
nlohmann::json to_json(const Waypoint & waypoint, std::size_t label);

}  // namespace fwpd

#endif  // FWPD_SESSION_HPP_
