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

#ifndef FWPD_WAYPOINT_LIST_HPP_
#define FWPD_WAYPOINT_LIST_HPP_

#include <optional>
#include <unordered_map>
#include <vector>

#include "fwpd/robot.hpp"
#include "fwpd/scene.hpp"
#include "fwpd/waypoint.hpp"

namespace fwpd
{

/**
 * @brief Placement-time checks that decide a waypoint's color.
 *
 * Manipulation waypoints turn Warning when out of the arm's reach from the
 * current robot; navigation waypoints turn Warning when the base footprint
 * at their pose collides with the scene. A failed last plan overrides both
 * with Error.
 */
class Prechecker
{
public:
  Prechecker(const RobotModel & model, const RobotState & robot, const Scene & scene)
  : model_(model), robot_(robot), scene_(scene) {}

  [[nodiscard]] ColorState color(const Waypoint & w) const;
  [[nodiscard]] bool footprint_collides(const Pose2 & pose) const;
  [[nodiscard]] const RobotModel & model() const { return model_; }

private:
  const RobotModel & model_;
  const RobotState & robot_;
  const Scene & scene_;
};

/**
 * @brief Ordered waypoints of one kind. Display labels are the 1-based
 * storage positions, so every mutation renumbers implicitly.
 */
class WaypointList
{
public:
  explicit WaypointList(WaypointKind kind) : kind_(kind) {}

  [[nodiscard]] WaypointKind kind() const { return kind_; }
  [[nodiscard]] std::size_t size() const { return items_.size(); }
  [[nodiscard]] bool empty() const { return items_.empty(); }
  [[nodiscard]] const std::vector<Waypoint> & items() const { return items_; }

  /// 1-based label of `id`, if present.
  [[nodiscard]] std::optional<std::size_t> label_of(WaypointId id) const;
  [[nodiscard]] const Waypoint * find(WaypointId id) const;
  [[nodiscard]] const Waypoint & at_label(std::size_t label) const { return items_.at(label - 1); }

  /**
   * Inserts `payload` at the end, or right after label `insert_after`.
   * The payload's id is replaced by `new_id` and its color is recomputed.
   * Throws KindMismatch or BadPosition.
   */
  WaypointId create(
    Waypoint payload, std::optional<std::size_t> insert_after, WaypointId new_id,
    const Prechecker & check);

  /// Copy of `source` (commands included) placed at `pose`, inserted right after it.
  WaypointId duplicate_after(
    WaypointId source, const std::optional<WaypointPose> & pose, WaypointId new_id,
    const Prechecker & check);

  /// Removes the last waypoint; std::nullopt when the list is empty.
  std::optional<WaypointId> remove_last();

  /**
   * Moves a waypoint and returns its refreshed color. Clears any planner
   * error. A navigation waypoint with its collision toggle on keeps its old
   * pose when the new footprint collides (PlacementBlocked).
   */
  ColorState move(WaypointId id, const WaypointPose & pose, const Prechecker & check);

  /// Stores a state command; numeric values are clamped to their legal interval.
  void set_state(WaypointId id, const StateCommand & command, const Prechecker & check);

  void refresh_colors(const Prechecker & check);
  void clear_plan_errors(const Prechecker & check);
  void mark_plan_failed(std::size_t label, const Prechecker & check);

private:
  Waypoint & get(WaypointId id);

  /// Re-records storage positions from `first` onward.
  void reindex(std::size_t first);

  WaypointKind kind_;
  std::vector<Waypoint> items_;
  std::unordered_map<WaypointId, std::size_t> position_;
};

}  // namespace fwpd

#endif  // FWPD_WAYPOINT_LIST_HPP_
