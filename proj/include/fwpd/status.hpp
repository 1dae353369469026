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

#ifndef FWPD_STATUS_HPP_
#define FWPD_STATUS_HPP_

#include <cstddef>
#include <string>

namespace fwpd
{

/// Planner status shown to the operator. Renders to one of five fixed phrases.
class PlannerStatus
{
public:
  enum class Phase { Ready, Planning, Successful, Executing, Failed };

  static PlannerStatus ready() { return PlannerStatus(Phase::Ready, 0, 0); }
  static PlannerStatus planning() { return PlannerStatus(Phase::Planning, 0, 0); }
  static PlannerStatus successful() { return PlannerStatus(Phase::Successful, 0, 0); }
  static PlannerStatus executing(std::size_t label, std::size_t total)
  {
    return PlannerStatus(Phase::Executing, label, total);
  }
  static PlannerStatus failed(std::size_t label) { return PlannerStatus(Phase::Failed, label, 0); }

  [[nodiscard]] Phase phase() const { return phase_; }
  [[nodiscard]] std::size_t waypoint() const { return waypoint_; }
  [[nodiscard]] std::size_t total() const { return total_; }
  [[nodiscard]] bool busy() const { return phase_ == Phase::Planning || phase_ == Phase::Executing; }

  /// "Ready to plan!", "Planning...", "Plan Successful!",
  /// "Executing Waypoint k / N" or "Plan Failed at Waypoint k".
  [[nodiscard]] std::string render() const;

  friend bool operator==(const PlannerStatus &, const PlannerStatus &) = default;

private:
  PlannerStatus(Phase phase, std::size_t waypoint, std::size_t total)
  : phase_(phase), waypoint_(waypoint), total_(total) {}

  Phase phase_;
  std::size_t waypoint_;
  std::size_t total_;
};

/**
 * Legal edges of the plan lifecycle:
 * Ready -> Planning -> {Successful, Failed};
 * Successful -> {Executing(1), Ready, Planning};
 * Executing(k) -> {Executing(k + 1), Ready} (Ready only after the last one);
 * Failed -> {Ready, Planning}.
 */
bool legal_transition(const PlannerStatus & from, const PlannerStatus & to);

}  // namespace fwpd

#endif  // FWPD_STATUS_HPP_
