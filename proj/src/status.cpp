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

#include "fwpd/status.hpp"

namespace fwpd
{

std::string PlannerStatus::render() const
{
  switch (phase_) {
    case Phase::Ready:
      return "Ready to plan!";
    case Phase::Planning:
      return "Planning...";
    case Phase::Successful:
      return "Plan Successful!";
    case Phase::Executing:
      return "Executing Waypoint " + std::to_string(waypoint_) + " / " + std::to_string(total_);
    case Phase::Failed:
      return "Plan Failed at Waypoint " + std::to_string(waypoint_);
  }
  return "Ready to plan!";
}

bool legal_transition(const PlannerStatus & from, const PlannerStatus & to)
{
  using P = PlannerStatus::Phase;
  switch (from.phase()) {
    case P::Ready:
      return to.phase() == P::Planning;
    case P::Planning:
      return to.phase() == P::Successful || to.phase() == P::Failed;
    case P::Successful:
      return (to.phase() == P::Executing && to.waypoint() == 1 && to.total() >= 1) ||
             to.phase() == P::Ready || to.phase() == P::Planning;
    case P::Executing:
      if (to.phase() == P::Executing) {
        return to.total() == from.total() && to.waypoint() == from.waypoint() + 1;
      }
      return to.phase() == P::Ready && from.waypoint() == from.total();
    case P::Failed:
      return to.phase() == P::Ready || to.phase() == P::Planning;
  }
  return false;
}

}  // namespace fwpd
