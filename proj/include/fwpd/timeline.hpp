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

#ifndef FWPD_TIMELINE_HPP_
#define FWPD_TIMELINE_HPP_

#include <cstddef>
#include <vector>

#include "fwpd/robot.hpp"

namespace fwpd
{

struct Keyframe
{
  double t{0.0};
  RobotState state;
};

enum class MarkKind { SegmentStarted, WaypointReached, StateCommandApplied };

/// Execution milestone at time t for the waypoint with 1-based `label`.
struct TimelineMark
{
  double t{0.0};
  MarkKind kind{MarkKind::SegmentStarted};
  std::size_t label{0};
};

/**
 * @brief Time-parameterized robot motion: keyframes with piecewise-linear
 * interpolation (headings along the shorter arc) plus ordered milestones.
 *
 * Two keyframes may share a timestamp to express an instantaneous change;
 * at() then reports the later one.
 */
class Timeline
{
public:
  explicit Timeline(RobotState start);

  /// Appends a keyframe `duration` seconds after the last one.
  void append(double duration, const RobotState & state);
  void mark(MarkKind kind, std::size_t label);

  [[nodiscard]] double duration() const { return frames_.back().t; }
  [[nodiscard]] const std::vector<Keyframe> & frames() const { return frames_; }
  [[nodiscard]] const std::vector<TimelineMark> & marks() const { return marks_; }
  [[nodiscard]] const RobotState & final_state() const { return frames_.back().state; }
  [[nodiscard]] RobotState at(double t) const;

  /// States every `dt` seconds from 0; the final state is always the last sample.
  [[nodiscard]] std::vector<RobotState> sample(double dt) const;

private:
  std::vector<Keyframe> frames_;
  std::vector<TimelineMark> marks_;
};

/// Linear blend of two states; heading takes the shorter arc.
RobotState interpolate(const RobotState & a, const RobotState & b, double s);

}  // namespace fwpd

#endif  // FWPD_TIMELINE_HPP_
