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

#include "fwpd/timeline.hpp"

#include <algorithm>
#include <cmath>

namespace fwpd
{

namespace
{

double lerp(double a, double b, double s) { return a + (b - a) * s; }

}  // namespace

RobotState interpolate(const RobotState & a, const RobotState & b, double s)
{
  if (s <= 0.0) {
    return a;
  }
  if (s >= 1.0) {
    return b;
  }
  RobotState out = a;
  out.base_pose.x = lerp(a.base_pose.x, b.base_pose.x, s);
  out.base_pose.y = lerp(a.base_pose.y, b.base_pose.y, s);
  out.base_pose.heading =
    wrap_angle(a.base_pose.heading + s * wrap_angle(b.base_pose.heading - a.base_pose.heading));
  out.torso_height = lerp(a.torso_height, b.torso_height, s);
  for (std::size_t i = 0; i < out.joints.size() && i < b.joints.size(); ++i) {
    out.joints[i] = lerp(a.joints[i], b.joints[i], s);
  }
  out.gripper_aperture = lerp(a.gripper_aperture, b.gripper_aperture, s);
  out.head_pan = lerp(a.head_pan, b.head_pan, s);
  out.head_tilt = lerp(a.head_tilt, b.head_tilt, s);
  return out;
}

Timeline::Timeline(RobotState start)
{
  frames_.push_back({0.0, std::move(start)});
}

void Timeline::append(double duration, const RobotState & state)
{
  frames_.push_back({frames_.back().t + std::max(duration, 0.0), state});
}

void Timeline::mark(MarkKind kind, std::size_t label)
{
  marks_.push_back({duration(), kind, label});
}

RobotState Timeline::at(double t) const
{
  if (t >= duration()) {
    return frames_.back().state;
  }
  if (t <= 0.0) {
    // Zero-duration frames at t = 0 have already happened.
    auto it = std::upper_bound(
      frames_.begin(), frames_.end(), 0.0, [](double v, const Keyframe & k) { return v < k.t; });
    return std::prev(it)->state;
  }
  auto next = std::upper_bound(
    frames_.begin(), frames_.end(), t, [](double v, const Keyframe & k) { return v < k.t; });
  auto prev = std::prev(next);
  const double span = next->t - prev->t;
  return interpolate(prev->state, next->state, (t - prev->t) / span);
}

std::vector<RobotState> Timeline::sample(double dt) const
{
  const double total = duration();
  const auto steps = static_cast<std::size_t>(std::floor(total / dt + 1e-9));
  std::vector<RobotState> out;
  out.reserve(steps + 2);
  for (std::size_t i = 0; i <= steps; ++i) {
    out.push_back(at(std::min(static_cast<double>(i) * dt, total)));
  }
  if (static_cast<double>(steps) * dt < total - 1e-9) {
    out.push_back(final_state());
  } else {
    out.back() = final_state();
  }
  return out;
}

}  // namespace fwpd
