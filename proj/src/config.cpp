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

#include "fwpd/config.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fwpd
{

using nlohmann::json;

namespace
{

Interval interval(const json & j, const std::string & key)
{
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("robot." + key + " must be [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

void apply_robot(RobotModel & m, const json & r)
{
  for (const auto & [key, v] : r.items()) {
    if (key == "base_radius") {
      m.base_radius = v.get<double>();
    } else if (key == "torso_base_height") {
      m.torso_base_height = v.get<double>();
    } else if (key == "torso_range") {
      m.torso_range = interval(v, key);
    } else if (key == "shoulder_forward_offset") {
      m.shoulder_forward_offset = v.get<double>();
    } else if (key == "link_lengths") {
      m.link_lengths = v.get<std::vector<double>>();
    } else if (key == "joint_limits") {
      m.joint_limits.clear();
      for (const json & lim : v) {
        m.joint_limits.push_back(interval(lim, key));
      }
    } else if (key == "link_radius") {
      m.link_radius = v.get<double>();
    } else if (key == "gripper_max_opening") {
      m.gripper_max_opening = v.get<double>();
    } else if (key == "head_pan_limits") {
      m.head_pan_limits = interval(v, key);
    } else if (key == "head_tilt_limits") {
      m.head_tilt_limits = interval(v, key);
    } else if (key == "head_offset_z") {
      m.head_offset_z = v.get<double>();
    } else if (key == "base_max_speed") {
      m.base_max_speed = v.get<double>();
    } else if (key == "base_max_turn_rate") {
      m.base_max_turn_rate = v.get<double>();
    } else if (key == "joint_max_speed") {
      m.joint_max_speed = v.get<double>();
    } else if (key == "torso_max_speed") {
      m.torso_max_speed = v.get<double>();
    } else if (key == "gripper_rate") {
      m.gripper_rate = v.get<double>();
    } else {
      throw std::invalid_argument("unknown robot field '" + key + "'");
    }
  }
}

void apply_planner(SessionOptions & s, const json & p)
{
  for (const auto & [key, v] : p.items()) {
    if (key == "segment_timeout_ms") {
      s.manip.segment_timeout = std::chrono::milliseconds(v.get<std::int64_t>());
    } else if (key == "node_cap") {
      s.manip.node_cap = v.get<std::size_t>();
    } else if (key == "rrt_step") {
      s.manip.rrt_step = v.get<double>();
    } else if (key == "step_max") {
      s.manip.step_max = v.get<double>();
    } else if (key == "shortcut_attempts") {
      s.manip.shortcut_attempts = v.get<int>();
    } else if (key == "grid_resolution") {
      s.nav.resolution = v.get<double>();
    } else {
      throw std::invalid_argument("unknown planner field '" + key + "'");
    }
  }
}

}  // namespace

void Config::validate() const
{
  if (!(tick_hz > 0.0)) {
    throw std::invalid_argument("tick rate must be > 0 Hz");
  }
  model.validate();
}

void apply_overrides(Config & config, const json & overrides)
{
  if (!overrides.is_object()) {
    throw std::invalid_argument("configuration must be a JSON object");
  }
  try {
    for (const auto & [key, v] : overrides.items()) {
      if (key == "robot") {
        apply_robot(config.model, v);
      } else if (key == "planner") {
        apply_planner(config.session, v);
      } else if (key == "port") {
        config.port = v.get<std::uint16_t>();
      } else if (key == "tick_hz") {
        config.tick_hz = v.get<double>();
      } else if (key == "seed") {
        config.seed = v.get<std::uint64_t>();
      } else if (key == "scene") {
        config.scene_path = v.get<std::string>();
      } else {
        throw std::invalid_argument("unknown configuration field '" + key + "'");
      }
    }
  } catch (const json::exception & e) {
    throw std::invalid_argument(std::string("configuration: ") + e.what());
  }
  config.validate();
}

std::filesystem::path log_directory()
{
  if (const char * dir = std::getenv("FWPD_LOG_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  return "logs";
}

}  // namespace fwpd
