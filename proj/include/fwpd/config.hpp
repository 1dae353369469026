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

#ifndef FWPD_CONFIG_HPP_
#define FWPD_CONFIG_HPP_

#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "fwpd/robot.hpp"
#include "fwpd/session.hpp"

namespace fwpd
{

/// Process configuration. Everything but the scene path has a default.
struct Config
{
  std::filesystem::path scene_path;
  RobotModel model;
  std::uint16_t port{9090};
  double tick_hz{20.0};
  std::uint64_t seed{0};
  SessionOptions session;

  /// Throws std::invalid_argument on a bad tick rate or robot model.
  void validate() const;
};

/**
 * Applies a JSON override document:
 * {"robot": {field: value, ...}, "planner": {"segment_timeout_ms", "node_cap",
 * "rrt_step", "step_max", "shortcut_attempts"}, "port", "tick_hz", "seed"}.
 * Unknown keys throw std::invalid_argument.
 */
void apply_overrides(Config & config, const nlohmann::json & overrides);

/// FWPD_LOG_DIR when set, otherwise "logs" under the working directory.
std::filesystem::path log_directory();

}  // namespace fwpd

#endif  // FWPD_CONFIG_HPP_
