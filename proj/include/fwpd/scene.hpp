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

#ifndef FWPD_SCENE_HPP_
#define FWPD_SCENE_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fwpd/geometry.hpp"

namespace fwpd
{

/// Axis-aligned obstacle box.
struct Box
{
  Interval x;
  Interval y;
  Interval z;
  std::string label;

  [[nodiscard]] Rect footprint() const { return {x, y}; }
};

/// Preloaded geometric world model.
struct Scene
{
  std::string name;
  Rect bounds;
  double floor_z{0.0};
  std::vector<Box> obstacles;
  /// Where a new session places the robot; the bounds center when absent.
  std::optional<Pose2> start_pose;

  [[nodiscard]] Pose2 robot_start() const;
};

/// Load/validation failure. `what()` carries the offending field path.
class SceneError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Throws SceneError on the first violated invariant.
void validate_scene(const Scene & scene);

Scene scene_from_json(const nlohmann::json & doc);
nlohmann::json scene_to_json(const Scene & scene);

/// Reads, parses and validates a scene file.
Scene load_scene(const std::filesystem::path & path);

}  // namespace fwpd

#endif  // FWPD_SCENE_HPP_
