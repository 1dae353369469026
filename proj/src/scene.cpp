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

#include "fwpd/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fwpd
{

namespace
{

using nlohmann::json;

[[noreturn]] void fail(const std::string & path, const std::string & what)
{
  throw SceneError(path + ": " + what);
}

double number_at(const json & obj, const std::string & key, const std::string & path)
{
  if (!obj.contains(key)) {
    fail(path + "." + key, "missing");
  }
  const json & v = obj.at(key);
  if (!v.is_number()) {
    fail(path + "." + key, "expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    fail(path + "." + key, "not finite");
  }
  return d;
}

Interval interval_at(const json & obj, const std::string & key, const std::string & path)
{
  const std::string here = path + "." + key;
  if (!obj.contains(key)) {
    fail(here, "missing");
  }
  const json & v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(here, "expected [lo, hi]");
  }
  Interval iv{v[0].get<double>(), v[1].get<double>()};
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    fail(here, "not finite");
  }
  return iv;
}

}  // namespace

Pose2 Scene::robot_start() const
{
  if (start_pose) {
    return *start_pose;
  }
  return {bounds.u.center(), bounds.v.center(), 0.0};
}

void validate_scene(const Scene & scene)
{
  if (scene.bounds.u.empty() || scene.bounds.u.width() <= 0.0) {
    fail("bounds.x", "empty interval");
  }
  if (scene.bounds.v.empty() || scene.bounds.v.width() <= 0.0) {
    fail("bounds.y", "empty interval");
  }
  for (std::size_t i = 0; i < scene.obstacles.size(); ++i) {
    const Box & b = scene.obstacles[i];
    const std::string path = "obstacles[" + std::to_string(i) + "]";
    if (b.x.empty()) {
      fail(path + ".x", "empty interval");
    }
    if (b.y.empty()) {
      fail(path + ".y", "empty interval");
    }
    if (b.z.empty()) {
      fail(path + ".z", "empty interval");
    }
    if (b.x.lo < scene.bounds.u.lo || b.x.hi > scene.bounds.u.hi ||
      b.y.lo < scene.bounds.v.lo || b.y.hi > scene.bounds.v.hi)
    {
      fail(path, "obstacle '" + b.label + "' lies outside the scene bounds");
    }
  }
  if (scene.start_pose) {
    const Pose2 & p = *scene.start_pose;
    if (!scene.bounds.contains(p.position())) {
      fail("start_pose", "outside the scene bounds");
    }
  }
}

Scene scene_from_json(const json & doc)
{
  if (!doc.is_object()) {
    fail("$", "expected an object");
  }
  Scene scene;
  scene.name = doc.value("name", std::string{});
  if (!doc.contains("bounds") || !doc.at("bounds").is_object()) {
    fail("bounds", "missing or not an object");
  }
  scene.bounds.u = interval_at(doc.at("bounds"), "x", "bounds");
  scene.bounds.v = interval_at(doc.at("bounds"), "y", "bounds");
  if (doc.contains("floor_z")) {
    scene.floor_z = number_at(doc, "floor_z", "$");
  }
  if (doc.contains("obstacles")) {
    const json & obs = doc.at("obstacles");
    if (!obs.is_array()) {
      fail("obstacles", "expected an array");
    }
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const std::string path = "obstacles[" + std::to_string(i) + "]";
      const json & o = obs[i];
      if (!o.is_object()) {
        fail(path, "expected an object");
      }
      Box b;
      b.x = interval_at(o, "x", path);
      b.y = interval_at(o, "y", path);
      b.z = interval_at(o, "z", path);
      if (o.contains("label")) {
        if (!o.at("label").is_string()) {
          fail(path + ".label", "expected a string");
        }
        b.label = o.at("label").get<std::string>();
      }
      scene.obstacles.push_back(std::move(b));
    }
  }
  if (doc.contains("start_pose")) {
    const json & sp = doc.at("start_pose");
    if (!sp.is_object()) {
      fail("start_pose", "expected an object");
    }
    scene.start_pose = Pose2{
      number_at(sp, "x", "start_pose"), number_at(sp, "y", "start_pose"),
      sp.contains("heading") ? number_at(sp, "heading", "start_pose") : 0.0};
  }
  validate_scene(scene);
  return scene;
}

json scene_to_json(const Scene & scene)
{
  json doc;
  doc["name"] = scene.name;
  doc["bounds"] = {
    {"x", {scene.bounds.u.lo, scene.bounds.u.hi}},
    {"y", {scene.bounds.v.lo, scene.bounds.v.hi}}};
  doc["floor_z"] = scene.floor_z;
  doc["obstacles"] = json::array();
  for (const Box & b : scene.obstacles) {
    doc["obstacles"].push_back(
      {{"x", {b.x.lo, b.x.hi}}, {"y", {b.y.lo, b.y.hi}}, {"z", {b.z.lo, b.z.hi}},
        {"label", b.label}});
  }
  if (scene.start_pose) {
    doc["start_pose"] = {
      {"x", scene.start_pose->x}, {"y", scene.start_pose->y},
      {"heading", scene.start_pose->heading}};
  }
  return doc;
}

Scene load_scene(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw SceneError(path.string() + ": cannot open scene file");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error & e) {
    throw SceneError(path.string() + ": malformed JSON: " + e.what());
  }
  try {
    return scene_from_json(doc);
  } catch (const SceneError & e) {
    throw SceneError(path.string() + ": " + e.what());
  }
}

}  // namespace fwpd
