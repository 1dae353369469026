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

// fwpd: serve | replay | check-scene

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fwpd/config.hpp"
#include "fwpd/nav_planner.hpp"
#include "fwpd/replay.hpp"
#include "fwpd/scene.hpp"
#include "fwpd/server.hpp"

namespace
{

std::string default_scene()
{
  return std::string(FWPD_DATA_DIR) + "/scenes/fetchit_arena.json";
}

int serve(const fwpd::Config & config)
{
  const fwpd::Scene scene = fwpd::load_scene(config.scene_path);
  fwpd::Server server(config, scene);
  std::cerr << "fwpd: serving scene '" << scene.name << "' on ws://0.0.0.0:" << server.port()
            << " at " << config.tick_hz << " Hz\n";
  server.run();
  return 0;
}

int replay(const fwpd::Config & config, const std::string & script, const std::string & out)
{
  std::vector<fwpd::ScriptStep> steps;
  try {
    steps = fwpd::load_script(script);
  } catch (const fwpd::ScriptError & e) {
    std::cerr << "fwpd: " << e.what() << '\n';
    return 1;
  }
  const fwpd::Scene scene = fwpd::load_scene(config.scene_path);
  std::ofstream file;
  if (out != "-") {
    file.open(out);
    if (!file) {
      std::cerr << "fwpd: cannot write trace " << out << '\n';
      return 1;
    }
  }
  std::ostream & trace = out == "-" ? std::cout : file;
  const fwpd::ReplayResult result = fwpd::replay(config, scene, steps, trace);
  for (const std::string & f : result.failures) {
    std::cerr << "fwpd: " << f << '\n';
  }
  std::cerr << "fwpd: " << result.trace_lines << " trace lines, " << result.sim_time
            << " s simulated\n";
  return result.exit_code();
}

int check_scene(const fwpd::Config & config)
{
  const fwpd::Scene scene = fwpd::load_scene(config.scene_path);
  const fwpd::nav::OccupancyGrid grid =
    fwpd::nav::rasterize(scene, config.model, config.session.nav.resolution);
  std::size_t occupied = 0;
  for (bool c : grid.cells) {
    occupied += c ? 1 : 0;
  }
  std::cout << "scene '" << scene.name << "': " << scene.obstacles.size() << " obstacles";
  for (const fwpd::Box & b : scene.obstacles) {
    std::cout << (&b == &scene.obstacles.front() ? " (" : ", ") << b.label;
  }
  std::cout << (scene.obstacles.empty() ? "" : ")") << "; grid " << grid.width << "x"
            << grid.height << ", " << occupied << " occupied cells\n";
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Waypoint planning and execution server for a simulated mobile manipulator"};
  app.require_subcommand(1);

  fwpd::Config config;
  std::string scene_path = default_scene();
  std::string config_path;
  std::string script_path;
  std::string out_path = "-";

  auto add_common = [&](CLI::App * cmd) {
      cmd->add_option("--scene", scene_path, "Scene JSON file")->capture_default_str();
      cmd->add_option("--config", config_path, "JSON file with robot/planner overrides");
      cmd->add_option("--seed", config.seed, "RNG seed")->capture_default_str();
      cmd->add_option("--tick-hz", config.tick_hz, "Simulation tick rate")->capture_default_str();
    };

  CLI::App * serve_cmd = app.add_subcommand("serve", "Host operator sessions over WebSocket");
  add_common(serve_cmd);
  serve_cmd->add_option("--port", config.port, "Listening port")->capture_default_str();

  CLI::App * replay_cmd = app.add_subcommand("replay", "Run a script headless and write a trace");
  add_common(replay_cmd);
  replay_cmd->add_option("script", script_path, "Script JSON file")->required();
  replay_cmd->add_option("-o,--out", out_path, "Trace JSONL output, '-' for stdout")
  ->capture_default_str();

  CLI::App * check_cmd = app.add_subcommand("check-scene", "Validate a scene file");
  add_common(check_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    // Command-line flags win over the override file.
    const fwpd::Config flags = config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "fwpd: cannot open config " << config_path << '\n';
        return 1;
      }
      fwpd::apply_overrides(config, nlohmann::json::parse(in));
    }
    for (CLI::App * cmd : {serve_cmd, replay_cmd, check_cmd}) {
      if (cmd->count("--seed") > 0) {
        config.seed = flags.seed;
      }
      if (cmd->count("--tick-hz") > 0) {
        config.tick_hz = flags.tick_hz;
      }
    }
    if (serve_cmd->count("--port") > 0) {
      config.port = flags.port;
    }
    bool scene_flag = false;
    for (CLI::App * cmd : {serve_cmd, replay_cmd, check_cmd}) {
      scene_flag = scene_flag || cmd->count("--scene") > 0;
    }
    if (scene_flag || config.scene_path.empty()) {
      config.scene_path = scene_path;
    }
    config.validate();

    if (*serve_cmd) {
      return serve(config);
    }
    if (*replay_cmd) {
      return replay(config, script_path, out_path);
    }
    return check_scene(config);
  } catch (const std::exception & e) {
    std::cerr << "fwpd: " << e.what() << '\n';
    return 1;
  }
}
