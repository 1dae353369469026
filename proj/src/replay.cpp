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

#include "fwpd/replay.hpp"

#include <deque>
#include <fstream>

#include "fwpd/protocol.hpp"

namespace fwpd
{

using nlohmann::json;

std::vector<ScriptStep> parse_script(const json & script)
{
  if (!script.is_array()) {
    throw ScriptError("script must be a JSON list");
  }
  std::vector<ScriptStep> steps;
  double last_t = 0.0;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const json & entry = script[i];
    const std::string where = "script[" + std::to_string(i) + "]";
    if (!entry.is_object()) {
      throw ScriptError(where + ": entry must be an object");
    }
    ScriptStep step;
    if (entry.contains("t")) {
      if (!entry["t"].is_number()) {
        throw ScriptError(where + ": 't' must be a number");
      }
      step.t = entry["t"].get<double>();
    } else {
      step.t = last_t;
    }
    if (step.t < last_t) {
      throw ScriptError(where + ": timestamps must be non-decreasing");
    }
    last_t = step.t;
    if (entry.contains("expect")) {
      if (!entry["expect"].is_string()) {
        throw ScriptError(where + ": 'expect' must be a status string");
      }
      step.expect = entry["expect"].get<std::string>();
    } else {
      step.message = entry;
      step.message.erase("t");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::vector<ScriptStep> load_script(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScriptError("cannot open script " + path.string());
  }
  json script;
  try {
    script = json::parse(in);
  } catch (const json::parse_error & e) {
    throw ScriptError(path.string() + ": " + e.what());
  }
  return parse_script(script);
}

bool traced(const json & outbound)
{
  return outbound.value("op", "") != "robot_state";
}

ReplayResult replay(
  const Config & config, const Scene & scene, const std::vector<ScriptStep> & steps,
  std::ostream & trace, ReplayOptions options)
{
  ReplayResult result;
  Session session("replay", scene, config.model, config.seed, config.session);
  std::deque<std::string> expected;

  Dispatcher dispatcher(session, [&](const json & message) {
      if (!traced(message)) {
        return;
      }
      trace << message.dump() << '\n';
      ++result.trace_lines;
      if (message.value("op", "") == "status" && !expected.empty()) {
        const std::string text = message.value("text", "");
        if (text != expected.front()) {
          result.failures.push_back(
            "expected status \"" + expected.front() + "\", got \"" + text + "\"");
        }
        expected.pop_front();
      }
    });
  dispatcher.start();

  const double dt = 1.0 / config.tick_hz;
  std::size_t next = 0;
  std::uint64_t ticks = 0;
  for (;;) {
    const double now = static_cast<double>(ticks) * dt;
    while (next < steps.size() && steps[next].t <= now + 1e-9) {
      const ScriptStep & step = steps[next++];
      if (step.expect) {
        expected.push_back(*step.expect);
      } else {
        dispatcher.handle(step.message);
      }
    }
    if (next == steps.size() && session.idle()) {
      break;
    }
    if (now >= options.max_sim_time) {
      result.timed_out = true;
      break;
    }
    dispatcher.tick(dt);
    ++ticks;
  }
  for (const std::string & text : expected) {
    result.failures.push_back("expected status \"" + text + "\" was never emitted");
  }
  if (result.timed_out) {
    result.failures.push_back("session still busy at the simulated-time cap");
  }
  result.sim_time = session.clock();
  trace.flush();
  return result;
}

}  // namespace fwpd
