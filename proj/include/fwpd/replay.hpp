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

#ifndef FWPD_REPLAY_HPP_
#define FWPD_REPLAY_HPP_

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fwpd/config.hpp"

namespace fwpd
{

class ScriptError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * One script entry. Either an inbound wire message sent at time `t`, or an
 * expectation on the next status string emitted after `t`.
 */
struct ScriptStep
{
  double t{0.0};
  nlohmann::json message;
  std::optional<std::string> expect;
};

/// Parses [{"t": s, "op": ..., ...} | {"t": s, "expect": "status text"}, ...].
std::vector<ScriptStep> parse_script(const nlohmann::json & script);
std::vector<ScriptStep> load_script(const std::filesystem::path & path);

struct ReplayResult
{
  std::vector<std::string> failures;  ///< unmet or mismatched expectations
  std::size_t trace_lines{0};
  double sim_time{0.0};
  bool timed_out{false};              ///< still busy at the simulated-time cap

  [[nodiscard]] int exit_code() const { return failures.empty() ? 0 : 2; }
};

struct ReplayOptions
{
  double max_sim_time{3600.0};  ///< stop ticking after this much simulated time
};

/**
 * Runs `steps` headless against a fresh session and writes the trace as
 * JSONL: every outbound message except the per-tick robot_state broadcast.
 * Ticks at config.tick_hz until the script is exhausted and the session is
 * idle.
 */
ReplayResult replay(
  const Config & config, const Scene & scene, const std::vector<ScriptStep> & steps,
  std::ostream & trace, ReplayOptions options = {});

/// Whether an outbound message belongs in a trace.
bool traced(const nlohmann::json & outbound);

}  // namespace fwpd

#endif  // FWPD_REPLAY_HPP_
