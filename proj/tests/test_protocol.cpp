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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fwpd/protocol.hpp"
#include "fwpd/replay.hpp"
#include "test_support.hpp"

using namespace fwpd;
using nlohmann::json;

namespace
{

class ProtocolTest : public ::testing::Test
{
protected:
  Session session{"p", test::arena_at_table(), RobotModel{}, 5};
  std::vector<json> out;
  Dispatcher dispatcher{session, [this](const json & m) {out.push_back(m);}};

  std::vector<json> send(const json & m)
  {
    out.clear();
    dispatcher.handle(m);
    return out;
  }

  static std::vector<json> with_op(const std::vector<json> & msgs, const std::string & op)
  {
    std::vector<json> r;
    for (const json & m : msgs) {
      if (m.at("op") == op) {
        r.push_back(m);
      }
    }
    return r;
  }

  static json arm_create(double z)
  {
    return {{"op", "create_waypoint"}, {"target", {{"d", 0.45}, {"z", z}, {"pitch", test::kDown}}}};
  }
};

std::vector<json> lines(const std::string & jsonl)
{
  std::vector<json> r;
  std::istringstream in(jsonl);
  for (std::string line; std::getline(in, line);) {
    r.push_back(json::parse(line));
  }
  return r;
}

std::string run_replay(const std::string & script, Config config = {})
{
  const Scene scene = test::arena_at_table();
  std::ostringstream trace;
  replay(config, scene, load_script(test::data_path("scripts/" + script)), trace);
  return trace.str();
}

}  // namespace

TEST_F(ProtocolTest, StartSendsRobotStateThenStatus)
{
  dispatcher.start();
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].at("op"), "robot_state");
  EXPECT_EQ(out[1].at("op"), "status");
  EXPECT_EQ(out[1].at("text"), "Ready to plan!");
}

TEST_F(ProtocolTest, EveryInboundMessageIsAnswered)
{
  const std::vector<json> inputs{
    arm_create(0.95),
    {{"op", "approve"}},
    {{"op", "deny"}},
    {{"op", "look_at"}, {"x", 1.0}, {"y", 0.0}, {"z", 1.0}},
    {{"op", "set_gripper"}, {"id", 1}, {"value", 0.5}},
    {{"op", "set_gripper"}, {"id", 77}, {"value", 0.5}},
    {{"op", "remove_last"}, {"list", "navigation"}},
    {{"op", "frobnicate"}},
    json::array({1, 2}),
    {{"op", "create_waypoint"}},
    {{"op", "move_waypoint"}, {"id", 1}, {"target", {{"d", 0.5}, {"z", 0.95}}}},
  };
  for (const json & m : inputs) {
    const auto r = send(m);
    EXPECT_FALSE(r.empty()) << m.dump();
    for (const json & o : r) {
      EXPECT_TRUE(o.contains("t")) << o.dump();
    }
  }
}

TEST_F(ProtocolTest, UnknownOpLeavesSessionUntouched)
{
  send(arm_create(0.95));
  const auto log_size = session.event_log().size();
  const RobotState robot = session.robot();
  const auto r = send({{"op", "teleport"}, {"x", 1}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].at("op"), "error");
  EXPECT_EQ(r[0].at("code"), "unknown_op");
  EXPECT_EQ(session.event_log().size(), log_size);
  EXPECT_EQ(session.robot(), robot);
  EXPECT_EQ(session.list(WaypointKind::Manipulation).size(), 1u);
}

TEST_F(ProtocolTest, MalformedTextIsBadMessage)
{
  out.clear();
  dispatcher.handle_text("{not json");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].at("code"), "bad_message");
  const auto r = send({{"op", "create_waypoint"}, {"target", {{"d", "far"}, {"z", 1.0}}}});
  EXPECT_EQ(with_op(r, "error").at(0).at("code"), "bad_message");
  EXPECT_TRUE(session.list(WaypointKind::Manipulation).empty());
}

TEST_F(ProtocolTest, CreateAndRemoveLastPublishUpdates)
{
  auto r = send({{"op", "create_waypoint"}, {"pose", {{"x", 0.0}, {"y", 0.8}}}});
  auto updates = with_op(r, "waypoint_update");
  ASSERT_EQ(updates.size(), 1u);
  EXPECT_EQ(updates[0].at("waypoint").at("label"), 1);
  EXPECT_EQ(updates[0].at("waypoint").at("list"), "navigation");
  const auto id = updates[0].at("waypoint").at("id").get<WaypointId>();

  r = send({{"op", "remove_last"}, {"list", "navigation"}});
  updates = with_op(r, "waypoint_update");
  ASSERT_EQ(updates.size(), 1u);
  EXPECT_EQ(updates[0].at("id"), id);
  EXPECT_EQ(updates[0].at("removed"), true);

  r = send({{"op", "remove_last"}, {"list", "navigation"}});
  EXPECT_EQ(with_op(r, "error").at(0).at("code"), "empty_list");
}

TEST_F(ProtocolTest, InsertAfterRepublishesShiftedLabels)
{
  send(arm_create(0.95));
  send(arm_create(0.9));
  send(arm_create(0.85));
  json m = arm_create(1.0);
  m["insert_after"] = 1;
  const auto updates = with_op(send(m), "waypoint_update");
  // New waypoint 2 plus the two that shifted to 3 and 4.
  ASSERT_EQ(updates.size(), 3u);
  std::vector<int> labels;
  for (const json & u : updates) {
    labels.push_back(u.at("waypoint").at("label"));
  }
  std::sort(labels.begin(), labels.end());
  EXPECT_EQ(labels, (std::vector<int>{2, 3, 4}));
}

TEST_F(ProtocolTest, RefusedMoveEchoesConfirmedPose)
{
  send({{"op", "create_waypoint"}, {"pose", {{"x", 0.0}, {"y", 0.8}}}});
  const auto r = send(
    {{"op", "move_waypoint"}, {"id", 1}, {"pose", {{"x", 1.5}, {"y", 0.0}}}});
  EXPECT_EQ(with_op(r, "error").at(0).at("code"), "placement_blocked");
  const auto updates = with_op(r, "waypoint_update");
  ASSERT_EQ(updates.size(), 1u);
  EXPECT_EQ(updates[0].at("waypoint").at("pose").at("x"), 0.0);
  EXPECT_EQ(updates[0].at("waypoint").at("pose").at("y"), 0.8);
}

TEST_F(ProtocolTest, OneUpdatePerColorChange)
{
  send(arm_create(0.95));
  const json far{
    {"op", "move_waypoint"}, {"id", 1}, {"target", {{"d", 3.0}, {"z", 0.95}}}};
  auto updates = with_op(send(far), "waypoint_update");
  ASSERT_EQ(updates.size(), 1u);
  EXPECT_EQ(updates[0].at("waypoint").at("color_state"), "warning");

  // Planning fails on the unreachable waypoint: exactly one update to error.
  send({{"op", "request_plan"}, {"list", "manipulation"}});
  out.clear();
  dispatcher.tick(0.05);
  updates = with_op(out, "waypoint_update");
  ASSERT_EQ(updates.size(), 1u);
  EXPECT_EQ(updates[0].at("waypoint").at("color_state"), "error");
  // Further idle ticks publish nothing but robot_state.
  out.clear();
  dispatcher.tick(0.05);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].at("op"), "robot_state");
}

TEST_F(ProtocolTest, ProposalCarriesGhost)
{
  send(arm_create(0.95));
  send(arm_create(0.85));
  send({{"op", "request_plan"}, {"list", "manipulation"}});
  out.clear();
  dispatcher.tick(0.05);
  const auto p = with_op(out, "plan_proposal");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].at("waypoints"), 2);
  EXPECT_GT(p[0].at("ghost").size(), 1u);
  const auto st = with_op(out, "status");
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].at("text"), "Plan Successful!");
}

TEST(Replay, EmptyScriptTracesOneStatus)
{
  std::ostringstream trace;
  const auto r = replay(Config{}, test::arena(), {}, trace);
  EXPECT_EQ(r.exit_code(), 0);
  const auto msgs = lines(trace.str());
  ASSERT_EQ(msgs.size(), 1u);
  EXPECT_EQ(msgs[0].at("op"), "status");
  EXPECT_EQ(msgs[0].at("text"), "Ready to plan!");
}

TEST(Replay, PickAndPlaceMatchesGoldenStatuses)
{
  std::vector<std::string> statuses;
  for (const json & m : lines(run_replay("pick_and_place.json"))) {
    if (m.at("op") == "status") {
      statuses.push_back(m.at("text"));
    }
  }
  std::ifstream golden(std::string(FWPD_GOLDEN_DIR) + "/pick_and_place.status");
  ASSERT_TRUE(golden.good());
  std::vector<std::string> expected;
  for (std::string line; std::getline(golden, line);) {
    expected.push_back(line);
  }
  EXPECT_EQ(statuses, expected);
}

TEST(Replay, TracesAreByteIdentical)
{
  const std::string a = run_replay("pick_and_place.json");
  EXPECT_EQ(a, run_replay("pick_and_place.json"));
  EXPECT_FALSE(a.empty());
}

TEST(Replay, BlockedVariantFailsAtTwo)
{
  const Scene scene = test::arena_at_table();
  std::ostringstream trace;
  const auto r = replay(
    Config{}, scene, load_script(test::data_path("scripts/pick_and_place_blocked.json")), trace);
  EXPECT_EQ(r.exit_code(), 0);
  json last_wp2;
  for (const json & m : lines(trace.str())) {
    if (m.at("op") == "waypoint_update" && m.contains("waypoint") &&
      m.at("waypoint").at("label") == 2)
    {
      last_wp2 = m.at("waypoint");
    }
  }
  EXPECT_EQ(last_wp2.at("color_state"), "error");
}

TEST(Replay, UnmetExpectationFails)
{
  const auto steps = parse_script(json::parse(R"([{"t": 0.0, "expect": "Planning..."}])"));
  std::ostringstream trace;
  EXPECT_EQ(replay(Config{}, test::arena(), steps, trace).exit_code(), 2);
}

TEST(Replay, ScriptValidation)
{
  EXPECT_THROW(parse_script(json::object()), ScriptError);
  EXPECT_THROW(parse_script(json::parse(R"([{"t": 1}, {"t": 0.5}])")), ScriptError);
  EXPECT_THROW(parse_script(json::parse(R"([{"t": 0, "expect": 3}])")), ScriptError);
  EXPECT_THROW(load_script("/nonexistent/script.json"), ScriptError);
}

TEST(Replay, ServerPathMatchesReplay)
{
  // Feed the same script as raw text frames through a dispatcher, ticking on
  // the same schedule, and compare with the replayer's trace.
  const Config config;
  const Scene scene = test::arena_at_table();
  const auto steps = load_script(test::data_path("scripts/pick_and_place.json"));

  std::ostringstream expected;
  replay(config, scene, steps, expected);

  Session session("replay", scene, config.model, config.seed, config.session);
  std::ostringstream served;
  Dispatcher d(session, [&](const json & m) {
      if (traced(m)) {
        served << m.dump() << '\n';
      }
    });
  d.start();
  const double dt = 1.0 / config.tick_hz;
  std::size_t next = 0;
  for (std::uint64_t ticks = 0;; ++ticks) {
    const double now = static_cast<double>(ticks) * dt;
    while (next < steps.size() && steps[next].t <= now + 1e-9) {
      if (!steps[next].expect) {
        d.handle_text(steps[next].message.dump());
      }
      ++next;
    }
    if (next == steps.size() && session.idle()) {
      break;
    }
    ASSERT_LT(now, 3600.0);
    d.tick(dt);
  }
  EXPECT_EQ(served.str(), expected.str());
}

TEST(Config, OverridesApply)
{
  Config c;
  apply_overrides(c, json::parse(R"({
    "robot": {"joint_max_speed": 0.5, "base_radius": 0.25},
    "planner": {"node_cap": 1234, "grid_resolution": 0.1},
    "tick_hz": 50, "seed": 9, "port": 0})"));
  EXPECT_EQ(c.model.joint_max_speed, 0.5);
  EXPECT_EQ(c.model.base_radius, 0.25);
  EXPECT_EQ(c.session.manip.node_cap, 1234u);
  EXPECT_EQ(c.session.nav.resolution, 0.1);
  EXPECT_EQ(c.tick_hz, 50.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.port, 0);
  EXPECT_NO_THROW(c.validate());
  EXPECT_THROW(apply_overrides(c, json::parse(R"({"colour": 1})")), std::invalid_argument);
  EXPECT_THROW(apply_overrides(c, json::parse(R"({"robot": {"wings": 2}})")), std::invalid_argument);
  c.tick_hz = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Config, SlowerJointsLengthenExecution)
{
  Config slow;
  apply_overrides(slow, json::parse(R"({"robot": {"joint_max_speed": 0.25}})"));
  const Scene scene = test::arena_at_table();
  const auto steps = load_script(test::data_path("scripts/pick_and_place.json"));
  std::ostringstream a;
  std::ostringstream b;
  const auto fast_r = replay(Config{}, scene, steps, a);
  const auto slow_r = replay(slow, scene, steps, b);
  EXPECT_EQ(fast_r.exit_code(), 0);
  EXPECT_EQ(slow_r.exit_code(), 0);
  EXPECT_GT(slow_r.sim_time, fast_r.sim_time);
}
