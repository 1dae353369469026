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

#include "fwpd/kinematics.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

namespace fwpd::kinematics
{

ArmTarget fk(const RobotModel & model, const JointVector & joints, double torso_height)
{
  double phi = 0.0;
  double d = 0.0;
  double z = model.shoulder_z(torso_height);
  for (std::size_t i = 0; i < model.joint_count(); ++i) {
    phi += joints[i];
    d += model.link_lengths[i] * std::cos(phi);
    z += model.link_lengths[i] * std::sin(phi);
  }
  return {d, z, phi};
}

std::vector<Vec2> chain_points(
  const RobotModel & model, const JointVector & joints, double torso_height)
{
  std::vector<Vec2> pts;
  pts.reserve(model.joint_count() + 1);
  Vec2 p{0.0, model.shoulder_z(torso_height)};
  pts.push_back(p);
  double phi = 0.0;
  for (std::size_t i = 0; i < model.joint_count(); ++i) {
    phi += joints[i];
    p = p + model.link_lengths[i] * Vec2{std::cos(phi), std::sin(phi)};
    pts.push_back(p);
  }
  return pts;
}

PoseError pose_error(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const ArmTarget & target)
{
  const ArmTarget got = fk(model, joints, torso_height);
  return {std::hypot(got.d - target.d, got.z - target.z), std::abs(wrap_angle(got.pitch - target.pitch))};
}

namespace
{

bool converged(const PoseError & e, const IkOptions & o)
{
  return e.position <= o.tol_pos && e.angle <= o.tol_ang;
}

// One damped least-squares descent from q. Returns true when q ends within
// tolerance; q is left at the final iterate either way.
bool descend(
  const RobotModel & model, const ArmTarget & target, double torso_height, JointVector & q,
  const IkOptions & o)
{
  const std::size_t n = model.joint_count();
  Eigen::MatrixXd jac(3, n);
  Eigen::Vector3d err;
  const double lambda2 = o.damping * o.damping;
  // Polish to well below tolerance so callers can rely on the bound.
  const double polish_pos = 1e-3 * o.tol_pos;
  const double polish_ang = 1e-3 * o.tol_ang;

  for (int it = 0; it < o.iterations; ++it) {
    const ArmTarget cur = fk(model, q, torso_height);
    err << target.d - cur.d, target.z - cur.z, wrap_angle(target.pitch - cur.pitch);
    if (std::hypot(err(0), err(1)) <= polish_pos && std::abs(err(2)) <= polish_ang) {
      return true;
    }
    // Column i: effect of joint i on (d, z, pitch); joint i rotates every
    // point beyond it about its own location.
    const std::vector<Vec2> pts = chain_points(model, q, torso_height);
    const Vec2 tip = pts.back();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 r = tip - pts[i];
      jac(0, static_cast<Eigen::Index>(i)) = -r.y;
      jac(1, static_cast<Eigen::Index>(i)) = r.x;
      jac(2, static_cast<Eigen::Index>(i)) = 1.0;
    }
    const Eigen::Matrix3d jjt = jac * jac.transpose() + lambda2 * Eigen::Matrix3d::Identity();
    const Eigen::VectorXd dq = jac.transpose() * jjt.ldlt().solve(err);
    for (std::size_t i = 0; i < n; ++i) {
      q[i] = model.joint_limits[i].clamp(q[i] + dq(static_cast<Eigen::Index>(i)));
    }
  }
  return converged(pose_error(model, q, torso_height, target), o);
}

/// Shared by ik() and reach_precheck() so the two never disagree. The slack
/// absorbs rounding in the link-length sum (0.35 + 0.30 + 0.15 < 0.8).
bool beyond_reach(const RobotModel & model, double torso_height, const ArmTarget & target)
{
  const double dist = std::hypot(target.d, target.z - model.shoulder_z(torso_height));
  return !(dist <= model.reach() * (1.0 + 1e-12));
}

}  // namespace

std::optional<JointVector> ik(
  const RobotModel & model, const ArmTarget & target, double torso_height,
  const JointVector & seed, std::uint64_t rng_seed, const IkOptions & options)
{
  if (beyond_reach(model, torso_height, target)) {
    return std::nullopt;
  }

  JointVector q = seed;
  q.resize(model.joint_count(), 0.0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = model.joint_limits[i].clamp(q[i]);
  }
  if (converged(pose_error(model, q, torso_height, target), options)) {
    return q;
  }
  if (descend(model, target, torso_height, q, options)) {
    return q;
  }

  std::mt19937_64 rng(rng_seed);
  for (int r = 0; r < options.restarts; ++r) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::uniform_real_distribution<double> u(model.joint_limits[i].lo, model.joint_limits[i].hi);
      q[i] = u(rng);
    }
    if (descend(model, target, torso_height, q, options)) {
      return q;
    }
  }
  return std::nullopt;
}

Reach reach_precheck(const RobotModel & model, const RobotState & state, const ArmTarget & target)
{
  return beyond_reach(model, state.torso_height, target) ? Reach::OutOfReach : Reach::InReach;
}

std::vector<ArmPlaneObstacle> slice_scene(
  const Scene & scene, const RobotModel & model, const Pose2 & base_pose)
{
  const double cx = std::cos(base_pose.heading);
  const double cy = std::sin(base_pose.heading);
  // Near-zero direction components are treated as exactly parallel.
  constexpr double parallel = 1e-12;

  std::vector<ArmPlaneObstacle> out;
  for (const Box & box : scene.obstacles) {
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    bool hit = true;
    const auto slab = [&](double origin, double dir, const Interval & iv) {
        if (std::abs(dir) < parallel) {
          if (!iv.contains(origin)) {
            hit = false;
          }
          return;
        }
        double a = (iv.lo - origin) / dir;
        double b = (iv.hi - origin) / dir;
        if (a > b) {
          std::swap(a, b);
        }
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
      };
    slab(base_pose.x, cx, box.x);
    slab(base_pose.y, cy, box.y);
    if (!hit || t0 > t1) {
      continue;
    }
    out.push_back(
      {{t0 - model.shoulder_forward_offset, t1 - model.shoulder_forward_offset},
        {box.z.lo - scene.floor_z, box.z.hi - scene.floor_z},
        box.label});
  }
  return out;
}

double arm_clearance(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const std::vector<ArmPlaneObstacle> & obstacles)
{
  double best = std::numeric_limits<double>::infinity();
  if (obstacles.empty()) {
    return best;
  }
  const std::vector<Vec2> pts = chain_points(model, joints, torso_height);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (const ArmPlaneObstacle & o : obstacles) {
      best = std::min(best, segment_rect_distance(pts[i], pts[i + 1], o.rect()) - model.link_radius);
    }
  }
  return best;
}

bool arm_collides(
  const RobotModel & model, const JointVector & joints, double torso_height,
  const std::vector<ArmPlaneObstacle> & obstacles)
{
  return arm_clearance(model, joints, torso_height, obstacles) <= 0.0;
}

double sweep_bound(const RobotModel & model, const JointVector & delta)
{
  // Joint i rotates everything distal to it; the farthest distal point is at
  // most the summed remaining link length away.
  double bound = 0.0;
  double distal = model.reach();
  for (std::size_t i = 0; i < model.joint_count(); ++i) {
    bound += std::abs(delta[i]) * distal;
    distal -= model.link_lengths[i];
  }
  return bound;
}

}  // namespace fwpd::kinematics
