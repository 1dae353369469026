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

#ifndef FWPD_GEOMETRY_HPP_
#define FWPD_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fwpd
{

/// Closed interval [lo, hi].
struct Interval
{
  double lo{0.0};
  double hi{0.0};

  [[nodiscard]] bool empty() const { return !(lo <= hi); }
  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double center() const { return 0.5 * (lo + hi); }
  [[nodiscard]] bool contains(double v) const { return lo <= v && v <= hi; }
  [[nodiscard]] double clamp(double v) const { return std::clamp(v, lo, hi); }
  [[nodiscard]] bool intersects(const Interval & other) const
  {
    return lo <= other.hi && other.lo <= hi;
  }

  friend bool operator==(const Interval &, const Interval &) = default;
};

struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2 &, const Vec2 &) = default;

  [[nodiscard]] double dot(Vec2 o) const { return x * o.x + y * o.y; }
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

/// Floor-locked planar pose. Heading is measured counter-clockwise from +x.
struct Pose2
{
  double x{0.0};
  double y{0.0};
  double heading{0.0};

  [[nodiscard]] Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose2 &, const Pose2 &) = default;
};

/// Axis-aligned rectangle in some 2D frame.
struct Rect
{
  Interval u;
  Interval v;

  [[nodiscard]] bool contains(Vec2 p) const { return u.contains(p.x) && v.contains(p.y); }
};

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a + std::numbers::pi, two_pi);
  if (a <= 0.0) {
    a += two_pi;
  }
  return a - std::numbers::pi;
}

/// Euclidean distance from a point to a closed rectangle (0 inside).
inline double point_rect_distance(Vec2 p, const Rect & r)
{
  const double dx = std::max({r.u.lo - p.x, 0.0, p.x - r.u.hi});
  const double dy = std::max({r.v.lo - p.y, 0.0, p.y - r.v.hi});
  return std::hypot(dx, dy);
}

/// Distance from a point to the segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  }
  return (p - (a + t * ab)).norm();
}

/// True when segment [a, b] touches the closed rectangle.
bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect & r);

/// Euclidean distance between segment [a, b] and a closed rectangle.
double segment_rect_distance(Vec2 a, Vec2 b, const Rect & r);

}  // namespace fwpd

#endif  // FWPD_GEOMETRY_HPP_
