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

#include "fwpd/geometry.hpp"

#include <array>

namespace fwpd
{

bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect & r)
{
  // Liang-Barsky clip of the parametric segment against the slab pair.
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec2 d = b - a;
  const std::array<double, 4> p{-d.x, d.x, -d.y, d.y};
  const std::array<double, 4> q{a.x - r.u.lo, r.u.hi - a.x, a.y - r.v.lo, r.v.hi - a.y};
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) {
        return false;
      }
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) {
      return false;
    }
  }
  return true;
}

double segment_rect_distance(Vec2 a, Vec2 b, const Rect & r)
{
  if (segment_intersects_rect(a, b, r)) {
    return 0.0;
  }
  double best = std::min(point_rect_distance(a, r), point_rect_distance(b, r));
  const std::array<Vec2, 4> corners{
    Vec2{r.u.lo, r.v.lo}, Vec2{r.u.hi, r.v.lo}, Vec2{r.u.lo, r.v.hi}, Vec2{r.u.hi, r.v.hi}};
  for (const Vec2 & c : corners) {
    best = std::min(best, point_segment_distance(c, a, b));
  }
  return best;
}

}  // namespace fwpd
