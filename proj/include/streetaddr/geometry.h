// Copyright 2026 The Streetaddr Authors
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

#ifndef STREETADDR_GEOMETRY_H_
#define STREETADDR_GEOMETRY_H_

#include <cmath>
#include <compare>
#include <span>
#include <vector>

namespace streetaddr {

// A position in the local planar frame, meters. +x is east, +y is north.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

// Compass bearing of the vector `v` in degrees, 0 = north, clockwise, [0,360).
inline double bearing_deg(Point v) {
  double b = std::atan2(v.x, v.y) * 180.0 / M_PI;
  if (b < 0) b += 360.0;
  if (b >= 360.0) b -= 360.0;
  return b;
}

inline double polyline_length(std::span<const Point> pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

// Closest point on segment [a,b] to p, as the clamped parameter t in [0,1].
inline double project_to_segment(Point a, Point b, Point p) {
  Point d = b - a;
  double dd = dot(d, d);
  if (dd == 0.0) return 0.0;
  double t = dot(p - a, d) / dd;
  return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
}

// Area of the convex hull of `pts`; 0 when the points are collinear or fewer
// than three.
double convex_hull_area(std::vector<Point> pts);

}  // namespace streetaddr

#endif  // STREETADDR_GEOMETRY_H_
