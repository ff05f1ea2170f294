#pragma once

#include <cmath>
#include <vector>

namespace gc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Rotation by +90 degrees; maps an edge vector to an (unnormalized) normal.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

// Signed area, positive when (a, b, c) winds counterclockwise.
inline double signed_area(Vec2 a, Vec2 b, Vec2 c) {
  return 0.5 * cross(b - a, c - a);
}

// A closed contour; the segment from back() to front() is implied.
using Polygon = std::vector<Vec2>;

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Unsigned distance from p to the union of polygon boundaries.
double polygon_distance(Vec2 p, const std::vector<Polygon>& polys);

// Strict containment by even-odd rule; points on an edge are not "inside"
// (they get classified separately as on-curve).
bool point_in_polygon(Vec2 p, const Polygon& poly);
bool point_on_polygon(Vec2 p, const Polygon& poly, double tol);

// Translate and uniformly scale so the bounding box fits in the unit square
// with the longer side spanning [0, 1]. Throws DegenerateInputError when all
// points coincide or fewer than 3 are given.
std::vector<Vec2> normalize_points(const std::vector<Vec2>& points);

}  // namespace gc
