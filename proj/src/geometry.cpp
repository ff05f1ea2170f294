#include "gcontour/geometry.hpp"

#include <algorithm>
#include <limits>

#include "gcontour/errors.hpp"

namespace gc {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

double polygon_distance(Vec2 p, const std::vector<Polygon>& polys) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polygon& poly : polys) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
    }
  }
  return best;
}

bool point_in_polygon(Vec2 p, const Polygon& poly) {
  // Even-odd crossing count against a horizontal ray toward +x.
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    const bool straddles = (a.y > p.y) != (b.y > p.y);
    if (straddles) {
      const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool point_on_polygon(Vec2 p, const Polygon& poly, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= tol) return true;
  }
  return false;
}

std::vector<Vec2> normalize_points(const std::vector<Vec2>& points) {
  if (points.size() < 3) {
    throw DegenerateInputError("normalize_points: need at least 3 points");
  }
  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const Vec2& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (extent <= 0.0) {
    throw DegenerateInputError("normalize_points: all points coincide");
  }
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec2& p : points) {
    out.push_back({(p.x - min_x) / extent, (p.y - min_y) / extent});
  }
  return out;
}

}  // namespace gc
