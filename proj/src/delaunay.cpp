#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gcontour/errors.hpp"
#include "gcontour/graph.hpp"

namespace gc {

namespace {

// Incircle determinant for counterclockwise (a, b, c): positive when d lies
// strictly inside the circumcircle. `permanent` receives the magnitude sum
// used for the roundoff guard.
double incircle_det(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double* permanent) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double al = adx * adx + ady * ady;
  const double bl = bdx * bdx + bdy * bdy;
  const double cl = cdx * cdx + cdy * cdy;
  const double m01 = adx * bdy - bdx * ady;
  const double m02 = adx * cdy - cdx * ady;
  const double m12 = bdx * cdy - cdx * bdy;
  *permanent = std::abs(m12) * al + std::abs(m02) * bl + std::abs(m01) * cl;
  return m12 * al - m02 * bl + m01 * cl;
}

struct BWTriangle {
  std::array<int, 3> v;
  // nbr[k] is across the edge opposite corner k, -1 on the outer boundary.
  std::array<int, 3> nbr{-1, -1, -1};
  bool alive = true;
};

class Builder {
 public:
  explicit Builder(const std::vector<Vec2>& input) : pts_(input) {
    n_input_ = static_cast<int>(input.size());
    // Super-triangle far enough out that its circumcircles act like
    // half-planes over the unit square.
    pts_.push_back({-1e4, -1e4});
    pts_.push_back({2e4, -1e4});
    pts_.push_back({-1e4, 2e4});
    tris_.push_back({{n_input_, n_input_ + 1, n_input_ + 2}});
  }

  // Ties (|det| within roundoff of zero) count as outside the circle, so a
  // given input always produces the same mesh.
  bool in_circle(const BWTriangle& t, Vec2 p) const {
    double permanent = 0.0;
    const double det = incircle_det(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p, &permanent);
    return det > 1e-12 * permanent;
  }

  double orient(int a, int b, Vec2 p) const {
    return cross(pts_[b] - pts_[a], p - pts_[a]);
  }

  int locate(Vec2 p, int hint) const {
    int t = hint;
    const int cap = 4 * static_cast<int>(tris_.size()) + 16;
    for (int step = 0; step < cap; ++step) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int a = tris_[t].v[(k + 1) % 3];
        const int b = tris_[t].v[(k + 2) % 3];
        if (orient(a, b, p) < 0.0 && tris_[t].nbr[k] >= 0) {
          t = tris_[t].nbr[k];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // Walk got stuck on a tie cycle; fall back to an exhaustive scan.
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
      if (!tris_[i].alive) continue;
      bool contains = true;
      for (int k = 0; k < 3 && contains; ++k) {
        contains = orient(tris_[i].v[(k + 1) % 3], tris_[i].v[(k + 2) % 3], p) >= -1e-14;
      }
      if (contains) return i;
    }
    throw DegenerateInputError("delaunay_triangulate: point location failed");
  }

  void insert(int pi, int* hint) {
    const Vec2 p = pts_[pi];
    const int start = locate(p, *hint);

    // Grow the cavity of circumcircle violations around the located triangle.
    ++epoch_;
    stamp_.resize(tris_.size(), 0);
    std::vector<int> cavity{start};
    stamp_[start] = epoch_;
    for (std::size_t i = 0; i < cavity.size(); ++i) {
      for (int nb : tris_[cavity[i]].nbr) {
        if (nb < 0 || stamp_[nb] == epoch_) continue;
        if (in_circle(tris_[nb], p)) {
          stamp_[nb] = epoch_;
          cavity.push_back(nb);
        }
      }
    }

    struct Rim {
      int a, b, outer;
    };
    std::vector<Rim> rim;
    for (int ti : cavity) {
      for (int k = 0; k < 3; ++k) {
        const int nb = tris_[ti].nbr[k];
        if (nb >= 0 && stamp_[nb] == epoch_) continue;
        rim.push_back({tris_[ti].v[(k + 1) % 3], tris_[ti].v[(k + 2) % 3], nb});
      }
      tris_[ti].alive = false;
    }

    // Fan the rim from p. Rim edges run counterclockwise around the cavity,
    // so (p, a, b) keeps positive orientation. Rims are tiny, quadratic
    // matching is cheaper than any map.
    const int base = static_cast<int>(tris_.size());
    for (std::size_t i = 0; i < rim.size(); ++i) {
      const int id = base + static_cast<int>(i);
      tris_.push_back({{pi, rim[i].a, rim[i].b}});
      tris_.back().nbr[0] = rim[i].outer;
      if (rim[i].outer >= 0) {
        BWTriangle& o = tris_[rim[i].outer];
        for (int k = 0; k < 3; ++k) {
          const int oa = o.v[(k + 1) % 3];
          const int ob = o.v[(k + 2) % 3];
          if ((oa == rim[i].a && ob == rim[i].b) || (oa == rim[i].b && ob == rim[i].a)) {
            o.nbr[k] = id;
          }
        }
      }
    }
    for (std::size_t i = 0; i < rim.size(); ++i) {
      for (std::size_t j = 0; j < rim.size(); ++j) {
        if (rim[j].a == rim[i].b) tris_[base + i].nbr[1] = base + static_cast<int>(j);
        if (rim[j].b == rim[i].a) tris_[base + i].nbr[2] = base + static_cast<int>(j);
      }
    }
    *hint = base;
  }

  DelaunayGraph finish(const std::vector<Vec2>& input) {
    std::vector<std::array<int, 3>> keep;
    for (const BWTriangle& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= n_input_ || t.v[1] >= n_input_ || t.v[2] >= n_input_) continue;
      keep.push_back(t.v);
    }
    if (keep.empty()) {
      throw DegenerateInputError("delaunay_triangulate: collinear input, no triangles formed");
    }
    return make_graph(input, std::move(keep));
  }

 private:
  std::vector<Vec2> pts_;
  std::vector<BWTriangle> tris_;
  std::vector<int> stamp_;
  int epoch_ = 0;
  int n_input_ = 0;
};

}  // namespace

DelaunayGraph delaunay_triangulate(const std::vector<Vec2>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) {
    throw DegenerateInputError("delaunay_triangulate: need at least 3 points");
  }
  // Duplicate detection via a sweep over x-sorted points.
  std::vector<int> by_x(points.size());
  std::iota(by_x.begin(), by_x.end(), 0);
  std::sort(by_x.begin(), by_x.end(), [&points](int a, int b) {
    return points[a].x != points[b].x ? points[a].x < points[b].x : points[a].y < points[b].y;
  });
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = i + 1; j < n && points[by_x[j]].x - points[by_x[i]].x <= 1e-12; ++j) {
      if (std::abs(points[by_x[j]].y - points[by_x[i]].y) <= 1e-12) {
        throw DegenerateInputError("delaunay_triangulate: duplicate points");
      }
    }
  }

  Builder builder(points);
  int hint = 0;
  for (int i = 0; i < n; ++i) builder.insert(i, &hint);
  return builder.finish(points);
}

}  // namespace gc
