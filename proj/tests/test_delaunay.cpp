#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "gcontour/errors.hpp"
#include "gcontour/fem.hpp"
#include "gcontour/graph.hpp"
#include "gcontour/util.hpp"
#include "oracles.hpp"

using namespace gc;

namespace {

std::vector<Vec2> random_points(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
  return pts;
}

bool delaunay_property(const DelaunayGraph& g) {
  for (const Triangle& t : g.triangles) {
    const Vec2 a = g.vertices[static_cast<std::size_t>(t.v[0])];
    const Vec2 b = g.vertices[static_cast<std::size_t>(t.v[1])];
    const Vec2 c = g.vertices[static_cast<std::size_t>(t.v[2])];
    for (int p = 0; p < g.n(); ++p) {
      if (p == t.v[0] || p == t.v[1] || p == t.v[2]) continue;
      if (oracle::in_circumcircle(a, b, c, g.vertices[static_cast<std::size_t>(p)])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("triangle of three points") {
  const DelaunayGraph g = delaunay_triangulate({{0.1, 0.1}, {0.9, 0.2}, {0.4, 0.8}});
  CHECK(g.n() == 3);
  CHECK(g.triangles.size() == 1);
  CHECK(g.edges.size() == 3);
  CHECK(g.triangles[0].area == doctest::Approx(0.5 * std::abs(cross(Vec2{0.8, 0.1}, Vec2{0.3, 0.7}))));
}

TEST_CASE("unit square splits into two triangles") {
  const DelaunayGraph g = delaunay_triangulate({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(g.n() == 4);
  CHECK(g.triangles.size() == 2);
  CHECK(g.edges.size() == 5);
  double area = 0.0;
  for (const Triangle& t : g.triangles) area += t.area;
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
  // Exactly one of the two diagonals is present.
  const bool d02 = std::count(g.edges.begin(), g.edges.end(), std::pair<int, int>{0, 2}) == 1;
  const bool d13 = std::count(g.edges.begin(), g.edges.end(), std::pair<int, int>{1, 3}) == 1;
  CHECK(d02 != d13);
}

TEST_CASE("random point sets satisfy the empty-circumcircle property") {
  for (std::uint64_t seed : {7ull, 19ull, 401ull}) {
    const std::vector<Vec2> pts = random_points(20, seed);
    const DelaunayGraph g = delaunay_triangulate(pts);
    CAPTURE(seed);
    CHECK(delaunay_property(g));

    // Euler relations for a triangulated convex region: T = 2n - 2 - h,
    // E = 3n - 3 - h with h hull vertices.
    const std::size_t t = g.triangles.size();
    const std::size_t e = g.edges.size();
    const std::size_t hull = 2 * static_cast<std::size_t>(g.n()) - 2 - t;
    CHECK(e == 3 * static_cast<std::size_t>(g.n()) - 3 - hull);
    CHECK(hull >= 3);
  }
}

TEST_CASE("triangulation is deterministic") {
  const std::vector<Vec2> pts = random_points(30, 12345);
  const DelaunayGraph a = delaunay_triangulate(pts);
  const DelaunayGraph b = delaunay_triangulate(pts);
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t i = 0; i < a.triangles.size(); ++i) CHECK(a.triangles[i].v == b.triangles[i].v);
  CHECK(a.edges == b.edges);
}

TEST_CASE("degenerate input throws") {
  CHECK_THROWS_AS(delaunay_triangulate({{0.2, 0.2}, {0.8, 0.8}}), DegenerateInputError);
  CHECK_THROWS_AS(delaunay_triangulate({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}}),
                  DegenerateInputError);
  CHECK_THROWS_AS(delaunay_triangulate({{0.1, 0.1}, {0.1, 0.1}, {0.4, 0.8}}),
                  DegenerateInputError);
}

TEST_CASE("triangulation covers the convex hull") {
  const std::vector<Vec2> pts = random_points(25, 99);
  const DelaunayGraph g = delaunay_triangulate(pts);
  // Random convex combinations of input points lie in the hull, so every one
  // of them must land inside some triangle.
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    double w1 = rng.uniform(), w2 = rng.uniform(), w3 = rng.uniform();
    const double s = w1 + w2 + w3;
    w1 /= s;
    w2 /= s;
    w3 /= s;
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(g.n())));
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(g.n())));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(g.n())));
    const Vec2 p = w1 * g.vertices[i] + w2 * g.vertices[j] + w3 * g.vertices[k];
    CHECK(locate_triangle(g, p) >= 0);
  }
}

TEST_CASE("cocircular lattice points still triangulate") {
  // A regular 4x4 lattice is full of cocircular quadruples; the tie rule must
  // still produce a consistent, deterministic mesh that covers the square.
  std::vector<Vec2> pts;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pts.push_back({j / 3.0, i / 3.0});
  const DelaunayGraph a = delaunay_triangulate(pts);
  const DelaunayGraph b = delaunay_triangulate(pts);
  CHECK(a.triangles.size() == 18);  // 9 cells, 2 triangles each
  double area = 0.0;
  for (const Triangle& t : a.triangles) area += t.area;
  CHECK(area == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t i = 0; i < a.triangles.size(); ++i) CHECK(a.triangles[i].v == b.triangles[i].v);
}

TEST_CASE("interior edges border two triangles, boundary edges one") {
  const DelaunayGraph g = delaunay_triangulate(random_points(40, 2024));
  std::map<std::pair<int, int>, int> edge_count;
  for (const Triangle& t : g.triangles) {
    for (int e = 0; e < 3; ++e) {
      int u = t.v[e], v = t.v[(e + 1) % 3];
      if (u > v) std::swap(u, v);
      ++edge_count[{u, v}];
    }
  }
  CHECK(edge_count.size() == g.edges.size());
  for (const auto& [edge, count] : edge_count) {
    CAPTURE(edge.first);
    CAPTURE(edge.second);
    CHECK(count >= 1);
    CHECK(count <= 2);
  }
}
