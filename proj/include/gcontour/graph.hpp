#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "gcontour/geometry.hpp"

namespace gc {

// Membership bitmask over the vertices of one graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t n, bool value = false)
      : mask_(n, value ? 1 : 0) {}

  bool contains(int v) const { return mask_[static_cast<std::size_t>(v)] != 0; }
  void insert(int v) { mask_[static_cast<std::size_t>(v)] = 1; }
  void erase(int v) { mask_[static_cast<std::size_t>(v)] = 0; }
  std::size_t size() const { return mask_.size(); }
  std::size_t count() const;
  std::vector<int> members() const;
  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<std::uint8_t> mask_;
};

struct Triangle {
  std::array<int, 3> v;       // corner indices, counterclockwise
  double area = 0.0;
  std::array<Vec2, 3> grad{};  // gradient of the hat function of each corner
};

// A triangulated planar graph. Edges and triangles are consistent: every
// triangle edge appears in `edges`, interior edges border exactly two
// triangles and boundary edges exactly one. Built by the factories below and
// treated as immutable afterwards.
struct DelaunayGraph {
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;
  std::vector<std::pair<int, int>> edges;        // i < j, lexicographic
  std::vector<std::vector<int>> adjacency;       // sorted neighbor lists
  std::vector<std::vector<int>> incident;        // triangle ids per vertex
  double mean_edge_length = 0.0;

  // Set for graphs produced by build_grid_graph; vertex (row i, col j) has
  // index i * grid_cols + j.
  bool is_grid = false;
  int grid_rows = 0;
  int grid_cols = 0;

  int n() const { return static_cast<int>(vertices.size()); }
};

// Gradients of the three P1 hat functions on a triangle, constant over the
// element. Throws DegenerateInputError on (near) zero area.
std::array<Vec2, 3> element_gradients(Vec2 a, Vec2 b, Vec2 c);

// Validates triangles, orients them counterclockwise and derives edges,
// adjacency, incidence and element geometry.
DelaunayGraph make_graph(std::vector<Vec2> vertices,
                         std::vector<std::array<int, 3>> triangles);

// rows x cols lattice scaled uniformly so the longer side spans [0, 1]; each
// cell is split along the diagonal from its (row, col) corner to
// (row+1, col+1), which gives interior vertices the fixed 6-neighborhood.
DelaunayGraph build_grid_graph(int rows, int cols);

// Delaunay triangulation of points in general position inside the unit
// square. Cocircular ties are broken deterministically (fixed insertion
// order, non-strict incircle tests count as outside), so equal input yields
// an identical mesh. Duplicate or fully collinear input throws.
DelaunayGraph delaunay_triangulate(const std::vector<Vec2>& points);

// Members of s with at least one neighbor outside s.
VertexSet set_boundary(const DelaunayGraph& graph, const VertexSet& s);

// Reverse Cuthill-McKee over the subgraph induced by `active`; returns the
// active vertices (global ids) in elimination order. Components are seeded
// from a pseudo-peripheral vertex.
std::vector<int> rcm_order(const std::vector<std::vector<int>>& adjacency,
                           const VertexSet& active);

// Max |pos(u) - pos(v)| over edges of the induced subgraph, given the
// ordering produced by rcm_order (or any permutation of the active set).
int ordering_bandwidth(const std::vector<std::vector<int>>& adjacency,
                       const std::vector<int>& order);

// Signed distance to the union of polygon contours: negative strictly
// inside, positive outside, zero on the curve. Grid graphs use the exact
// Euclidean point-to-polygon distance; other graphs use shortest paths with
// Euclidean edge lengths seeded at contour-crossing edges.
std::vector<double> signed_distance_init(const DelaunayGraph& graph,
                                         const std::vector<Polygon>& contours);

// Signed graph distance to the boundary of a vertex set: negative on
// `inside`, positive elsewhere. Used to start evolutions from seed regions.
std::vector<double> signed_distance_from_set(const DelaunayGraph& graph,
                                             const VertexSet& inside);

}  // namespace gc
