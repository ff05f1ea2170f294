#include "gcontour/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "gcontour/errors.hpp"

namespace gc {

std::size_t VertexSet::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::array<Vec2, 3> element_gradients(Vec2 a, Vec2 b, Vec2 c) {
  const double area = signed_area(a, b, c);
  if (std::abs(area) < 1e-16) {
    throw DegenerateInputError("element_gradients: zero-area triangle");
  }
  const double s = 1.0 / (2.0 * area);
  // Hat function of a corner rises from the opposite edge; its gradient is
  // the rotated opposite edge over twice the signed area.
  return {s * perp(c - b), s * perp(a - c), s * perp(b - a)};
}

DelaunayGraph make_graph(std::vector<Vec2> vertices,
                         std::vector<std::array<int, 3>> triangles) {
  DelaunayGraph g;
  g.vertices = std::move(vertices);
  const int n = g.n();
  g.triangles.reserve(triangles.size());
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  g.incident.assign(static_cast<std::size_t>(n), {});

  std::map<std::pair<int, int>, int> edge_use;
  for (std::array<int, 3>& t : triangles) {
    for (int k : t) {
      if (k < 0 || k >= n) throw DegenerateInputError("make_graph: corner index out of range");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw DegenerateInputError("make_graph: repeated corner in triangle");
    }
    if (signed_area(g.vertices[t[0]], g.vertices[t[1]], g.vertices[t[2]]) < 0.0) {
      std::swap(t[1], t[2]);
    }
    Triangle tri;
    tri.v = t;
    tri.area = signed_area(g.vertices[t[0]], g.vertices[t[1]], g.vertices[t[2]]);
    if (tri.area < 1e-16) {
      throw DegenerateInputError("make_graph: zero-area triangle");
    }
    tri.grad = element_gradients(g.vertices[t[0]], g.vertices[t[1]], g.vertices[t[2]]);
    const int ti = static_cast<int>(g.triangles.size());
    g.triangles.push_back(tri);
    for (int k = 0; k < 3; ++k) {
      g.incident[t[k]].push_back(ti);
      const int u = t[k], v = t[(k + 1) % 3];
      edge_use[{std::min(u, v), std::max(u, v)}]++;
    }
  }

  double length_sum = 0.0;
  for (const auto& [e, uses] : edge_use) {
    if (uses > 2) throw DegenerateInputError("make_graph: edge shared by > 2 triangles");
    g.edges.push_back(e);
    g.adjacency[e.first].push_back(e.second);
    g.adjacency[e.second].push_back(e.first);
    length_sum += norm(g.vertices[e.first] - g.vertices[e.second]);
  }
  for (std::vector<int>& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
  g.mean_edge_length = g.edges.empty() ? 0.0 : length_sum / static_cast<double>(g.edges.size());
  return g;
}

DelaunayGraph build_grid_graph(int rows, int cols) {
  if (rows < 2 || cols < 2) {
    throw DegenerateInputError("build_grid_graph: need at least a 2x2 lattice");
  }
  const double h = 1.0 / static_cast<double>(std::max(rows, cols) - 1);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      pts.push_back({j * h, i * h});
    }
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<std::size_t>(rows - 1) * (cols - 1) * 2);
  const auto id = [cols](int i, int j) { return i * cols + j; };
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      // Split along the (i, j) -> (i+1, j+1) diagonal in every cell.
      tris.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i + 1, j)});
    }
  }
  DelaunayGraph g = make_graph(std::move(pts), std::move(tris));
  g.is_grid = true;
  g.grid_rows = rows;
  g.grid_cols = cols;
  return g;
}

VertexSet set_boundary(const DelaunayGraph& graph, const VertexSet& s) {
  VertexSet out(s.size());
  for (int v = 0; v < graph.n(); ++v) {
    if (!s.contains(v)) continue;
    for (int u : graph.adjacency[v]) {
      if (!s.contains(u)) {
        out.insert(v);
        break;
      }
    }
  }
  return out;
}

namespace {

// Pseudo-peripheral start vertex: repeat BFS from the farthest minimum-degree
// vertex of the last level until the eccentricity stops growing.
int pseudo_peripheral(const std::vector<std::vector<int>>& adjacency,
                      const VertexSet& active, int seed) {
  const std::size_t n = adjacency.size();
  std::vector<int> level(n);
  int current = seed;
  int depth = -1;
  for (int round = 0; round < 8; ++round) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    q.push(current);
    level[current] = 0;
    int last = current;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      last = v;
      for (int u : adjacency[v]) {
        if (active.contains(u) && level[u] < 0) {
          level[u] = level[v] + 1;
          q.push(u);
        }
      }
    }
    // Among the deepest vertices pick one of minimum active degree.
    int best = last;
    std::size_t best_deg = std::numeric_limits<std::size_t>::max();
    for (std::size_t v = 0; v < n; ++v) {
      if (level[v] != level[last]) continue;
      std::size_t deg = 0;
      for (int u : adjacency[v]) deg += active.contains(u) ? 1 : 0;
      if (deg < best_deg) {
        best_deg = deg;
        best = static_cast<int>(v);
      }
    }
    if (level[last] <= depth) return best;
    depth = level[last];
    current = best;
  }
  return current;
}

}  // namespace

std::vector<int> rcm_order(const std::vector<std::vector<int>>& adjacency,
                           const VertexSet& active) {
  const std::size_t n = adjacency.size();
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!active.contains(static_cast<int>(v))) continue;
    for (int u : adjacency[v]) degree[v] += active.contains(u) ? 1 : 0;
  }

  std::vector<char> visited(n, 0);
  std::vector<int> order;
  order.reserve(active.count());
  for (std::size_t root = 0; root < n; ++root) {
    const int r = static_cast<int>(root);
    if (!active.contains(r) || visited[root]) continue;
    const int start = pseudo_peripheral(adjacency, active, r);
    // Ordinary Cuthill-McKee from the start, neighbors by increasing degree.
    std::queue<int> q;
    q.push(start);
    visited[start] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      std::vector<int> next;
      for (int u : adjacency[v]) {
        if (active.contains(u) && !visited[u]) {
          visited[u] = 1;
          next.push_back(u);
        }
      }
      std::sort(next.begin(), next.end(), [&degree](int a, int b) {
        return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
      });
      for (int u : next) q.push(u);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

int ordering_bandwidth(const std::vector<std::vector<int>>& adjacency,
                       const std::vector<int>& order) {
  std::vector<int> pos(adjacency.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  int band = 0;
  for (int v : order) {
    for (int u : adjacency[v]) {
      if (pos[u] >= 0) band = std::max(band, std::abs(pos[u] - pos[v]));
    }
  }
  return band;
}

namespace {

// Multi-source Dijkstra over graph edges with Euclidean lengths.
std::vector<double> dijkstra(const DelaunayGraph& graph, std::vector<double> dist) {
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int v = 0; v < graph.n(); ++v) {
    if (std::isfinite(dist[v])) heap.push({dist[v], v});
  }
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int u : graph.adjacency[v]) {
      const double cand = d + norm(graph.vertices[u] - graph.vertices[v]);
      if (cand < dist[u]) {
        dist[u] = cand;
        heap.push({cand, u});
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<double> signed_distance_init(const DelaunayGraph& graph,
                                         const std::vector<Polygon>& contours) {
  if (contours.empty()) {
    throw DegenerateInputError("signed_distance_init: no contour given");
  }
  for (const Polygon& poly : contours) {
    if (poly.size() < 3) {
      throw DegenerateInputError(
          "signed_distance_init: invalid contour, polygon needs >= 3 vertices to close");
    }
  }
  const int n = graph.n();
  const double on_tol = 1e-12;

  // -1 inside any polygon, 0 on a polygon edge, +1 outside.
  std::vector<int> side(n, 1);
  for (int v = 0; v < n; ++v) {
    const Vec2 p = graph.vertices[v];
    bool on = false, in = false;
    for (const Polygon& poly : contours) {
      if (point_on_polygon(p, poly, on_tol)) {
        on = true;
        break;
      }
      in = in || point_in_polygon(p, poly);
    }
    side[v] = on ? 0 : (in ? -1 : 1);
  }

  std::vector<double> dist;
  if (graph.is_grid) {
    // Exact point-to-polygon distance is available on image grids.
    dist.assign(n, 0.0);
    for (int v = 0; v < n; ++v) dist[v] = polygon_distance(graph.vertices[v], contours);
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    dist.assign(n, inf);
    bool seeded = false;
    for (int v = 0; v < n; ++v) {
      if (side[v] == 0) {
        dist[v] = 0.0;
        seeded = true;
      }
    }
    for (const auto& [u, v] : graph.edges) {
      if (side[u] * side[v] < 0) {
        // The contour crosses this edge; both endpoints start from their
        // Euclidean distance to it.
        dist[u] = std::min(dist[u], polygon_distance(graph.vertices[u], contours));
        dist[v] = std::min(dist[v], polygon_distance(graph.vertices[v], contours));
        seeded = true;
      }
    }
    if (seeded) {
      dist = dijkstra(graph, std::move(dist));
    }
    // Contour entirely between vertices (or off the hull): fall back to the
    // direct distance so the field is still finite everywhere.
    for (int v = 0; v < n; ++v) {
      if (!std::isfinite(dist[v])) dist[v] = polygon_distance(graph.vertices[v], contours);
    }
  }

  std::vector<double> c(n, 0.0);
  for (int v = 0; v < n; ++v) c[v] = side[v] < 0 ? -dist[v] : dist[v];
  return c;
}

std::vector<double> signed_distance_from_set(const DelaunayGraph& graph,
                                             const VertexSet& inside) {
  const int n = graph.n();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  bool seeded = false;
  for (const auto& [u, v] : graph.edges) {
    if (inside.contains(u) != inside.contains(v)) {
      const double half = 0.5 * norm(graph.vertices[u] - graph.vertices[v]);
      dist[u] = std::min(dist[u], half);
      dist[v] = std::min(dist[v], half);
      seeded = true;
    }
  }
  if (!seeded) {
    // Uniform membership: no front to measure from.
    std::vector<double> c(n, inside.count() > 0 ? -1.0 : 1.0);
    return c;
  }
  dist = dijkstra(graph, std::move(dist));
  double far = 0.0;
  for (double d : dist) {
    if (std::isfinite(d)) far = std::max(far, d);
  }
  std::vector<double> c(n);
  for (int v = 0; v < n; ++v) {
    const double d = std::isfinite(dist[v]) ? dist[v] : far;
    c[v] = inside.contains(v) ? -d : d;
  }
  return c;
}

}  // namespace gc
