#include "gcontour/fem.hpp"

#include <algorithm>
#include <cmath>

#include "gcontour/errors.hpp"
#include "gcontour/util.hpp"

namespace gc {

LevelSetState LevelSetState::from_initial(std::vector<double> c0) {
  LevelSetState s;
  s.c = std::move(c0);
  for (double v : s.c) s.r = std::max(s.r, std::abs(v));
  return s;
}

double vertex_quadrature(double area, double f1, double f2, double f3) {
  return area / 3.0 * (f1 + f2 + f3);
}

std::array<std::array<double, 3>, 3> local_mass_block(double area, double f, MassMode mode) {
  std::array<std::array<double, 3>, 3> block{};
  if (mode == MassMode::consistent) {
    const double off = f * area / 12.0;
    const double diag = f * area / 6.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) block[i][j] = i == j ? diag : off;
    }
  } else {
    for (int i = 0; i < 3; ++i) block[i][i] = f * area / 3.0;
  }
  return block;
}

namespace {

// Frozen coefficients for every triangle; the evaluator is pure, so the map
// may be chunked across workers while the scatter stays sequential.
std::vector<Coefficients> eval_coefficients(const DelaunayGraph& graph,
                                            const ContourModel& model,
                                            const std::vector<double>& c) {
  std::vector<Coefficients> out(graph.triangles.size());
  parallel_for(out.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      out[t] = model.coefficients(graph, c, static_cast<int>(t));
    }
  });
  return out;
}

void scatter_mass(SparseSymMatrix& a, const Triangle& t, double f, MassMode mode,
                  const int* local_of) {
  const auto block = local_mass_block(t.area, f, mode);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      if (block[i][j] == 0.0) continue;
      const int vi = local_of ? local_of[i] : t.v[i];
      const int vj = local_of ? local_of[j] : t.v[j];
      if (vi < 0 || vj < 0) continue;
      a.add(vi, vj, block[i][j]);
    }
  }
}

void scatter_load(std::vector<double>& b, const Triangle& t, const Coefficients& coef,
                  const std::vector<double>& c, const int* local_of) {
  Vec2 grad_u{0.0, 0.0};
  for (int k = 0; k < 3; ++k) grad_u = grad_u + c[t.v[k]] * t.grad[k];
  for (int j = 0; j < 3; ++j) {
    const int row = local_of ? local_of[j] : t.v[j];
    if (row < 0) continue;
    b[row] += -coef.g * t.area * dot(grad_u, t.grad[j]) + coef.h * t.area / 3.0;
  }
}

}  // namespace

SparseSymMatrix assemble_A(const DelaunayGraph& graph, const ContourModel& model,
                           const LevelSetState& state, MassMode mode) {
  SparseSymMatrix a = SparseSymMatrix::from_adjacency(graph.adjacency);
  const std::vector<Coefficients> coeffs = eval_coefficients(graph, model, state.c);
  for (std::size_t t = 0; t < graph.triangles.size(); ++t) {
    scatter_mass(a, graph.triangles[t], coeffs[t].f, mode, nullptr);
  }
  return a;
}

std::vector<double> assemble_b(const DelaunayGraph& graph, const ContourModel& model,
                               const LevelSetState& state) {
  std::vector<double> b(graph.vertices.size(), 0.0);
  const std::vector<Coefficients> coeffs = eval_coefficients(graph, model, state.c);
  for (std::size_t t = 0; t < graph.triangles.size(); ++t) {
    scatter_load(b, graph.triangles[t], coeffs[t], state.c, nullptr);
  }
  return b;
}

ActiveSystem assemble_active(const DelaunayGraph& graph, const ContourModel& model,
                             const LevelSetState& state, const VertexSet& active,
                             MassMode mode) {
  ActiveSystem out;
  out.vertices = active.members();
  std::vector<int> local(graph.vertices.size(), -1);
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    local[out.vertices[i]] = static_cast<int>(i);
  }

  std::vector<std::vector<int>> adj(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    for (int u : graph.adjacency[out.vertices[i]]) {
      if (local[u] >= 0) adj[i].push_back(local[u]);
    }
  }
  out.a = SparseSymMatrix::from_adjacency(adj);
  out.b.assign(out.vertices.size(), 0.0);

  // Triangles incident to any active vertex, ascending so slot accumulation
  // matches the full assembly order exactly.
  std::vector<int> tris;
  for (int v : out.vertices) {
    tris.insert(tris.end(), graph.incident[v].begin(), graph.incident[v].end());
  }
  std::sort(tris.begin(), tris.end());
  tris.erase(std::unique(tris.begin(), tris.end()), tris.end());

  for (int ti : tris) {
    const Triangle& t = graph.triangles[ti];
    const Coefficients coef = model.coefficients(graph, state.c, ti);
    int local_of[3];
    for (int k = 0; k < 3; ++k) local_of[k] = local[t.v[k]];
    scatter_mass(out.a, t, coef.f, mode, local_of);
    scatter_load(out.b, t, coef, state.c, local_of);
  }
  return out;
}

namespace {

// Barycentric weights of p in triangle t; minimum weight signals containment.
std::array<double, 3> barycentric(const DelaunayGraph& graph, int t, Vec2 p) {
  const Triangle& tri = graph.triangles[t];
  const Vec2 a = graph.vertices[tri.v[0]];
  const Vec2 b = graph.vertices[tri.v[1]];
  const Vec2 c = graph.vertices[tri.v[2]];
  const double inv = 1.0 / tri.area;
  return {signed_area(p, b, c) * inv, signed_area(a, p, c) * inv, signed_area(a, b, p) * inv};
}

constexpr double kBaryTol = 1e-9;

bool contains(const std::array<double, 3>& w) {
  return w[0] >= -kBaryTol && w[1] >= -kBaryTol && w[2] >= -kBaryTol;
}

}  // namespace

int locate_triangle(const DelaunayGraph& graph, Vec2 point, int hint) {
  if (graph.is_grid) {
    const double h = 1.0 / static_cast<double>(std::max(graph.grid_rows, graph.grid_cols) - 1);
    const int col = std::clamp(static_cast<int>(point.x / h), 0, graph.grid_cols - 2);
    const int row = std::clamp(static_cast<int>(point.y / h), 0, graph.grid_rows - 2);
    const double dx = point.x - col * h;
    const double dy = point.y - row * h;
    const int base = 2 * (row * (graph.grid_cols - 1) + col);
    const int cand = base + (dy > dx ? 1 : 0);
    if (contains(barycentric(graph, cand, point))) return cand;
    if (contains(barycentric(graph, base + (dy > dx ? 0 : 1), point))) {
      return base + (dy > dx ? 0 : 1);
    }
    return -1;  // outside the grid rectangle (up to tolerance)
  }

  // Walk toward the point through shared edges, starting from the hint.
  int t = std::clamp(hint, 0, static_cast<int>(graph.triangles.size()) - 1);
  const int cap = static_cast<int>(graph.triangles.size()) + 8;
  for (int step = 0; step < cap; ++step) {
    const auto w = barycentric(graph, t, point);
    if (contains(w)) return t;
    // Cross the edge opposite the most negative weight.
    int k = 0;
    if (w[1] < w[k]) k = 1;
    if (w[2] < w[k]) k = 2;
    const int a = graph.triangles[t].v[(k + 1) % 3];
    const int b = graph.triangles[t].v[(k + 2) % 3];
    int next = -1;
    for (int ti : graph.incident[a]) {
      if (ti == t) continue;
      const auto& tv = graph.triangles[ti].v;
      if (tv[0] == b || tv[1] == b || tv[2] == b) {
        next = ti;
        break;
      }
    }
    if (next < 0) break;  // walked off the hull
    t = next;
  }
  for (std::size_t i = 0; i < graph.triangles.size(); ++i) {
    if (contains(barycentric(graph, static_cast<int>(i), point))) return static_cast<int>(i);
  }
  return -1;
}

double interpolate(const DelaunayGraph& graph, const std::vector<double>& values, Vec2 point) {
  const int t = locate_triangle(graph, point);
  if (t < 0) throw OutOfDomainError("interpolate: point outside the triangulated domain");
  auto w = barycentric(graph, t, point);
  const double total = w[0] + w[1] + w[2];
  double out = 0.0;
  for (int k = 0; k < 3; ++k) {
    out += w[k] / total * values[graph.triangles[t].v[k]];
  }
  return out;
}

}  // namespace gc
