#pragma once

#include <array>
#include <vector>

#include "gcontour/models.hpp"
#include "gcontour/sparse.hpp"

namespace gc {

// Level-set coefficients plus the saturation bound and simulated time.
struct LevelSetState {
  std::vector<double> c;
  double r = 0.0;  // max |c| of the initial condition, fixed for the run
  double t = 0.0;

  static LevelSetState from_initial(std::vector<double> c0);
};

enum class MassMode { consistent, lumped };

// Area-weighted three-corner rule: integrates a function over a triangle
// from its corner values alone. Exact for linear integrands; quadratics are
// off (x^2 on the reference triangle gives 1/6 where the integral is 1/12),
// which is the price of a pure corner rule and is asserted in the tests.
double vertex_quadrature(double area, double f1, double f2, double f3);

// Local contribution of one triangle to the F-weighted mass matrix:
// consistent integrates f * phi_i * phi_j exactly for constant f; lumped
// applies the corner rule, which empties the off-diagonals.
std::array<std::array<double, 3>, 3> local_mass_block(double area, double f, MassMode mode);

// System matrix of one step: A_ij = sum over triangles of F_T * integral of
// phi_i * phi_j. Pattern is the graph adjacency plus diagonal.
SparseSymMatrix assemble_A(const DelaunayGraph& graph, const ContourModel& model,
                           const LevelSetState& state, MassMode mode);

// Load vector: stiffness part -G_T * (grad u . grad phi_j) * area, evaluated
// exactly (gradients are elementwise constant), plus source H_T * area / 3.
std::vector<double> assemble_b(const DelaunayGraph& graph, const ContourModel& model,
                               const LevelSetState& state);

// Matrix and load restricted to the rows and columns of `active`, assembled
// from the triangles incident to active vertices only. Equals the principal
// submatrix of the full assembly (same local ordering: ascending vertex id).
struct ActiveSystem {
  SparseSymMatrix a;
  std::vector<double> b;
  std::vector<int> vertices;  // global id per local row
};

ActiveSystem assemble_active(const DelaunayGraph& graph, const ContourModel& model,
                             const LevelSetState& state, const VertexSet& active,
                             MassMode mode);

// Linear interpolation of per-vertex values at an arbitrary point of the
// triangulated domain. Throws OutOfDomainError outside the mesh.
double interpolate(const DelaunayGraph& graph, const std::vector<double>& values, Vec2 point);

// Triangle containing the point (within tolerance), or -1. `hint` starts the
// search; grids resolve the cell directly.
int locate_triangle(const DelaunayGraph& graph, Vec2 point, int hint = 0);

}  // namespace gc
