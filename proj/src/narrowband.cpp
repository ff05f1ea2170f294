#include "gcontour/narrowband.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gcontour/errors.hpp"
#include "gcontour/util.hpp"

namespace gc {

ActiveSet compute_active(const DelaunayGraph& graph, const std::vector<double>& c, double r,
                         BandMode mode) {
  const int n = graph.n();
  const double zero_tol = 1e-12 * r;
  ActiveSet s{VertexSet(n), VertexSet(n), VertexSet(n), VertexSet(n)};
  std::vector<std::int8_t> side(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      side[v] = c[v] > zero_tol ? 1 : (c[v] < -zero_tol ? -1 : 0);
    }
  });
  for (int v = 0; v < n; ++v) {
    if (side[v] > 0) {
      s.u_plus.insert(v);
    } else if (side[v] < 0) {
      s.u_minus.insert(v);
    } else {
      s.u_zero.insert(v);
      s.active.insert(v);
    }
  }
  const bool take_plus = mode != BandMode::shrinking;
  const bool take_minus = mode != BandMode::expanding;
  for (int v = 0; v < n; ++v) {
    if ((side[v] > 0 && !take_plus) || (side[v] < 0 && !take_minus) || side[v] == 0) continue;
    for (int u : graph.adjacency[v]) {
      if (side[u] != side[v]) {
        s.active.insert(v);
        break;
      }
    }
  }
  return s;
}

bool reduced_system(const SparseSymMatrix& a, const std::vector<double>& b,
                    const VertexSet& active, SparseSymMatrix* a_out,
                    std::vector<double>* b_out, std::vector<int>* vertices) {
  const std::vector<int> members = active.members();
  if (members.empty()) return false;
  std::vector<int> local;
  *a_out = a.submatrix(active, &local);
  b_out->clear();
  b_out->reserve(members.size());
  for (int v : members) b_out->push_back(b[v]);
  if (vertices) *vertices = members;
  return true;
}

ConstrainedStepResult constrained_step(const DelaunayGraph& graph, ContourModel& model,
                                       const LevelSetState& state, double dt,
                                       const TimeSchedule& schedule, BandMode band,
                                       MassMode mode) {
  ConstrainedStepResult result;
  result.state = state;
  const ActiveSet active = compute_active(graph, state.c, state.r, band);
  result.active_size = static_cast<int>(active.active.count());
  if (result.active_size == 0) {
    result.front_empty = true;
    return result;
  }

  model.begin_step(graph, state.c, state.r);
  ActiveSystem sys = assemble_active(graph, model, state, active.active, mode);
  for (double& v : sys.b) v *= dt;
  std::vector<double> delta;
  if (mode == MassMode::lumped) {
    delta = solve_diagonal(sys.a, sys.b);
  } else {
    delta = solve_cg(sys.a, sys.b, schedule.solver_tol, schedule.solver_max_iterations);
  }
  for (std::size_t i = 0; i < sys.vertices.size(); ++i) {
    const int v = sys.vertices[i];
    result.state.c[v] = std::clamp(state.c[v] + delta[i], -state.r, state.r);
  }
  result.state.t += dt;
  return result;
}

EvolveResult constrained_evolve(const DelaunayGraph& graph, ContourModel& model,
                                std::vector<double> c0, const TimeSchedule& schedule,
                                BandMode band, MassMode mode) {
  return constrained_evolve(graph, model, LevelSetState::from_initial(std::move(c0)), schedule,
                            band, mode);
}

EvolveResult constrained_evolve(const DelaunayGraph& graph, ContourModel& model,
                                LevelSetState start, const TimeSchedule& schedule,
                                BandMode band, MassMode mode) {
  EvolveResult result;
  result.state = std::move(start);
  // One-sided bands take 1/N: an overshooting vertex just joins the other
  // region and drops out of the active set. The general band lets vertices
  // oscillate, so its default respects the explicit diffusion limit h^2/4
  // (= 1/(4N) on square grids) for curvature-carrying models.
  const double dt = schedule.dt > 0.0
                        ? schedule.dt
                        : (band == BandMode::general ? 0.25 : 1.0) / graph.n();

  std::vector<bool> signs = sign_pattern(result.state.c);
  int stable = 0;
  double active_total = 0.0;
  if (schedule.snapshot_every > 0) {
    result.snapshots.push_back({0, result.state.t, result.state.c});
  }

  for (int step = 0; step < schedule.max_steps; ++step) {
    ConstrainedStepResult sr =
        constrained_step(graph, model, result.state, dt, schedule, band, mode);
    if (sr.front_empty) {
      result.reason = StopReason::empty_active;
      return result;
    }
    result.state = std::move(sr.state);
    result.steps = step + 1;
    active_total += sr.active_size;
    result.mean_active_size = active_total / result.steps;
    if (schedule.snapshot_every > 0 && (step + 1) % schedule.snapshot_every == 0) {
      result.snapshots.push_back({step + 1, result.state.t, result.state.c});
    }

    const std::vector<bool> now = sign_pattern(result.state.c);
    stable = now == signs ? stable + 1 : 0;
    signs = now;
    if (stable >= schedule.window) {
      result.reason = StopReason::converged;
      return result;
    }
  }
  result.reason = StopReason::max_steps;
  return result;
}

}  // namespace gc
