#include "gcontour/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "gcontour/errors.hpp"

namespace gc {

double default_explicit_dt(int n_vertices) {
  return 1.0 / (static_cast<double>(n_vertices) * n_vertices);
}

double default_implicit_dt(int n_vertices) {
  return 1.0 / static_cast<double>(n_vertices);
}

namespace {

std::vector<double> solve_system(const SparseSymMatrix& a, const std::vector<double>& rhs,
                                 const TimeSchedule& schedule, MassMode mode) {
  if (mode == MassMode::lumped) return solve_diagonal(a, rhs);
  return solve_cg(a, rhs, schedule.solver_tol, schedule.solver_max_iterations);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

LevelSetState explicit_euler_step(const DelaunayGraph& graph, ContourModel& model,
                                  const LevelSetState& state, double dt,
                                  const TimeSchedule& schedule, MassMode mode) {
  model.begin_step(graph, state.c, state.r);
  const SparseSymMatrix a = assemble_A(graph, model, state, mode);
  std::vector<double> rhs = assemble_b(graph, model, state);
  for (double& v : rhs) v *= dt;
  const std::vector<double> delta = solve_system(a, rhs, schedule, mode);
  LevelSetState next = state;
  for (std::size_t i = 0; i < next.c.size(); ++i) next.c[i] += delta[i];
  next.t += dt;
  return next;
}

LevelSetState implicit_euler_step(const DelaunayGraph& graph, ContourModel& model,
                                  const LevelSetState& state, double dt,
                                  const TimeSchedule& schedule, MassMode mode) {
  constexpr int kMaxInner = 20;
  LevelSetState iterate = state;
  for (int inner = 0; inner < kMaxInner; ++inner) {
    model.begin_step(graph, iterate.c, iterate.r);
    const SparseSymMatrix a = assemble_A(graph, model, iterate, mode);
    std::vector<double> rhs = assemble_b(graph, model, iterate);
    for (double& v : rhs) v *= dt;
    const std::vector<double> delta = solve_system(a, rhs, schedule, mode);

    LevelSetState next = state;
    for (std::size_t i = 0; i < next.c.size(); ++i) next.c[i] += delta[i];
    const double moved = max_abs_diff(next.c, iterate.c);
    iterate = std::move(next);
    if (moved <= schedule.solver_tol) {
      iterate.t = state.t + dt;
      return iterate;
    }
  }
  throw PicardError("implicit_euler_step: Picard iteration did not settle", kMaxInner,
                    max_abs_diff(iterate.c, state.c));
}

std::vector<bool> sign_pattern(const std::vector<double>& c) {
  std::vector<bool> s(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) s[i] = c[i] <= 0.0;
  return s;
}

EvolveResult evolve(const DelaunayGraph& graph, ContourModel& model, std::vector<double> c0,
                    const TimeSchedule& schedule, Stepper stepper, MassMode mode) {
  EvolveResult result;
  result.state = LevelSetState::from_initial(std::move(c0));
  double dt = schedule.dt;
  if (dt <= 0.0) {
    dt = stepper == Stepper::explicit_euler ? default_explicit_dt(graph.n())
                                            : default_implicit_dt(graph.n());
  }

  std::vector<bool> signs = sign_pattern(result.state.c);
  int stable = 0;
  const auto maybe_snapshot = [&](int step) {
    if (schedule.snapshot_every > 0 && step % schedule.snapshot_every == 0) {
      result.snapshots.push_back({step, result.state.t, result.state.c});
    }
  };
  maybe_snapshot(0);

  for (int step = 0; step < schedule.max_steps; ++step) {
    LevelSetState next;
    if (stepper == Stepper::explicit_euler) {
      next = explicit_euler_step(graph, model, result.state, dt, schedule, mode);
    } else {
      // Retry a failed Picard loop with smaller steps before giving up.
      double trial_dt = dt;
      int attempts = 0;
      for (;;) {
        try {
          next = implicit_euler_step(graph, model, result.state, trial_dt, schedule, mode);
          break;
        } catch (const PicardError&) {
          if (++attempts > 5) throw;
          trial_dt *= 0.5;
        }
      }
    }
    result.state = std::move(next);
    result.steps = step + 1;
    maybe_snapshot(step + 1);

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
