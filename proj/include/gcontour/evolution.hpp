#pragma once

#include <functional>
#include <vector>

#include "gcontour/fem.hpp"

namespace gc {

struct TimeSchedule {
  double dt = 0.0;          // <= 0 picks the stepper default
  int max_steps = 1000;
  int window = 10;          // converged after this many steps with a fixed sign pattern
  double solver_tol = 1e-8;
  int solver_max_iterations = 2000;
  int snapshot_every = 0;   // 0 disables trajectory capture
};

enum class Stepper { explicit_euler, implicit_euler };

enum class StopReason { converged, max_steps, empty_active };

struct Snapshot {
  int step = 0;
  double t = 0.0;
  std::vector<double> c;
};

struct EvolveResult {
  LevelSetState state;
  int steps = 0;
  StopReason reason = StopReason::max_steps;
  std::vector<Snapshot> snapshots;
  double mean_active_size = 0.0;  // filled by the narrow-band driver
};

// Conservative stability default for the explicit scheme; the implicit one
// tolerates much larger steps.
double default_explicit_dt(int n_vertices);
double default_implicit_dt(int n_vertices);

// One forward Euler step of A(c) dc/dt = b(c): solve A(c_k) d = dt * b(c_k)
// and add. Coefficients are frozen at c_k via model.begin_step.
LevelSetState explicit_euler_step(const DelaunayGraph& graph, ContourModel& model,
                                  const LevelSetState& state, double dt,
                                  const TimeSchedule& schedule, MassMode mode);

// Backward Euler solved by Picard iteration: freeze coefficients at the
// latest iterate, solve, repeat until the iterate moves by at most
// solver_tol (max inner norm), at most 20 inner iterations. Throws
// PicardError when the inner loop fails to settle.
LevelSetState implicit_euler_step(const DelaunayGraph& graph, ContourModel& model,
                                  const LevelSetState& state, double dt,
                                  const TimeSchedule& schedule, MassMode mode);

// Full-domain evolution. Stops when the vertex sign pattern of c holds for
// `window` consecutive steps, or at max_steps. On PicardError the step is
// retried with a halved dt (a few times) before giving up.
EvolveResult evolve(const DelaunayGraph& graph, ContourModel& model, std::vector<double> c0,
                    const TimeSchedule& schedule, Stepper stepper, MassMode mode);

// Binary per-vertex labels (true = inside, c <= 0).
std::vector<bool> sign_pattern(const std::vector<double>& c);

}  // namespace gc
