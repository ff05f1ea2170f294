#pragma once

#include "gcontour/evolution.hpp"

namespace gc {

// Which side of the front may move. Expanding updates the outside rim and
// the on-curve vertices, so the inside region can only grow; shrinking is
// the mirror image; general updates both rims.
enum class BandMode { general, expanding, shrinking };

struct ActiveSet {
  VertexSet u_plus;   // c > zero_tol (outside)
  VertexSet u_minus;  // c < -zero_tol (inside)
  VertexSet u_zero;   // |c| <= zero_tol (on the curve)
  VertexSet active;   // the vertices a constrained step may update
};

// Partition by sign with zero tolerance 1e-12 * r, then pick the update set:
// boundary(u_plus), boundary(u_minus) or both, always plus u_zero.
ActiveSet compute_active(const DelaunayGraph& graph, const std::vector<double>& c, double r,
                         BandMode mode);

// Principal restriction of a full system to the active rows and columns.
// Returns false (and leaves outputs empty) when the active set is empty,
// which callers treat as converged.
bool reduced_system(const SparseSymMatrix& a, const std::vector<double>& b,
                    const VertexSet& active, SparseSymMatrix* a_out,
                    std::vector<double>* b_out, std::vector<int>* vertices);

struct ConstrainedStepResult {
  LevelSetState state;
  bool front_empty = false;
  int active_size = 0;
};

// One saturated narrow-band step: assemble on the active set, solve
// A* dc = dt * b*, scatter, clamp to [-r, r]. Inactive vertices keep their
// values bit-identically.
ConstrainedStepResult constrained_step(const DelaunayGraph& graph, ContourModel& model,
                                       const LevelSetState& state, double dt,
                                       const TimeSchedule& schedule, BandMode band,
                                       MassMode mode);

// Narrow-band evolution loop; stops on an empty active set, a sign pattern
// stable for schedule.window steps, or max_steps. Default step size is 1/N
// for the one-sided bands and 1/(4N) for the general band, whose two-sided
// updates are subject to the explicit diffusion stability limit.
EvolveResult constrained_evolve(const DelaunayGraph& graph, ContourModel& model,
                                std::vector<double> c0, const TimeSchedule& schedule,
                                BandMode band, MassMode mode);

// Same loop from an existing state, keeping its plateau radius r. Used when
// several runs share one saturation level.
EvolveResult constrained_evolve(const DelaunayGraph& graph, ContourModel& model,
                                LevelSetState start, const TimeSchedule& schedule,
                                BandMode band, MassMode mode);

}  // namespace gc
