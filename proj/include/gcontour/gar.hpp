#pragma once

#include <vector>

#include "gcontour/metrics.hpp"
#include "gcontour/models.hpp"
#include "gcontour/narrowband.hpp"

namespace gc {

// User seeds: F and B are committed foreground/background vertices, U is the
// undecided remainder. The three sets partition the graph. An optional
// region-of-interest polygon restricts the search: everything outside it is
// treated as background (empty polygon = whole domain).
struct SeedLabeling {
  VertexSet f;
  VertexSet b;
  VertexSet u;
  Polygon roi;
};

// Moves vertices outside the ROI polygon into B (no-op without one).
SeedLabeling apply_roi(const DelaunayGraph& graph, SeedLabeling seeds);

// Smoothed and normalized color histograms of the two regions, bins^channels
// cells, flattened channel-major.
struct RegionHistograms {
  int bins = 16;
  int channels = 3;
  std::vector<double> fg;
  std::vector<double> bg;
};

// Add-s smoothed histograms over the sample sets. Throws TrainingError when
// either sample set is empty (with smoothing alone there is no region model).
RegionHistograms train_histograms(const FeatureField& features, const VertexSet& fg_samples,
                                  const VertexSet& bg_samples, int bins, double smoothing);

// Per-vertex region evidence: histogram lookups, their log ratio, and the
// sigmoid squashing 1 / (1 + exp(-alpha * log_ratio)).
struct LikelihoodField {
  std::vector<double> fg;
  std::vector<double> bg;
  std::vector<double> log_ratio;
  std::vector<double> sigmoid;
};

LikelihoodField likelihood_field(const RegionHistograms& hist, const FeatureField& features,
                                 double alpha);

struct GarParams {
  int bins = 16;
  double smoothing = 1.0;
  double alpha = 5.0;        // sigmoid gain
  double beta = 1.0;         // balloon magnitude
  double lambda = 1.0;       // edge-stopping sensitivity
  double agreement = 0.995;  // outer-loop stop threshold
  int max_outer = 10;
  int refine_hops = 2;
  double dt = 0.0;           // <= 0 picks 10 / N
  int phase_max_steps = 2000;
  int window = 10;
  double eps_grad = 0.0;
};

struct GarResult {
  VertexSet inside;
  int outer_iterations = 0;
  bool converged = false;
  bool agreement_monotone = true;
  std::vector<double> agreements;  // per outer iteration
};

// Alternating region growth: train histograms on the current estimates
// (foreground = inside the contour, background = permanent B; undecided
// vertices never train), expand with the foreground likelihood, retrain,
// shrink with its complement, until the labeling settles. Foreground seeds
// are pinned inside throughout. Ends with one boundary refinement pass.
GarResult gar_run(const DelaunayGraph& graph, const FeatureField& features,
                  const SeedLabeling& seeds, const GarParams& params);

// Relabels vertices within `hops` of the mask boundary using histograms
// trained on that band only, then applies one median (majority) pass over
// the band. hops = 0 leaves the mask untouched.
VertexSet refine_boundary(const DelaunayGraph& graph, const FeatureField& features,
                          const VertexSet& inside, int hops, int bins, double smoothing);

}  // namespace gc
