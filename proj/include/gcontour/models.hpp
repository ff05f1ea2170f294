#pragma once

#include <string>
#include <vector>

#include "gcontour/graph.hpp"

namespace gc {

// Per-vertex features in [0, 1], vertex-major: values[v * channels + k].
struct FeatureField {
  int channels = 1;
  std::vector<double> values;

  double at(int v, int k = 0) const { return values[static_cast<std::size_t>(v) * channels + k]; }
  int n() const { return channels == 0 ? 0 : static_cast<int>(values.size()) / channels; }
};

// Per-triangle feature geometry: gradient magnitude of the feature field
// (multichannel via the Euclidean norm of per-channel magnitudes) and the
// edge-stopping value derived from it.
struct EdgeStopField {
  std::vector<double> grad_norm;  // per triangle
  std::vector<double> g;          // per triangle, in (0, 1]
};

// Gradient of a linear interpolant of per-vertex values over one triangle.
Vec2 triangle_gradient(const DelaunayGraph& graph, const std::vector<double>& values, int tri);

// g = 1 / (1 + lambda * |grad|^2).
double edge_stopping(double grad_norm, double lambda);

EdgeStopField compute_edge_stop(const DelaunayGraph& graph, const FeatureField& features,
                                double lambda);

enum class ModelKind { erosion, geometric, geodesic, acwe, gar };

enum class GarDirection { expand, shrink };

// Coefficients of one evolution step on one triangle, frozen at the current
// level-set iterate.
struct Coefficients {
  double f = 1.0;  // weights the mass term; strictly positive
  double g = 0.0;  // weights the stiffness (curvature) term
  double h = 0.0;  // source term
};

// The five contour models share one evaluator. Vertex-level inputs (features,
// likelihoods) are mapped to triangles inside coefficients(); begin_step()
// refreshes the per-step caches (region means for the two-phase model, the
// gradient regularization default) and must run before a step's evaluations.
class ContourModel {
 public:
  ModelKind kind = ModelKind::erosion;

  // erosion: signed front speed. Positive pushes the level-set values up,
  // which shrinks the inside (negative) region.
  double speed = 1.0;
  // geodesic and gar: balloon magnitude.
  double beta = 1.0;
  // acwe weights.
  double mu = 0.01;
  double nu = 0.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  // Gradient regularization; <= 0 requests the default 1e-4 * r / mean edge
  // length, resolved in begin_step().
  double eps_grad = 0.0;

  GarDirection direction = GarDirection::expand;

  const FeatureField* features = nullptr;       // acwe (channel 0 used)
  const EdgeStopField* edge_stop = nullptr;     // geometric, geodesic, gar
  const std::vector<double>* likelihood = nullptr;  // gar, per vertex in (0, 1)

  void begin_step(const DelaunayGraph& graph, const std::vector<double>& c, double r);
  Coefficients coefficients(const DelaunayGraph& graph, const std::vector<double>& c,
                            int tri) const;

  double acwe_c1() const { return c1_; }
  double acwe_c2() const { return c2_; }

 private:
  double c1_ = 0.0;
  double c2_ = 0.0;
  double eps_eff_ = 1e-8;
};

ModelKind model_kind_from_name(const std::string& name);

// Means of the (channel 0) feature over the inside region {c <= 0} and the
// outside region {c > 0}. An empty region falls back to the global mean and
// raises the corresponding flag.
struct RegionMeans {
  double c1 = 0.0;
  double c2 = 0.0;
  bool inside_empty = false;
  bool outside_empty = false;
};

RegionMeans acwe_region_means(const DelaunayGraph& graph, const std::vector<double>& c,
                              const FeatureField& features);

}  // namespace gc
