#include "gcontour/models.hpp"

#include <cmath>

#include "gcontour/errors.hpp"

namespace gc {

Vec2 triangle_gradient(const DelaunayGraph& graph, const std::vector<double>& values, int tri) {
  const Triangle& t = graph.triangles[tri];
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    g = g + values[t.v[k]] * t.grad[k];
  }
  return g;
}

double edge_stopping(double grad_norm, double lambda) {
  return 1.0 / (1.0 + lambda * grad_norm * grad_norm);
}

EdgeStopField compute_edge_stop(const DelaunayGraph& graph, const FeatureField& features,
                                double lambda) {
  EdgeStopField out;
  const std::size_t nt = graph.triangles.size();
  out.grad_norm.assign(nt, 0.0);
  out.g.assign(nt, 1.0);
  std::vector<double> channel(graph.vertices.size());
  for (int k = 0; k < features.channels; ++k) {
    for (int v = 0; v < graph.n(); ++v) channel[v] = features.at(v, k);
    for (std::size_t t = 0; t < nt; ++t) {
      const Vec2 g = triangle_gradient(graph, channel, static_cast<int>(t));
      out.grad_norm[t] += dot(g, g);
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    out.grad_norm[t] = std::sqrt(out.grad_norm[t]);
    out.g[t] = edge_stopping(out.grad_norm[t], lambda);
  }
  return out;
}

void ContourModel::begin_step(const DelaunayGraph& graph, const std::vector<double>& c,
                              double r) {
  if (eps_grad > 0.0) {
    eps_eff_ = eps_grad;
  } else {
    const double h = graph.mean_edge_length > 0.0 ? graph.mean_edge_length : 1.0;
    const double scale = r > 0.0 ? r : 1.0;
    eps_eff_ = 1e-4 * scale / h;
  }
  if (kind == ModelKind::acwe) {
    if (!features) throw Error("ContourModel: acwe needs a feature field");
    const RegionMeans means = acwe_region_means(graph, c, *features);
    c1_ = means.c1;
    c2_ = means.c2;
  }
}

Coefficients ContourModel::coefficients(const DelaunayGraph& graph,
                                        const std::vector<double>& c, int tri) const {
  const Triangle& t = graph.triangles[tri];
  const Vec2 grad_u = triangle_gradient(graph, c, tri);
  // Regularized gradient magnitude keeps F finite on flat regions.
  const double mag = std::sqrt(dot(grad_u, grad_u) + eps_eff_ * eps_eff_);

  Coefficients out;
  switch (kind) {
    case ModelKind::erosion:
      out.f = 1.0 / mag;
      out.g = 0.0;
      out.h = speed;
      break;
    case ModelKind::geometric: {
      const double gi = edge_stop->g[tri];
      out.f = 1.0 / (gi * mag);
      out.g = 1.0 / mag;
      out.h = 0.0;
      break;
    }
    case ModelKind::geodesic: {
      const double gi = edge_stop->g[tri];
      out.f = 1.0 / mag;
      out.g = gi / mag;
      out.h = beta;
      break;
    }
    case ModelKind::acwe: {
      const double u0 =
          (features->at(t.v[0]) + features->at(t.v[1]) + features->at(t.v[2])) / 3.0;
      out.f = 1.0;
      out.g = mu / mag;
      // Region competition under the inside-is-negative convention: vertices
      // matching the inside mean are driven further negative.
      out.h = nu + lambda1 * (u0 - c1_) * (u0 - c1_) - lambda2 * (u0 - c2_) * (u0 - c2_);
      break;
    }
    case ModelKind::gar: {
      const double gi = edge_stop->g[tri];
      const std::vector<double>& lk = *likelihood;
      double p = (lk[t.v[0]] + lk[t.v[1]] + lk[t.v[2]]) / 3.0;
      if (direction == GarDirection::shrink) p = 1.0 - p;
      out.f = 1.0 / mag;
      out.g = p / mag;
      // The balloon grows the inside region when expanding (drives the
      // level-set values down) and expels it when shrinking.
      out.h = (direction == GarDirection::expand ? -beta : beta) * gi * p;
      break;
    }
  }
  return out;
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "erosion") return ModelKind::erosion;
  if (name == "geometric") return ModelKind::geometric;
  if (name == "geodesic") return ModelKind::geodesic;
  if (name == "acwe") return ModelKind::acwe;
  if (name == "gar") return ModelKind::gar;
  throw Error("unknown model: " + name);
}

RegionMeans acwe_region_means(const DelaunayGraph& graph, const std::vector<double>& c,
                              const FeatureField& features) {
  double sum_in = 0.0, sum_out = 0.0, sum_all = 0.0;
  int n_in = 0, n_out = 0;
  for (int v = 0; v < graph.n(); ++v) {
    const double f = features.at(v);
    sum_all += f;
    if (c[v] <= 0.0) {
      sum_in += f;
      ++n_in;
    } else {
      sum_out += f;
      ++n_out;
    }
  }
  RegionMeans out;
  const double global = graph.n() > 0 ? sum_all / graph.n() : 0.0;
  out.inside_empty = n_in == 0;
  out.outside_empty = n_out == 0;
  out.c1 = out.inside_empty ? global : sum_in / n_in;
  out.c2 = out.outside_empty ? global : sum_out / n_out;
  return out;
}

}  // namespace gc
