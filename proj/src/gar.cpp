#include "gcontour/gar.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gcontour/errors.hpp"

namespace gc {

namespace {

std::size_t histogram_size(int bins, int channels) {
  std::size_t s = 1;
  for (int k = 0; k < channels; ++k) s *= static_cast<std::size_t>(bins);
  return s;
}

std::size_t bin_index(const FeatureField& features, int v, int bins) {
  std::size_t idx = 0;
  for (int k = 0; k < features.channels; ++k) {
    int b = static_cast<int>(features.at(v, k) * bins);
    b = std::clamp(b, 0, bins - 1);
    idx = idx * bins + static_cast<std::size_t>(b);
  }
  return idx;
}

std::vector<double> smoothed_pmf(const FeatureField& features, const std::vector<int>& samples,
                                 std::size_t size, int bins, double smoothing,
                                 const char* which) {
  if (samples.empty()) throw TrainingError(std::string("no ") + which + " training samples");
  std::vector<double> pmf(size, 0.0);
  for (int v : samples) pmf[bin_index(features, v, bins)] += 1.0;
  const double denom = static_cast<double>(samples.size()) + smoothing * size;
  for (double& p : pmf) p = (p + smoothing) / denom;
  return pmf;
}

// Multi-source BFS hop distances; -1 where unreachable.
std::vector<int> hop_distance(const DelaunayGraph& graph, const std::vector<int>& sources) {
  std::vector<int> dist(graph.n(), -1);
  std::vector<int> queue;
  queue.reserve(graph.n());
  for (int v : sources) {
    dist[v] = 0;
    queue.push_back(v);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int u : graph.adjacency[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace

RegionHistograms train_histograms(const FeatureField& features, const VertexSet& fg_samples,
                                  const VertexSet& bg_samples, int bins, double smoothing) {
  if (bins < 1) throw Error("train_histograms: bins must be positive");
  RegionHistograms h;
  h.bins = bins;
  h.channels = features.channels;
  const std::size_t size = histogram_size(bins, features.channels);
  h.fg = smoothed_pmf(features, fg_samples.members(), size, bins, smoothing, "foreground");
  h.bg = smoothed_pmf(features, bg_samples.members(), size, bins, smoothing, "background");
  return h;
}

LikelihoodField likelihood_field(const RegionHistograms& hist, const FeatureField& features,
                                 double alpha) {
  const int n = features.n();
  LikelihoodField out;
  out.fg.resize(n);
  out.bg.resize(n);
  out.log_ratio.resize(n);
  out.sigmoid.resize(n);
  for (int v = 0; v < n; ++v) {
    const std::size_t idx = bin_index(features, v, hist.bins);
    const double pf = hist.fg[idx];
    const double pb = hist.bg[idx];
    out.fg[v] = pf;
    out.bg[v] = pb;
    // Equal masses (including two unsmoothed zeros) mean no evidence.
    const double l = pf == pb ? 0.0 : std::log(pf / pb);
    out.log_ratio[v] = l;
    out.sigmoid[v] = 1.0 / (1.0 + std::exp(-alpha * l));
  }
  return out;
}

VertexSet refine_boundary(const DelaunayGraph& graph, const FeatureField& features,
                          const VertexSet& inside, int hops, int bins, double smoothing) {
  const int n = graph.n();
  if (hops <= 0) return inside;
  std::vector<int> in_sources, out_sources;
  for (int v = 0; v < n; ++v) {
    (inside.contains(v) ? in_sources : out_sources).push_back(v);
  }
  // A one-sided labeling has no boundary to refine.
  if (in_sources.empty() || out_sources.empty()) return inside;

  const std::vector<int> to_inside = hop_distance(graph, in_sources);
  const std::vector<int> to_outside = hop_distance(graph, out_sources);
  std::vector<int> band;
  VertexSet fg_band(n), bg_band(n);
  for (int v = 0; v < n; ++v) {
    const int d = inside.contains(v) ? to_outside[v] : to_inside[v];
    if (d < 0 || d > hops) continue;
    band.push_back(v);
    (inside.contains(v) ? fg_band : bg_band).insert(v);
  }
  if (fg_band.count() == 0 || bg_band.count() == 0) return inside;

  const RegionHistograms local = train_histograms(features, fg_band, bg_band, bins, smoothing);
  VertexSet relabeled = inside;
  for (int v : band) {
    const std::size_t idx = bin_index(features, v, bins);
    // Ties go to the foreground.
    if (local.fg[idx] >= local.bg[idx]) {
      relabeled.insert(v);
    } else {
      relabeled.erase(v);
    }
  }

  // One synchronous majority vote over closed neighborhoods smooths out
  // isolated flips; an exact tie keeps the histogram label.
  VertexSet out = relabeled;
  for (int v : band) {
    int fg = relabeled.contains(v) ? 1 : 0;
    int total = 1;
    for (int u : graph.adjacency[v]) {
      fg += relabeled.contains(u) ? 1 : 0;
      ++total;
    }
    if (2 * fg > total) {
      out.insert(v);
    } else if (2 * fg < total) {
      out.erase(v);
    }
  }
  return out;
}

SeedLabeling apply_roi(const DelaunayGraph& graph, SeedLabeling seeds) {
  if (seeds.roi.empty()) return seeds;
  const double tol = 1e-9 * std::max(1.0, graph.mean_edge_length);
  for (int v = 0; v < graph.n(); ++v) {
    const Vec2 p = graph.vertices[static_cast<std::size_t>(v)];
    if (point_in_polygon(p, seeds.roi) || point_on_polygon(p, seeds.roi, tol)) continue;
    seeds.f.erase(v);
    seeds.u.erase(v);
    seeds.b.insert(v);
  }
  return seeds;
}

GarResult gar_run(const DelaunayGraph& graph, const FeatureField& features,
                  const SeedLabeling& raw_seeds, const GarParams& params) {
  const int n = graph.n();
  if (features.n() != n) throw Error("gar_run: feature field does not match the graph");

  const SeedLabeling seeds = apply_roi(graph, raw_seeds);
  const EdgeStopField es = compute_edge_stop(graph, features, params.lambda);

  LevelSetState state = LevelSetState::from_initial(signed_distance_from_set(graph, seeds.f));
  const double pin = std::min(0.5 * graph.mean_edge_length, state.r);

  TimeSchedule schedule;
  schedule.dt = params.dt > 0.0 ? params.dt : 10.0 / n;
  schedule.max_steps = params.phase_max_steps;
  schedule.window = params.window;

  ContourModel model;
  model.kind = ModelKind::gar;
  model.beta = params.beta;
  model.eps_grad = params.eps_grad;
  model.edge_stop = &es;
  LikelihoodField lik;
  model.likelihood = &lik.sigmoid;

  // Seeds are hard constraints: F stays inside and B outside, whatever the
  // evolution did to their level-set values.
  auto pin_seeds = [&](std::vector<double>& c) {
    for (int v : seeds.f.members()) c[v] = std::min(c[v], -pin);
    for (int v : seeds.b.members()) c[v] = std::max(c[v], pin);
  };
  auto labels_of = [&](const std::vector<double>& c) {
    VertexSet s(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (c[v] <= 0.0) s.insert(v);
    }
    return s;
  };
  // Foreground model from the current estimate, background from the
  // permanent seeds; undecided vertices never train.
  auto retrain = [&](const VertexSet& fg) {
    const RegionHistograms h =
        train_histograms(features, fg, seeds.b, params.bins, params.smoothing);
    lik = likelihood_field(h, features, params.alpha);
  };

  GarResult result;
  VertexSet previous = labels_of(state.c);
  for (int outer = 0; outer < params.max_outer; ++outer) {
    retrain(labels_of(state.c));
    model.direction = GarDirection::expand;
    EvolveResult phase =
        constrained_evolve(graph, model, state, schedule, BandMode::expanding, MassMode::lumped);
    state = std::move(phase.state);
    pin_seeds(state.c);

    retrain(labels_of(state.c));
    model.direction = GarDirection::shrink;
    phase =
        constrained_evolve(graph, model, state, schedule, BandMode::shrinking, MassMode::lumped);
    state = std::move(phase.state);
    pin_seeds(state.c);

    const VertexSet labels = labels_of(state.c);
    int same = 0;
    for (int v = 0; v < n; ++v) {
      if (labels.contains(v) == previous.contains(v)) ++same;
    }
    const double agreement = static_cast<double>(same) / n;
    result.agreements.push_back(agreement);
    result.outer_iterations = outer + 1;
    previous = labels;
    if (agreement >= params.agreement) {
      result.converged = true;
      break;
    }
  }
  for (std::size_t i = 1; i < result.agreements.size(); ++i) {
    if (result.agreements[i] < result.agreements[i - 1] - 1e-12) {
      result.agreement_monotone = false;
    }
  }

  VertexSet inside = labels_of(state.c);
  inside = refine_boundary(graph, features, inside, params.refine_hops, params.bins,
                           params.smoothing);
  for (int v : seeds.b.members()) inside.erase(v);
  for (int v : seeds.f.members()) inside.insert(v);
  result.inside = inside;
  return result;
}

}  // namespace gc
