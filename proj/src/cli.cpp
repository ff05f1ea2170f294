#include "gcontour/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gcontour/errors.hpp"
#include "gcontour/evolution.hpp"
#include "gcontour/gar.hpp"
#include "gcontour/io.hpp"
#include "gcontour/metrics.hpp"
#include "gcontour/narrowband.hpp"

namespace gc {
namespace {

// Option combinations CLI11 cannot express (either-or inputs) surface as
// usage errors, exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  std::string model = "geodesic";
  double speed = 1.0;
  double beta = 1.0;
  double mu = 0.01;
  double nu = 0.0;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda = 1.0;
  double eps_grad = 0.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags* f) {
  cmd->add_option("--model", f->model, "contour model")
      ->check(CLI::IsMember({"erosion", "geometric", "geodesic", "acwe", "gar"}));
  cmd->add_option("--speed", f->speed, "erosion speed; positive shrinks the inside");
  cmd->add_option("--beta", f->beta, "balloon magnitude");
  cmd->add_option("--mu", f->mu, "acwe curvature weight");
  cmd->add_option("--nu", f->nu, "acwe area weight");
  cmd->add_option("--lambda1", f->lambda1, "acwe inside fit weight");
  cmd->add_option("--lambda2", f->lambda2, "acwe outside fit weight");
  cmd->add_option("--lambda", f->lambda, "edge-stopping sensitivity");
  cmd->add_option("--eps-grad", f->eps_grad, "gradient regularization; <= 0 for the default");
}

struct ScheduleFlags {
  double dt = 0.0;
  int steps = 1000;
  int window = 10;
  double tol = 1e-8;
  int max_iterations = 2000;
  int snapshot_every = 0;
  std::string snapshot_prefix = "snapshot";
  std::string mass = "consistent";
  std::string mode = "full";
  std::string band = "general";
  std::string integrator = "explicit";
};

void add_schedule_flags(CLI::App* cmd, ScheduleFlags* s) {
  cmd->add_option("--dt", s->dt, "time step; <= 0 picks the scheme default");
  cmd->add_option("--steps", s->steps, "step limit");
  cmd->add_option("--window", s->window, "steps of a stable sign pattern to declare convergence");
  cmd->add_option("--tol", s->tol, "linear solver tolerance");
  cmd->add_option("--max-iterations", s->max_iterations, "linear solver iteration cap");
  cmd->add_option("--snapshot-every", s->snapshot_every, "write a snapshot every k steps");
  cmd->add_option("--snapshot-prefix", s->snapshot_prefix, "snapshot file prefix");
  cmd->add_option("--mass", s->mass, "mass matrix treatment")
      ->check(CLI::IsMember({"consistent", "lumped"}));
  cmd->add_option("--evolution", s->mode, "full-domain or narrow-band updates")
      ->check(CLI::IsMember({"full", "narrow"}));
  cmd->add_option("--band", s->band, "narrow-band side constraint")
      ->check(CLI::IsMember({"general", "expanding", "shrinking"}));
  cmd->add_option("--integrator", s->integrator, "time integrator for full evolution")
      ->check(CLI::IsMember({"explicit", "implicit"}));
}

struct GarFlags {
  int bins = 16;
  double smoothing = 1.0;
  double alpha = 5.0;
  double agreement = 0.995;
  int max_outer = 10;
  int refine_hops = 2;
  int phase_steps = 2000;
};

void add_gar_flags(CLI::App* cmd, GarFlags* g) {
  cmd->add_option("--bins", g->bins, "histogram bins per channel");
  cmd->add_option("--smoothing", g->smoothing, "histogram additive smoothing");
  cmd->add_option("--alpha", g->alpha, "likelihood sigmoid gain");
  cmd->add_option("--agreement", g->agreement, "label agreement that stops the outer loop");
  cmd->add_option("--max-outer", g->max_outer, "outer iteration cap");
  cmd->add_option("--refine-hops", g->refine_hops, "boundary refinement band width");
  cmd->add_option("--phase-steps", g->phase_steps, "step cap per expand/shrink phase");
}

TimeSchedule to_schedule(const ScheduleFlags& s) {
  TimeSchedule t;
  t.dt = s.dt;
  t.max_steps = s.steps;
  t.window = s.window;
  t.solver_tol = s.tol;
  t.solver_max_iterations = s.max_iterations;
  t.snapshot_every = s.snapshot_every;
  return t;
}

MassMode to_mass(const std::string& s) {
  return s == "lumped" ? MassMode::lumped : MassMode::consistent;
}

BandMode to_band(const std::string& s) {
  if (s == "expanding") return BandMode::expanding;
  if (s == "shrinking") return BandMode::shrinking;
  return BandMode::general;
}

GarParams to_gar_params(const GarFlags& g, const ModelFlags& m, const ScheduleFlags& s) {
  GarParams p;
  p.bins = g.bins;
  p.smoothing = g.smoothing;
  p.alpha = g.alpha;
  p.beta = m.beta;
  p.lambda = m.lambda;
  p.agreement = g.agreement;
  p.max_outer = g.max_outer;
  p.refine_hops = g.refine_hops;
  p.dt = s.dt;
  p.phase_max_steps = g.phase_steps;
  p.window = s.window;
  p.eps_grad = m.eps_grad;
  return p;
}

// A model plus the storage its pointers reference.
struct ModelContext {
  ContourModel model;
  EdgeStopField edge_stop;
  FeatureField flat;  // stands in when the domain has no features
};

ModelContext make_model(const ModelFlags& f, const DelaunayGraph& graph,
                        const FeatureField* features) {
  ModelContext ctx;
  ContourModel& m = ctx.model;
  m.kind = model_kind_from_name(f.model);
  m.speed = f.speed;
  m.beta = f.beta;
  m.mu = f.mu;
  m.nu = f.nu;
  m.lambda1 = f.lambda1;
  m.lambda2 = f.lambda2;
  m.eps_grad = f.eps_grad;

  const bool has_features = features && features->channels > 0 && features->n() == graph.n();
  if (!has_features) {
    ctx.flat.channels = 1;
    ctx.flat.values.assign(static_cast<std::size_t>(graph.n()), 0.0);
  }
  const FeatureField* feat = has_features ? features : &ctx.flat;

  switch (m.kind) {
    case ModelKind::erosion:
      break;
    case ModelKind::geometric:
    case ModelKind::geodesic:
      ctx.edge_stop = compute_edge_stop(graph, *feat, f.lambda);
      m.edge_stop = &ctx.edge_stop;
      break;
    case ModelKind::acwe:
      if (!has_features) throw Error("acwe needs per-vertex features");
      m.features = features;
      break;
    case ModelKind::gar:
      throw Error("the gar pipeline runs through segment-image or segment-graph");
  }
  return ctx;
}

// Input domain: an image on a (possibly subsampled) graph, or a bare graph
// file with an optional feature column.
struct Domain {
  DelaunayGraph graph;
  FeatureField features;
  std::vector<std::pair<int, int>> pixel;
  bool from_image = false;
};

struct DomainFlags {
  std::string image;
  std::string graph_file;
  int subsample = 0;
  std::string sample_mode = "random";
  std::uint64_t seed = 1;
};

void add_domain_flags(CLI::App* cmd, DomainFlags* d, bool image_only) {
  cmd->add_option("--image", d->image, "P5/P6 input image");
  if (!image_only) cmd->add_option("--graph", d->graph_file, "graph text file");
  cmd->add_option("--subsample", d->subsample,
                  "build the graph from this many image samples instead of the pixel grid");
  cmd->add_option("--sample-mode", d->sample_mode, "subsample placement")
      ->check(CLI::IsMember({"random", "grid"}));
  cmd->add_option("--seed", d->seed, "random sampling seed");
}

Domain load_domain(const DomainFlags& d) {
  Domain dom;
  if (!d.image.empty() && !d.graph_file.empty()) {
    throw UsageError("give either --image or --graph, not both");
  }
  if (!d.image.empty()) {
    const PnmImage img = read_pnm(d.image);
    ImageGraph ig;
    if (d.subsample > 0) {
      if (d.sample_mode == "grid") {
        ig = subsample_grid_from_image(img, d.subsample);
      } else {
        Rng rng(d.seed);
        ig = subsample_from_image(img, d.subsample, rng);
      }
    } else {
      ig = grid_from_image(img);
    }
    dom.graph = std::move(ig.graph);
    dom.features = std::move(ig.features);
    dom.pixel = std::move(ig.pixel);
    dom.from_image = true;
  } else if (!d.graph_file.empty()) {
    GraphWithFeatures gf = read_graph_features_text(d.graph_file);
    dom.graph = std::move(gf.graph);
    dom.features = std::move(gf.features);
  } else {
    throw UsageError("an input is required: --image or --graph");
  }
  return dom;
}

const char* reason_name(StopReason r) {
  switch (r) {
    case StopReason::converged:
      return "converged";
    case StopReason::max_steps:
      return "max-steps";
    case StopReason::empty_active:
      return "empty-active";
  }
  return "unknown";
}

void write_snapshots(const EvolveResult& result, const std::string& prefix) {
  for (const Snapshot& s : result.snapshots) {
    std::ostringstream name;
    name << prefix << "_" << s.step << ".txt";
    write_snapshot(name.str(), s.step, s.t, s.c);
  }
}

void write_vertex_mask(const std::string& path, const DelaunayGraph& graph,
                       const SegmentationMask& mask) {
  if (graph.is_grid) {
    write_mask_pgm(path, graph, mask);
  } else {
    write_labels_text(path, mask);
  }
}

EvolveResult run_evolution(const Domain& dom, ContourModel& model, std::vector<double> c0,
                           const ScheduleFlags& sched) {
  const TimeSchedule schedule = to_schedule(sched);
  if (sched.mode == "narrow") {
    return constrained_evolve(dom.graph, model, std::move(c0), schedule, to_band(sched.band),
                              to_mass(sched.mass));
  }
  const Stepper stepper =
      sched.integrator == "implicit" ? Stepper::implicit_euler : Stepper::explicit_euler;
  return evolve(dom.graph, model, std::move(c0), schedule, stepper, to_mass(sched.mass));
}

// ---- evolve ----

struct EvolveOpts {
  DomainFlags domain;
  std::string contour_file;
  std::string out;
  std::string contour_out;
  ModelFlags model;
  ScheduleFlags sched;
};

int run_evolve(const EvolveOpts& o) {
  Domain dom = load_domain(o.domain);
  const std::vector<Polygon> contours = read_polygons(o.contour_file);
  std::vector<double> c0 = signed_distance_init(dom.graph, contours);

  ModelContext ctx = make_model(o.model, dom.graph, &dom.features);
  EvolveResult result = run_evolution(dom, ctx.model, std::move(c0), o.sched);

  if (o.sched.snapshot_every > 0) write_snapshots(result, o.sched.snapshot_prefix);
  if (!o.out.empty()) {
    write_snapshot(o.out, result.steps, result.state.t, result.state.c);
  }
  if (!o.contour_out.empty()) {
    write_contours_csv(o.contour_out, levelset_contours(dom.graph, result.state.c));
  }
  std::cout << "steps " << result.steps << " reason " << reason_name(result.reason) << " t "
            << result.state.t;
  if (o.sched.mode == "narrow") std::cout << " mean_active " << result.mean_active_size;
  std::cout << "\n";
  return 0;
}

// ---- segment-image / segment-graph ----

struct SegmentOpts {
  DomainFlags domain;
  std::string trimap;
  std::string seeds_file;
  std::string roi_file;
  std::string contour_file;
  std::string out;
  std::string labels_out;
  std::string contour_out;
  ModelFlags model;
  ScheduleFlags sched;
  GarFlags gar;
};

int run_segment(const SegmentOpts& o, bool image_mode) {
  Domain dom = load_domain(o.domain);
  const int n = dom.graph.n();

  SeedLabeling seeds{VertexSet(static_cast<std::size_t>(n)),
                     VertexSet(static_cast<std::size_t>(n)),
                     VertexSet(static_cast<std::size_t>(n)), {}};
  bool have_seeds = false;
  if (image_mode || !o.trimap.empty()) {
    if (o.trimap.empty()) throw UsageError("--trimap is required");
    ImageGraph ig;  // only the mapping matters for seed decoding
    ig.graph = std::move(dom.graph);
    ig.pixel = dom.pixel;
    seeds = seeds_from_trimap(read_pnm(o.trimap), ig);
    dom.graph = std::move(ig.graph);
    have_seeds = true;
  } else if (!o.seeds_file.empty()) {
    seeds = seeds_from_mask(read_mask(o.seeds_file));
    if (seeds.f.size() != static_cast<std::size_t>(n)) {
      throw Error("seed labeling does not match the graph size");
    }
    have_seeds = true;
  }
  if (!o.roi_file.empty()) {
    const std::vector<Polygon> polys = read_polygons(o.roi_file);
    if (polys.size() != 1) throw UsageError("--roi expects a file with exactly one polygon");
    seeds.roi = polys.front();
  }

  SegmentationMask mask;
  if (o.model.model == "gar") {
    if (!have_seeds) throw UsageError("gar needs --trimap or --seeds");
    if (seeds.f.count() == 0) {
      throw TrainingError("trimap has no foreground seeds, nothing to train on");
    }
    const GarResult result = gar_run(dom.graph, dom.features, seeds,
                                     to_gar_params(o.gar, o.model, o.sched));
    mask = mask_from_set(result.inside, n);
    std::cout << "outer " << result.outer_iterations << " converged "
              << (result.converged ? 1 : 0) << " agreement "
              << (result.agreements.empty() ? 0.0 : result.agreements.back()) << "\n";
  } else {
    std::vector<double> c0;
    if (!o.contour_file.empty()) {
      c0 = signed_distance_init(dom.graph, read_polygons(o.contour_file));
    } else if (have_seeds) {
      if (seeds.f.count() == 0) throw Error("trimap has no foreground seeds");
      c0 = signed_distance_from_set(dom.graph, seeds.f);
    } else {
      throw UsageError("an initial contour is required: --contour or seed input");
    }
    ModelContext ctx = make_model(o.model, dom.graph, &dom.features);
    EvolveResult result = run_evolution(dom, ctx.model, std::move(c0), o.sched);
    mask = mask_from_levelset(result.state.c);
    std::cout << "steps " << result.steps << " reason " << reason_name(result.reason) << "\n";
  }

  write_vertex_mask(o.out, dom.graph, mask);
  if (!o.labels_out.empty()) write_labels_text(o.labels_out, mask);
  if (!o.contour_out.empty()) {
    // The mask as a +/-1 field puts crossings at edge midpoints.
    std::vector<double> field(mask.size());
    for (std::size_t v = 0; v < mask.size(); ++v) field[v] = mask.labels[v] ? -1.0 : 1.0;
    write_contours_csv(o.contour_out, levelset_contours(dom.graph, field));
  }
  return 0;
}

// ---- metrics ----

struct MetricsOpts {
  std::string seg;
  std::string gt;
  std::string trimap;
};

int run_metrics(const MetricsOpts& o) {
  const SegmentationMask seg = read_mask(o.seg);
  const SegmentationMask gt = read_mask(o.gt);
  VertexSet eval(seg.size(), true);
  if (!o.trimap.empty()) {
    const PnmImage tri = read_pnm(o.trimap);
    if (tri.data.size() != seg.size()) {
      throw FormatError("trimap size does not match the masks");
    }
    // Scores are computed where the user gave no seed, the region the
    // segmentation actually had to decide.
    eval = VertexSet(seg.size(), false);
    for (std::size_t i = 0; i < tri.data.size(); ++i) {
      const int v = tri.data[i];
      if (v != 0 && v != 128 && v != 255) {
        std::ostringstream msg;
        msg << "trimap value " << v << " at pixel index " << i;
        throw FormatError(msg.str());
      }
      if (v == 128) eval.insert(static_cast<int>(i));
    }
  }
  std::cout << compute_metrics(seg, gt, eval).report();
  return 0;
}

// ---- subsample-bench ----

struct SubsampleBenchOpts {
  std::string image;
  std::string trimap;
  std::string gt;
  std::vector<long long> factors{64, 16, 4, 1};
  std::string sample_mode = "random";
  std::uint64_t seed = 1;
  ModelFlags model;
  ScheduleFlags sched;
  GarFlags gar;
};

int run_subsample_bench(const SubsampleBenchOpts& o) {
  const PnmImage img = read_pnm(o.image);
  const PnmImage tri = read_pnm(o.trimap);
  const PnmImage gt_img = read_pnm(o.gt);
  const SegmentationMask gt_pixels = mask_from_pgm(gt_img);
  const long long pixels = static_cast<long long>(img.width) * img.height;

  for (long long factor : o.factors) {
    if (factor < 1) throw UsageError("subsample factors must be >= 1");
    const int count =
        static_cast<int>(std::max<long long>(4, std::llround(pixels / static_cast<double>(factor))));
    ImageGraph ig;
    if (o.sample_mode == "grid") {
      ig = subsample_grid_from_image(img, count);
    } else {
      Rng rng(o.seed);
      ig = subsample_from_image(img, count, rng);
    }
    const SeedLabeling seeds = seeds_from_trimap(tri, ig);
    if (seeds.f.count() == 0) {
      throw TrainingError("trimap has no foreground seeds at this subsampling");
    }
    const GarResult result =
        gar_run(ig.graph, ig.features, seeds, to_gar_params(o.gar, o.model, o.sched));
    const int n = ig.graph.n();
    const SegmentationMask seg = mask_from_set(result.inside, n);

    SegmentationMask gt_vertices;
    gt_vertices.labels.resize(static_cast<std::size_t>(n));
    gt_vertices.valid.resize(static_cast<std::size_t>(n));
    VertexSet eval(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
      const auto [row, col] = ig.pixel[v];
      const std::size_t p = static_cast<std::size_t>(row) * img.width + col;
      gt_vertices.labels[v] = gt_pixels.labels[p];
      gt_vertices.valid[v] = gt_pixels.valid[p];
      if (tri.at(row, col) == 128) eval.insert(v);
    }
    const MetricsReport report = compute_metrics(seg, gt_vertices, eval);
    std::cout << "factor " << factor << " vertices " << n << " " << report.line() << "\n";
  }
  return 0;
}

// ---- scaling-bench ----

struct ScalingBenchOpts {
  std::vector<int> sizes{32, 64, 128};
  int steps = 20;
  double tol = 1e-8;
};

Polygon circle_polygon(Vec2 center, double radius, int segments) {
  Polygon poly;
  poly.reserve(static_cast<std::size_t>(segments));
  for (int k = 0; k < segments; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / segments;
    poly.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return poly;
}

int run_scaling_bench(const ScalingBenchOpts& o) {
  using clock = std::chrono::steady_clock;
  std::vector<double> log_n, log_narrow;
  double prev_ratio = 0.0;
  bool ratio_increasing = true;

  for (int size : o.sizes) {
    if (size < 8) throw UsageError("scaling-bench sizes must be >= 8");
    const DelaunayGraph graph = build_grid_graph(size, size);
    const std::vector<double> c0 =
        signed_distance_init(graph, {circle_polygon({0.5, 0.5}, 0.3, 128)});

    FeatureField flat;
    flat.channels = 1;
    flat.values.assign(static_cast<std::size_t>(graph.n()), 0.0);
    const EdgeStopField es = compute_edge_stop(graph, flat, 1.0);
    ContourModel model;
    model.kind = ModelKind::geodesic;
    model.beta = 1.0;
    model.edge_stop = &es;

    TimeSchedule schedule;
    schedule.max_steps = o.steps;
    schedule.window = o.steps + 1;  // measure every step, no early stop
    schedule.solver_tol = o.tol;

    const auto t0 = clock::now();
    EvolveResult full = evolve(graph, model, c0, schedule, Stepper::explicit_euler,
                               MassMode::consistent);
    const auto t1 = clock::now();
    EvolveResult narrow =
        constrained_evolve(graph, model, c0, schedule, BandMode::general, MassMode::lumped);
    const auto t2 = clock::now();

    const double full_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count() / std::max(1, full.steps);
    const double narrow_ms =
        std::chrono::duration<double, std::milli>(t2 - t1).count() / std::max(1, narrow.steps);
    const double ratio = full_ms / narrow_ms;
    std::cout << "n " << size << " vertices " << graph.n() << " full_ms " << full_ms
              << " narrow_ms " << narrow_ms << " ratio " << ratio << "\n";
    log_n.push_back(std::log(static_cast<double>(graph.n())));
    log_narrow.push_back(std::log(narrow_ms));
    if (!log_n.empty() && log_n.size() > 1 && ratio <= prev_ratio) ratio_increasing = false;
    prev_ratio = ratio;
  }

  if (log_n.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(log_n.size());
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sx += log_n[i];
      sy += log_narrow[i];
      sxx += log_n[i] * log_n[i];
      sxy += log_n[i] * log_narrow[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    std::cout << "narrow_slope " << slope << " ratio_increasing " << (ratio_increasing ? 1 : 0)
              << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Level-set active contours on triangulated graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "config file; subcommand options go in [section]s");

  EvolveOpts evolve_opts;
  CLI::App* cmd_evolve = app.add_subcommand("evolve", "run one contour evolution");
  add_domain_flags(cmd_evolve, &evolve_opts.domain, false);
  cmd_evolve->add_option("--contour", evolve_opts.contour_file, "initial contour polygon file")
      ->required();
  cmd_evolve->add_option("--out", evolve_opts.out, "final state snapshot path");
  cmd_evolve->add_option("--contour-out", evolve_opts.contour_out, "final zero level set CSV");
  add_model_flags(cmd_evolve, &evolve_opts.model);
  add_schedule_flags(cmd_evolve, &evolve_opts.sched);

  SegmentOpts seg_image;
  seg_image.model.model = "gar";
  CLI::App* cmd_seg_image = app.add_subcommand("segment-image", "seeded image segmentation");
  add_domain_flags(cmd_seg_image, &seg_image.domain, true);
  cmd_seg_image->get_option("--image")->required();
  cmd_seg_image->add_option("--trimap", seg_image.trimap, "trimap seed image")->required();
  cmd_seg_image->add_option("--roi", seg_image.roi_file,
                            "region-of-interest polygon; everything outside is background");
  cmd_seg_image->add_option("--out", seg_image.out, "output mask path")->required();
  cmd_seg_image->add_option("--labels-out", seg_image.labels_out, "also write labels text");
  cmd_seg_image->add_option("--contour-out", seg_image.contour_out, "mask boundary CSV");
  add_model_flags(cmd_seg_image, &seg_image.model);
  add_schedule_flags(cmd_seg_image, &seg_image.sched);
  add_gar_flags(cmd_seg_image, &seg_image.gar);

  SegmentOpts seg_graph;
  seg_graph.model.model = "geodesic";
  CLI::App* cmd_seg_graph = app.add_subcommand("segment-graph", "segmentation on a graph file");
  cmd_seg_graph->add_option("--graph", seg_graph.domain.graph_file, "graph text file")
      ->required();
  cmd_seg_graph->add_option("--contour", seg_graph.contour_file, "initial contour polygon file");
  cmd_seg_graph->add_option("--seeds", seg_graph.seeds_file, "seed labels (text or PGM)");
  cmd_seg_graph->add_option("--roi", seg_graph.roi_file,
                            "region-of-interest polygon; everything outside is background");
  cmd_seg_graph->add_option("--out", seg_graph.out, "output labels path")->required();
  cmd_seg_graph->add_option("--contour-out", seg_graph.contour_out, "mask boundary CSV");
  add_model_flags(cmd_seg_graph, &seg_graph.model);
  add_schedule_flags(cmd_seg_graph, &seg_graph.sched);
  add_gar_flags(cmd_seg_graph, &seg_graph.gar);

  MetricsOpts metrics_opts;
  CLI::App* cmd_metrics = app.add_subcommand("metrics", "compare two masks");
  cmd_metrics->add_option("--seg", metrics_opts.seg, "segmentation mask")->required();
  cmd_metrics->add_option("--gt", metrics_opts.gt, "ground truth mask")->required();
  cmd_metrics->add_option("--trimap", metrics_opts.trimap,
                          "restrict scoring to the trimap's undecided region");

  SubsampleBenchOpts sub_opts;
  CLI::App* cmd_sub = app.add_subcommand("subsample-bench",
                                         "segmentation quality across subsampling factors");
  cmd_sub->add_option("--image", sub_opts.image, "P5/P6 input image")->required();
  cmd_sub->add_option("--trimap", sub_opts.trimap, "trimap seed image")->required();
  cmd_sub->add_option("--gt", sub_opts.gt, "ground truth mask")->required();
  cmd_sub->add_option("--factor", sub_opts.factors, "subsampling factors (pixels per vertex)");
  cmd_sub->add_option("--sample-mode", sub_opts.sample_mode, "subsample placement")
      ->check(CLI::IsMember({"random", "grid"}));
  cmd_sub->add_option("--seed", sub_opts.seed, "random sampling seed");
  add_model_flags(cmd_sub, &sub_opts.model);
  add_schedule_flags(cmd_sub, &sub_opts.sched);
  add_gar_flags(cmd_sub, &sub_opts.gar);

  ScalingBenchOpts scale_opts;
  CLI::App* cmd_scale = app.add_subcommand("scaling-bench",
                                           "per-step cost of full vs narrow-band evolution");
  cmd_scale->add_option("--size", scale_opts.sizes, "grid sizes to measure");
  cmd_scale->add_option("--steps", scale_opts.steps, "steps per measurement");
  cmd_scale->add_option("--tol", scale_opts.tol, "linear solver tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cmd_evolve->parsed()) return run_evolve(evolve_opts);
    if (cmd_seg_image->parsed()) return run_segment(seg_image, true);
    if (cmd_seg_graph->parsed()) return run_segment(seg_graph, false);
    if (cmd_metrics->parsed()) return run_metrics(metrics_opts);
    if (cmd_sub->parsed()) return run_subsample_bench(sub_opts);
    if (cmd_scale->parsed()) return run_scaling_bench(scale_opts);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace gc
