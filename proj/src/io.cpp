#include "gcontour/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gcontour/errors.hpp"

namespace gc {

namespace {

[[noreturn]] void fail_line(const std::string& what, int line) {
  std::ostringstream msg;
  msg << what << " (line " << line << ")";
  throw FormatError(msg.str());
}

// Strips comments and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  const std::size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  const auto is_ws = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_ws(s[b])) ++b;
  while (e > b && is_ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

}  // namespace

GraphWithFeatures parse_graph_features_text(std::istream& in) {
  std::string raw;
  int line = 0;
  long long nv = -1, nt = -1, channels = 0;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> feature_values;

  while (std::getline(in, raw)) {
    ++line;
    const std::string s = clean_line(raw);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string tag;
    ls >> tag;
    if (nv < 0) {
      if (tag != "graph") fail_line("expected 'graph <vertices> <triangles>'", line);
      if (!(ls >> nv >> nt) || nv < 0 || nt < 0) fail_line("bad graph header", line);
      if (!(ls >> channels)) channels = 0;
      if (channels < 0) fail_line("bad channel count", line);
      vertices.reserve(static_cast<std::size_t>(nv));
      triangles.reserve(static_cast<std::size_t>(nt));
    } else if (tag == "v") {
      if (static_cast<long long>(vertices.size()) == nv) fail_line("too many vertices", line);
      Vec2 p;
      if (!(ls >> p.x >> p.y)) fail_line("bad vertex", line);
      for (long long k = 0; k < channels; ++k) {
        double f;
        if (!(ls >> f)) fail_line("missing feature value", line);
        feature_values.push_back(f);
      }
      vertices.push_back(p);
    } else if (tag == "t") {
      if (static_cast<long long>(vertices.size()) != nv) {
        fail_line("triangle before all vertices", line);
      }
      if (static_cast<long long>(triangles.size()) == nt) fail_line("too many triangles", line);
      std::array<int, 3> t{};
      if (!(ls >> t[0] >> t[1] >> t[2])) fail_line("bad triangle", line);
      for (int k : t) {
        if (k < 0 || k >= nv) fail_line("triangle index out of range", line);
      }
      triangles.push_back(t);
    } else {
      fail_line("unknown record '" + tag + "'", line);
    }
  }
  if (nv < 0) throw FormatError("empty graph file");
  if (static_cast<long long>(vertices.size()) != nv ||
      static_cast<long long>(triangles.size()) != nt) {
    throw FormatError("graph file ends before the declared counts are met");
  }
  GraphWithFeatures out;
  if (triangles.empty()) {
    // No triangle records: triangulate the points.
    out.graph = delaunay_triangulate(vertices);
  } else {
    out.graph = make_graph(std::move(vertices), std::move(triangles));
  }
  out.features.channels = static_cast<int>(channels);
  out.features.values = std::move(feature_values);
  return out;
}

GraphWithFeatures read_graph_features_text(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_graph_features_text(in);
}

DelaunayGraph parse_graph_text(std::istream& in) {
  return parse_graph_features_text(in).graph;
}

DelaunayGraph read_graph_text(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_graph_text(in);
}

void print_graph_text(std::ostream& out, const DelaunayGraph& graph,
                      const FeatureField* features) {
  const int channels = features ? features->channels : 0;
  out << "graph " << graph.n() << " " << graph.triangles.size();
  if (channels > 0) out << " " << channels;
  out << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < graph.n(); ++v) {
    const Vec2 p = graph.vertices[v];
    out << "v " << p.x << " " << p.y;
    for (int k = 0; k < channels; ++k) out << " " << features->at(v, k);
    out << "\n";
  }
  for (const Triangle& t : graph.triangles) {
    out << "t " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
  }
}

void write_graph_text(const std::string& path, const DelaunayGraph& graph,
                      const FeatureField* features) {
  std::ofstream out = open_out(path);
  print_graph_text(out, graph, features);
  if (!out) throw Error("write failed for " + path);
}

ImageGraph grid_from_image(const PnmImage& img) {
  ImageGraph ig;
  ig.graph = build_grid_graph(img.height, img.width);
  ig.features.channels = img.channels;
  ig.features.values.resize(static_cast<std::size_t>(img.width) * img.height * img.channels);
  ig.pixel.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int i = 0; i < img.height; ++i) {
    for (int j = 0; j < img.width; ++j) {
      const int v = i * img.width + j;
      ig.pixel[v] = {i, j};
      for (int k = 0; k < img.channels; ++k) {
        ig.features.values[static_cast<std::size_t>(v) * img.channels + k] =
            img.normalized(i, j, k);
      }
    }
  }
  return ig;
}

ImageGraph subsample_from_image(const PnmImage& img, int vertex_count, Rng& rng) {
  if (vertex_count < 4) {
    throw DegenerateInputError("subsample_from_image: need at least the four corners");
  }
  if (img.width < 2 || img.height < 2) {
    throw DegenerateInputError("subsample_from_image: image too small");
  }
  const double h = 1.0 / static_cast<double>(std::max(img.height, img.width) - 1);
  const double w = (img.width - 1) * h;
  const double hgt = (img.height - 1) * h;

  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(vertex_count));
  points.push_back({0.0, 0.0});
  points.push_back({w, 0.0});
  points.push_back({0.0, hgt});
  points.push_back({w, hgt});

  // Hash grid so near-duplicate draws (which the triangulation rejects) can
  // be redrawn deterministically.
  const double cell = 1e-6;
  const double tol = 1e-9;
  std::unordered_map<std::uint64_t, std::vector<int>> cells;
  const auto cell_key = [cell](double x, double y) {
    const auto cx = static_cast<std::int64_t>(std::floor(x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(y / cell));
    return static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(cy);
  };
  const auto too_close = [&](Vec2 p) {
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const auto it = cells.find(cell_key(p.x + dx * cell, p.y + dy * cell));
        if (it == cells.end()) continue;
        for (int i : it->second) {
          if (std::abs(points[i].x - p.x) <= tol && std::abs(points[i].y - p.y) <= tol) {
            return true;
          }
        }
      }
    }
    return false;
  };
  for (int i = 0; i < 4; ++i) cells[cell_key(points[i].x, points[i].y)].push_back(i);

  long attempts = 0;
  const long max_attempts = 64 + 16L * vertex_count;
  while (static_cast<int>(points.size()) < vertex_count) {
    if (++attempts > max_attempts) {
      throw DegenerateInputError("subsample_from_image: cannot place distinct points");
    }
    const Vec2 p{rng.uniform(0.0, w), rng.uniform(0.0, hgt)};
    if (too_close(p)) continue;
    cells[cell_key(p.x, p.y)].push_back(static_cast<int>(points.size()));
    points.push_back(p);
  }

  ImageGraph ig;
  ig.graph = delaunay_triangulate(points);
  const int n = ig.graph.n();
  ig.features.channels = img.channels;
  ig.features.values.resize(static_cast<std::size_t>(n) * img.channels);
  ig.pixel.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const Vec2 p = ig.graph.vertices[v];
    const int col = std::clamp(static_cast<int>(std::llround(p.x / h)), 0, img.width - 1);
    const int row = std::clamp(static_cast<int>(std::llround(p.y / h)), 0, img.height - 1);
    ig.pixel[v] = {row, col};
    for (int k = 0; k < img.channels; ++k) {
      ig.features.values[static_cast<std::size_t>(v) * img.channels + k] =
          img.normalized(row, col, k);
    }
  }
  return ig;
}

ImageGraph subsample_grid_from_image(const PnmImage& img, int vertex_count) {
  if (img.width < 2 || img.height < 2) {
    throw DegenerateInputError("subsample_grid_from_image: image too small");
  }
  if (vertex_count < 4) throw DegenerateInputError("subsample_grid_from_image: need 4 vertices");
  // Largest stride whose sublattice still has vertex_count vertices.
  int stride = 1;
  while (true) {
    const int next = stride + 1;
    const long long rows = (img.height + next - 1) / next;
    const long long cols = (img.width + next - 1) / next;
    if (rows < 2 || cols < 2 || rows * cols < vertex_count) break;
    stride = next;
  }
  const int rows = (img.height + stride - 1) / stride;
  const int cols = (img.width + stride - 1) / stride;

  ImageGraph ig;
  ig.graph = build_grid_graph(rows, cols);
  ig.features.channels = img.channels;
  ig.features.values.resize(static_cast<std::size_t>(rows) * cols * img.channels);
  ig.pixel.resize(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int v = i * cols + j;
      const int row = std::min(i * stride, img.height - 1);
      const int col = std::min(j * stride, img.width - 1);
      ig.pixel[v] = {row, col};
      for (int k = 0; k < img.channels; ++k) {
        ig.features.values[static_cast<std::size_t>(v) * img.channels + k] =
            img.normalized(row, col, k);
      }
    }
  }
  return ig;
}

SeedLabeling seeds_from_trimap(const PnmImage& trimap, const ImageGraph& ig) {
  if (trimap.channels != 1) throw FormatError("trimap must be a grayscale PGM");
  for (int i = 0; i < trimap.height; ++i) {
    for (int j = 0; j < trimap.width; ++j) {
      const int v = trimap.at(i, j);
      if (v != 0 && v != 128 && v != 255) {
        std::ostringstream msg;
        msg << "trimap value " << v << " at pixel (" << i << ", " << j
            << "); expected 0, 128 or 255";
        throw FormatError(msg.str());
      }
    }
  }
  const int n = ig.graph.n();
  SeedLabeling seeds{VertexSet(static_cast<std::size_t>(n)),
                     VertexSet(static_cast<std::size_t>(n)),
                     VertexSet(static_cast<std::size_t>(n)), {}};
  for (int v = 0; v < n; ++v) {
    const auto [row, col] = ig.pixel[v];
    if (row >= trimap.height || col >= trimap.width) {
      throw FormatError("trimap smaller than the segmented image");
    }
    const int code = trimap.at(row, col);
    if (code == 255) {
      seeds.f.insert(v);
    } else if (code == 0) {
      seeds.b.insert(v);
    } else {
      seeds.u.insert(v);
    }
  }
  return seeds;
}

SegmentationMask mask_from_levelset(const std::vector<double>& c) {
  std::vector<std::uint8_t> labels(c.size());
  for (std::size_t v = 0; v < c.size(); ++v) labels[v] = c[v] <= 0.0 ? 1 : 0;
  return SegmentationMask::all_valid(std::move(labels));
}

SegmentationMask mask_from_set(const VertexSet& inside, int n) {
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels[v] = inside.contains(v) ? 1 : 0;
  return SegmentationMask::all_valid(std::move(labels));
}

std::vector<std::uint8_t> mask_pixels(const DelaunayGraph& graph, const SegmentationMask& mask) {
  if (!graph.is_grid) throw Error("mask_pixels: not a grid graph");
  if (mask.size() != static_cast<std::size_t>(graph.n())) {
    throw Error("mask_pixels: mask size does not match the graph");
  }
  std::vector<std::uint8_t> px(mask.size());
  for (std::size_t v = 0; v < mask.size(); ++v) {
    px[v] = mask.valid[v] ? (mask.labels[v] ? 255 : 0) : 128;
  }
  return px;
}

void write_mask_pgm(const std::string& path, const DelaunayGraph& graph,
                    const SegmentationMask& mask) {
  write_pgm(path, graph.grid_cols, graph.grid_rows, mask_pixels(graph, mask));
}

SegmentationMask mask_from_pgm(const PnmImage& img) {
  if (img.channels != 1) throw FormatError("mask must be a grayscale PGM");
  SegmentationMask mask;
  mask.labels.resize(img.data.size());
  mask.valid.resize(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const int v = img.data[i];
    if (v == 255) {
      mask.labels[i] = 1;
      mask.valid[i] = 1;
    } else if (v == 0) {
      mask.labels[i] = 0;
      mask.valid[i] = 1;
    } else if (v == 128) {
      mask.labels[i] = 0;
      mask.valid[i] = 0;
    } else {
      std::ostringstream msg;
      msg << "mask value " << v << " at pixel index " << i << "; expected 0, 128 or 255";
      throw FormatError(msg.str());
    }
  }
  return mask;
}

SegmentationMask read_mask(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw FormatError("cannot open " + path);
  const int first = probe.peek();
  probe.close();
  if (first == 'P') return mask_from_pgm(read_pnm(path));
  return read_labels_text(path);
}

SeedLabeling seeds_from_mask(const SegmentationMask& mask) {
  const std::size_t n = mask.size();
  SeedLabeling seeds{VertexSet(n), VertexSet(n), VertexSet(n), {}};
  for (std::size_t v = 0; v < n; ++v) {
    if (!mask.valid[v]) {
      seeds.u.insert(static_cast<int>(v));
    } else if (mask.labels[v]) {
      seeds.f.insert(static_cast<int>(v));
    } else {
      seeds.b.insert(static_cast<int>(v));
    }
  }
  return seeds;
}

void write_labels_text(const std::string& path, const SegmentationMask& mask) {
  std::ofstream out = open_out(path);
  out << "labels " << mask.size() << "\n";
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask.valid[v]) {
      out << "-\n";
    } else {
      out << (mask.labels[v] ? 1 : 0) << "\n";
    }
  }
  if (!out) throw Error("write failed for " + path);
}

SegmentationMask read_labels_text(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string raw;
  int line = 0;
  long long n = -1;
  SegmentationMask mask;
  std::size_t got = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = clean_line(raw);
    if (s.empty()) continue;
    if (n < 0) {
      std::istringstream ls(s);
      std::string tag;
      ls >> tag;
      if (tag != "labels" || !(ls >> n) || n < 0) fail_line("expected 'labels <n>'", line);
      mask.labels.assign(static_cast<std::size_t>(n), 0);
      mask.valid.assign(static_cast<std::size_t>(n), 0);
    } else {
      if (got == static_cast<std::size_t>(n)) fail_line("too many labels", line);
      if (s == "-") {
        // excluded vertex
      } else if (s == "0" || s == "1") {
        mask.labels[got] = s == "1" ? 1 : 0;
        mask.valid[got] = 1;
      } else {
        fail_line("bad label '" + s + "'", line);
      }
      ++got;
    }
  }
  if (n < 0 || got != static_cast<std::size_t>(n)) {
    throw FormatError("label file ends before the declared count is met");
  }
  return mask;
}

std::vector<Polygon> levelset_contours(const DelaunayGraph& graph, const std::vector<double>& c) {
  // Each front-crossing triangle contributes one segment between the
  // interpolated zero points of its two sign-change edges. Points are keyed
  // by the graph edge they lie on, so neighboring triangles chain exactly.
  std::map<std::pair<int, int>, int> point_of_edge;
  std::vector<Vec2> points;
  const auto crossing_point = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    double t = c[a] / (c[a] - c[b]);
    // A crossing at (or within rounding of) a vertex is shared by every edge
    // through it; key it by the vertex so the chains joining there connect.
    auto key = std::make_pair(a, b);
    if (t <= 1e-9) {
      key = {a, a};
      t = 0.0;
    } else if (t >= 1.0 - 1e-9) {
      key = {b, b};
      t = 1.0;
    }
    const auto it = point_of_edge.find(key);
    if (it != point_of_edge.end()) return it->second;
    points.push_back(graph.vertices[a] + t * (graph.vertices[b] - graph.vertices[a]));
    point_of_edge.emplace(key, static_cast<int>(points.size()) - 1);
    return static_cast<int>(points.size()) - 1;
  };

  std::vector<std::pair<int, int>> segments;
  for (const Triangle& tri : graph.triangles) {
    int neg = 0;
    std::array<int, 3> sign{};
    for (int k = 0; k < 3; ++k) {
      sign[k] = c[tri.v[k]] <= 0.0 ? -1 : 1;
      if (sign[k] < 0) ++neg;
    }
    if (neg == 0 || neg == 3) continue;
    // The odd corner's two edges cross the front.
    int odd = 0;
    for (int k = 0; k < 3; ++k) {
      if (sign[k] != sign[(k + 1) % 3] && sign[k] != sign[(k + 2) % 3]) odd = k;
    }
    const int p1 = crossing_point(tri.v[odd], tri.v[(odd + 1) % 3]);
    const int p2 = crossing_point(tri.v[odd], tri.v[(odd + 2) % 3]);
    const Vec2 d = points[p1] - points[p2];
    if (p1 == p2 || std::sqrt(dot(d, d)) < 1e-15) continue;
    segments.emplace_back(p1, p2);
  }

  // Chain segments into polylines: open paths first, then closed loops.
  std::vector<std::vector<std::pair<int, int>>> at_point(points.size());
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    at_point[segments[s].first].push_back({s, segments[s].second});
    at_point[segments[s].second].push_back({s, segments[s].first});
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<Polygon> polylines;
  const auto walk = [&](int start) {
    Polygon line;
    line.push_back(points[start]);
    int here = start;
    for (;;) {
      int next = -1;
      for (const auto& [seg, other] : at_point[here]) {
        if (!used[seg]) {
          used[seg] = true;
          next = other;
          break;
        }
      }
      if (next < 0) break;
      line.push_back(points[next]);
      here = next;
    }
    return line;
  };
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (at_point[p].size() == 1 && !used[at_point[p][0].first]) {
      polylines.push_back(walk(static_cast<int>(p)));
    }
  }
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (!used[s]) polylines.push_back(walk(segments[s].first));
  }
  return polylines;
}

void write_contours_csv(const std::string& path, const std::vector<Polygon>& polylines) {
  std::ofstream out = open_out(path);
  out << std::setprecision(17);
  bool first = true;
  for (const Polygon& line : polylines) {
    if (!first) out << "\n";
    first = false;
    for (const Vec2& p : line) out << p.x << "," << p.y << "\n";
  }
  if (!out) throw Error("write failed for " + path);
}

void write_snapshot(const std::string& path, int step, double t, const std::vector<double>& c) {
  std::ofstream out = open_out(path);
  out << std::setprecision(17);
  out << "snapshot " << step << " " << t << "\n";
  for (double v : c) out << v << "\n";
  if (!out) throw Error("write failed for " + path);
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string tag;
  SnapshotData snap;
  if (!(in >> tag) || tag != "snapshot" || !(in >> snap.step >> snap.t)) {
    throw FormatError("bad snapshot header in " + path);
  }
  double v;
  while (in >> v) snap.c.push_back(v);
  if (!in.eof()) throw FormatError("bad snapshot value in " + path);
  return snap;
}

std::vector<Polygon> read_polygons(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<Polygon> polys;
  Polygon current;
  std::string raw;
  int line = 0;
  const auto finish = [&](int at_line) {
    if (current.empty()) return;
    if (current.size() < 3) fail_line("polygon needs at least three points", at_line);
    polys.push_back(std::move(current));
    current.clear();
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = clean_line(raw);
    if (s.empty()) {
      finish(line);
      continue;
    }
    std::istringstream ls(s);
    Vec2 p;
    if (!(ls >> p.x >> p.y)) fail_line("bad point", line);
    current.push_back(p);
  }
  finish(line);
  if (polys.empty()) throw FormatError("no polygons in " + path);
  return polys;
}

}  // namespace gc
