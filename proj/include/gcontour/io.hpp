#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gcontour/gar.hpp"
#include "gcontour/graph.hpp"
#include "gcontour/metrics.hpp"
#include "gcontour/models.hpp"
#include "gcontour/pnm.hpp"
#include "gcontour/util.hpp"

namespace gc {

// Plain text mesh format with an optional per-vertex feature column:
//   graph <vertices> <triangles> [channels]
//   v <x> <y> <f1> ... <fC>     (one line per vertex)
//   t <a> <b> <c>               (one line per triangle, vertex indices)
// Blank lines and '#' comments are allowed anywhere. Parse errors throw
// FormatError naming the line.
struct GraphWithFeatures {
  DelaunayGraph graph;
  FeatureField features;  // channels = 0 when the file has no feature column
};

GraphWithFeatures parse_graph_features_text(std::istream& in);
GraphWithFeatures read_graph_features_text(const std::string& path);
DelaunayGraph parse_graph_text(std::istream& in);
DelaunayGraph read_graph_text(const std::string& path);
void print_graph_text(std::ostream& out, const DelaunayGraph& graph,
                      const FeatureField* features = nullptr);
void write_graph_text(const std::string& path, const DelaunayGraph& graph,
                      const FeatureField* features = nullptr);

// A graph carrying image data: per-vertex features in [0, 1] and the pixel
// each vertex samples.
struct ImageGraph {
  DelaunayGraph graph;
  FeatureField features;
  std::vector<std::pair<int, int>> pixel;  // vertex -> (row, col)
};

// One vertex per pixel, cell-diagonal triangulation.
ImageGraph grid_from_image(const PnmImage& img);

// Delaunay graph over `vertex_count` points: the four image corners plus
// uniform random interior points, features sampled at the nearest pixel.
// Deterministic for a fixed rng seed.
ImageGraph subsample_from_image(const PnmImage& img, int vertex_count, Rng& rng);

// Uniformly strided sublattice with at least `vertex_count` vertices (the
// stride is the largest that still reaches the count). At the full pixel
// count this is exactly grid_from_image.
ImageGraph subsample_grid_from_image(const PnmImage& img, int vertex_count);

// Trimap decoding: 0 background, 128 undecided, 255 foreground; any other
// sample value is a FormatError naming the pixel. The trimap must match the
// image the graph was built from.
SeedLabeling seeds_from_trimap(const PnmImage& trimap, const ImageGraph& ig);

// Labelings from level-set values (c <= 0 is foreground) or vertex sets.
SegmentationMask mask_from_levelset(const std::vector<double>& c);
SegmentationMask mask_from_set(const VertexSet& inside, int n);

// Grid-graph mask as 0/255 pixels, writable as PGM. Throws on non-grid
// graphs (their labelings go through the text form below).
std::vector<std::uint8_t> mask_pixels(const DelaunayGraph& graph, const SegmentationMask& mask);
void write_mask_pgm(const std::string& path, const DelaunayGraph& graph,
                    const SegmentationMask& mask);

// PGM to mask: 0 background, 255 foreground, 128 excluded from evaluation.
SegmentationMask mask_from_pgm(const PnmImage& img);
// Reads a PGM mask or a labels text file, telling them apart by content.
SegmentationMask read_mask(const std::string& path);

// Mask to seeds: valid foreground -> F, valid background -> B, excluded -> U.
SeedLabeling seeds_from_mask(const SegmentationMask& mask);

// Per-vertex labels, one 0/1 per line after a "labels <n>" header.
void write_labels_text(const std::string& path, const SegmentationMask& mask);
SegmentationMask read_labels_text(const std::string& path);

// The zero level set as polylines chained across triangle crossings.
std::vector<Polygon> levelset_contours(const DelaunayGraph& graph, const std::vector<double>& c);

// "x,y" per point, one polyline per block, blank line between blocks.
void write_contours_csv(const std::string& path, const std::vector<Polygon>& polylines);

// Level-set snapshot: "snapshot <step> <t>" then one value per line.
struct SnapshotData {
  int step = 0;
  double t = 0.0;
  std::vector<double> c;
};

void write_snapshot(const std::string& path, int step, double t, const std::vector<double>& c);
SnapshotData read_snapshot(const std::string& path);

// Initial contours: "x y" lines, blank line between polygons, '#' comments.
// Each polygon needs at least three points.
std::vector<Polygon> read_polygons(const std::string& path);

}  // namespace gc
