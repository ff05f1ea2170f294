#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcontour/graph.hpp"

namespace gc {

// Binary labeling with a validity mask; invalid entries never take part in
// metric computation (e.g. undefined pixels of a ground-truth mask).
struct SegmentationMask {
  std::vector<std::uint8_t> labels;  // 1 = foreground
  std::vector<std::uint8_t> valid;

  static SegmentationMask all_valid(std::vector<std::uint8_t> labels);
  std::size_t size() const { return labels.size(); }
};

// Pair counts of the two binary partitions restricted to the evaluation
// region (eval members that are valid in both masks).
struct Contingency {
  long long n11 = 0, n10 = 0, n01 = 0, n00 = 0;  // [seg][gt], 1 = foreground
  long long total() const { return n11 + n10 + n01 + n00; }
};

Contingency make_contingency(const SegmentationMask& seg, const SegmentationMask& gt,
                             const VertexSet& eval);

// Adjusted Rand index (Hubert-Arabie). Identical partitions give exactly 1,
// including the degenerate single-class case. Throws MetricError when the
// evaluation region is empty.
double adjusted_rand(const SegmentationMask& seg, const SegmentationMask& gt,
                     const VertexSet& eval);

// Foreground intersection over union; both-empty is defined as 1 and flagged
// through `both_empty` when provided.
double iou(const SegmentationMask& seg, const SegmentationMask& gt, const VertexSet& eval,
           bool* both_empty = nullptr);

// Variation of information between the two binary partitions, natural log,
// with the usual 0 * log 0 = 0 convention.
double variation_of_information(const SegmentationMask& seg, const SegmentationMask& gt,
                                const VertexSet& eval);

double error_rate(const SegmentationMask& seg, const SegmentationMask& gt,
                  const VertexSet& eval);

struct MetricsReport {
  double rand_index = 0.0;
  double iou = 0.0;
  double voi = 0.0;
  double error = 0.0;
  bool iou_trivial = false;  // both foregrounds empty

  // One-line summary, fixed precision.
  std::string line() const;
  // Machine-readable key = value block (full precision) including the line.
  std::string report() const;
};

MetricsReport compute_metrics(const SegmentationMask& seg, const SegmentationMask& gt,
                              const VertexSet& eval);

}  // namespace gc
