#include "gcontour/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "gcontour/errors.hpp"

namespace gc {

SegmentationMask SegmentationMask::all_valid(std::vector<std::uint8_t> labels) {
  SegmentationMask m;
  m.valid.assign(labels.size(), 1);
  m.labels = std::move(labels);
  return m;
}

Contingency make_contingency(const SegmentationMask& seg, const SegmentationMask& gt,
                             const VertexSet& eval) {
  if (seg.size() != gt.size() || seg.size() != eval.size()) {
    throw MetricError("metrics: mask sizes disagree");
  }
  Contingency c;
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const int v = static_cast<int>(i);
    if (!eval.contains(v) || !seg.valid[i] || !gt.valid[i]) continue;
    if (seg.labels[i]) {
      (gt.labels[i] ? c.n11 : c.n10)++;
    } else {
      (gt.labels[i] ? c.n01 : c.n00)++;
    }
  }
  if (c.total() == 0) throw MetricError("metrics: empty evaluation region");
  return c;
}

namespace {

double comb2(double x) { return 0.5 * x * (x - 1.0); }

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double adjusted_rand(const SegmentationMask& seg, const SegmentationMask& gt,
                     const VertexSet& eval) {
  const Contingency c = make_contingency(seg, gt, eval);
  const double n = static_cast<double>(c.total());
  // Row sums: segmentation classes; column sums: ground-truth classes.
  const double a1 = static_cast<double>(c.n11 + c.n10);
  const double a0 = static_cast<double>(c.n01 + c.n00);
  const double b1 = static_cast<double>(c.n11 + c.n01);
  const double b0 = static_cast<double>(c.n10 + c.n00);
  const double index = comb2(static_cast<double>(c.n11)) + comb2(static_cast<double>(c.n10)) +
                       comb2(static_cast<double>(c.n01)) + comb2(static_cast<double>(c.n00));
  const double sum_a = comb2(a1) + comb2(a0);
  const double sum_b = comb2(b1) + comb2(b0);
  const double expected = sum_a * sum_b / comb2(n);
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) {
    // Both partitions are single-class: identical as partitions.
    return 1.0;
  }
  return (index - expected) / (max_index - expected);
}

double iou(const SegmentationMask& seg, const SegmentationMask& gt, const VertexSet& eval,
           bool* both_empty) {
  const Contingency c = make_contingency(seg, gt, eval);
  if (both_empty) *both_empty = false;
  const long long inter = c.n11;
  const long long uni = c.n11 + c.n10 + c.n01;
  if (uni == 0) {
    if (both_empty) *both_empty = true;
    return 1.0;  // agree on emptiness
  }
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double variation_of_information(const SegmentationMask& seg, const SegmentationMask& gt,
                                const VertexSet& eval) {
  const Contingency c = make_contingency(seg, gt, eval);
  // Equal as partitions (possibly under a label swap): zero by definition,
  // short-circuited so no rounding residue leaks out.
  if ((c.n10 == 0 && c.n01 == 0) || (c.n11 == 0 && c.n00 == 0)) return 0.0;
  const double n = static_cast<double>(c.total());
  const double p11 = c.n11 / n, p10 = c.n10 / n, p01 = c.n01 / n, p00 = c.n00 / n;
  const double a1 = p11 + p10, a0 = p01 + p00;
  const double b1 = p11 + p01, b0 = p10 + p00;
  const double h_seg = -xlogx(a1) - xlogx(a0);
  const double h_gt = -xlogx(b1) - xlogx(b0);
  double mutual = 0.0;
  const auto add = [&mutual](double pij, double ai, double bj) {
    if (pij > 0.0) mutual += pij * std::log(pij / (ai * bj));
  };
  add(p11, a1, b1);
  add(p10, a1, b0);
  add(p01, a0, b1);
  add(p00, a0, b0);
  return h_seg + h_gt - 2.0 * mutual;
}

double error_rate(const SegmentationMask& seg, const SegmentationMask& gt,
                  const VertexSet& eval) {
  const Contingency c = make_contingency(seg, gt, eval);
  return static_cast<double>(c.n10 + c.n01) / static_cast<double>(c.total());
}

std::string MetricsReport::line() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "RI %.3f IoU %.3f VoI %.3f Err %.3f", rand_index, iou, voi,
                error);
  return buf;
}

std::string MetricsReport::report() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s\nrand_index = %.12g\niou = %.12g\nvoi = %.12g\nerror_rate = %.12g\n"
                "iou_trivial = %d\n",
                line().c_str(), rand_index, iou, voi, error, iou_trivial ? 1 : 0);
  return buf;
}

MetricsReport compute_metrics(const SegmentationMask& seg, const SegmentationMask& gt,
                              const VertexSet& eval) {
  MetricsReport r;
  r.rand_index = adjusted_rand(seg, gt, eval);
  r.iou = gc::iou(seg, gt, eval, &r.iou_trivial);
  r.voi = variation_of_information(seg, gt, eval);
  r.error = error_rate(seg, gt, eval);
  return r;
}

}  // namespace gc
