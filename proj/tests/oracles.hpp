#pragma once

#include <cstdint>
#include <vector>

#include "gcontour/fem.hpp"
#include "gcontour/graph.hpp"
#include "gcontour/models.hpp"
#include "gcontour/pnm.hpp"

// Independent reference implementations the tests compare against. These
// deliberately avoid the library's code paths: dense matrices, a 7-point
// quadrature with basis functions evaluated from barycentric coordinates,
// O(n!) and O(n^2) brute force where n is small.
namespace oracle {

struct DenseSystem {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

// Dense assembly of the same frozen coefficients with 7-point Gauss
// quadrature (exact to degree 5) and independently evaluated P1 bases.
DenseSystem dense_assemble(const gc::DelaunayGraph& graph, const gc::ContourModel& model,
                           const std::vector<double>& c, gc::MassMode mode);

// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b);

std::vector<double> dense_multiply(const std::vector<std::vector<double>>& a,
                                   const std::vector<double>& x);

// Strictly inside the circumcircle of (a, b, c), long double determinant
// with a tolerance proportional to the entry magnitudes.
bool in_circumcircle(gc::Vec2 a, gc::Vec2 b, gc::Vec2 c, gc::Vec2 p);

// Smallest achievable adjacency bandwidth over every permutation of the
// vertex set; factorial cost, keep the graphs tiny.
int min_bandwidth_brute_force(const std::vector<std::vector<int>>& adjacency,
                              const std::vector<int>& vertices);

// Hubert-Arabie adjusted Rand by direct enumeration of all point pairs.
double ari_pair_counting(const std::vector<int>& a, const std::vector<int>& b);

// Distance from p to the closed polygon boundary by dense sampling of every
// edge; crude but independent of the projection formula.
double sampled_polygon_distance(gc::Vec2 p, const std::vector<gc::Vec2>& poly, int samples_per_edge);

// Synthetic fixtures.
gc::PnmImage disk_image(int size, double radius, int inside_gray, int outside_gray);
gc::PnmImage two_level_image(int size, int split_col, int left_gray, int right_gray);
// Color image whose foreground disk and background draw from disjoint
// channel ranges, with deterministic per-pixel jitter.
gc::PnmImage color_disk_image(int size, double radius, std::uint64_t seed);
std::vector<std::uint8_t> disk_gt(int size, double radius);
// Trimap from a binary ground truth: labels survive only at pixels more than
// `erode_px` (Chebyshev) from the opposite label; the rest becomes 128.
gc::PnmImage trimap_from_gt(const std::vector<std::uint8_t>& gt, int width, int height,
                            int erode_px);

}  // namespace oracle
