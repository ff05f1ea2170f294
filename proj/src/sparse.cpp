#include "gcontour/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gcontour/errors.hpp"

namespace gc {

SparseSymMatrix SparseSymMatrix::from_adjacency(const std::vector<std::vector<int>>& adjacency) {
  SparseSymMatrix m;
  const int n = static_cast<int>(adjacency.size());
  m.row_ptr_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    m.row_ptr_[i + 1] = m.row_ptr_[i] + static_cast<int>(adjacency[i].size()) + 1;
  }
  m.col_idx_.reserve(m.row_ptr_[n]);
  for (int i = 0; i < n; ++i) {
    // Neighbor lists are sorted; splice the diagonal into place.
    bool placed = false;
    for (int j : adjacency[i]) {
      if (!placed && j > i) {
        m.col_idx_.push_back(i);
        placed = true;
      }
      m.col_idx_.push_back(j);
    }
    if (!placed) m.col_idx_.push_back(i);
  }
  m.values_.assign(m.col_idx_.size(), 0.0);
  return m;
}

void SparseSymMatrix::set_zero() {
  std::fill(values_.begin(), values_.end(), 0.0);
}

namespace {

int find_slot(const std::vector<int>& row_ptr, const std::vector<int>& col_idx, int i, int j) {
  for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
    if (col_idx[k] == j) return k;
  }
  return -1;
}

}  // namespace

void SparseSymMatrix::add(int i, int j, double value) {
  const int slot = find_slot(row_ptr_, col_idx_, i, j);
  if (slot < 0) throw Error("SparseSymMatrix::add: entry outside the adjacency pattern");
  values_[slot] += value;
  if (i != j) {
    const int mirror = find_slot(row_ptr_, col_idx_, j, i);
    values_[mirror] += value;
  }
}

double SparseSymMatrix::at(int i, int j) const {
  const int slot = find_slot(row_ptr_, col_idx_, i, j);
  return slot < 0 ? 0.0 : values_[slot];
}

double SparseSymMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k];
  return s;
}

std::vector<double> SparseSymMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<std::size_t>(n()), 0.0);
  for (int i = 0; i < n(); ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[i] = s;
  }
  return y;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(static_cast<std::size_t>(n()), 0.0);
  for (int i = 0; i < n(); ++i) d[i] = at(i, i);
  return d;
}

double SparseSymMatrix::total_sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

SparseSymMatrix SparseSymMatrix::submatrix(const VertexSet& active,
                                           std::vector<int>* index_of) const {
  const int n_full = n();
  std::vector<int> local(n_full, -1);
  int count = 0;
  for (int i = 0; i < n_full; ++i) {
    if (active.contains(i)) local[i] = count++;
  }
  SparseSymMatrix out;
  out.row_ptr_.assign(count + 1, 0);
  int rows_done = 0;
  for (int i = 0; i < n_full; ++i) {
    if (local[i] < 0) continue;
    int entries = 0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (local[col_idx_[k]] >= 0) ++entries;
    }
    out.row_ptr_[rows_done + 1] = out.row_ptr_[rows_done] + entries;
    ++rows_done;
  }
  out.col_idx_.reserve(out.row_ptr_[count]);
  out.values_.reserve(out.row_ptr_[count]);
  for (int i = 0; i < n_full; ++i) {
    if (local[i] < 0) continue;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (local[col_idx_[k]] >= 0) {
        out.col_idx_.push_back(local[col_idx_[k]]);
        out.values_.push_back(values_[k]);
      }
    }
  }
  if (index_of) *index_of = std::move(local);
  return out;
}

std::vector<double> solve_cg(const SparseSymMatrix& a, const std::vector<double>& rhs,
                             double tol, int max_iterations) {
  const std::size_t n = rhs.size();
  const double rhs_norm = std::sqrt(std::inner_product(rhs.begin(), rhs.end(), rhs.begin(), 0.0));
  std::vector<double> x(n, 0.0);
  if (rhs_norm == 0.0) return x;
  const double target = tol * rhs_norm;

  std::vector<double> diag = a.diagonal();
  for (double& d : diag) {
    if (d <= 0.0) throw SolverError("solve_cg: nonpositive diagonal", 0, 0.0);
    d = 1.0 / d;
  }

  std::vector<double> r = rhs;  // x starts at zero
  std::vector<double> z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = diag[i] * r[i];
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  double res = rhs_norm;
  for (int it = 0; it < max_iterations; ++it) {
    if (res <= target) return x;
    ap = a.multiply(p);
    const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (pap <= 0.0) throw SolverError("solve_cg: matrix not positive definite", it, res);
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    res = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    for (std::size_t i = 0; i < n; ++i) z[i] = diag[i] * r[i];
    const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (res <= target) return x;
  throw SolverError("solve_cg: no convergence", max_iterations, res / rhs_norm);
}

std::vector<double> solve_diagonal(const SparseSymMatrix& a, const std::vector<double>& rhs) {
  std::vector<double> x(rhs.size());
  const std::vector<double> d = a.diagonal();
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    if (d[i] == 0.0) throw SolverError("solve_diagonal: zero diagonal entry", 0, 0.0);
    x[i] = rhs[i] / d[i];
  }
  return x;
}

BandMatrix::BandMatrix(int n, int bandwidth) : n_(n), bw_(bandwidth) {
  data_.assign(static_cast<std::size_t>(n) * (bw_ + 1), 0.0);
}

double& BandMatrix::at(int i, int j) {
  // Packed lower storage: entry (i, j) with j in [i - bw, i] lives at
  // row i, offset i - j.
  return data_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
}

void BandMatrix::factorize() {
  // Standard band Cholesky, L overwrites the lower triangle.
  for (int j = 0; j < n_; ++j) {
    double d = at(j, j);
    for (int k = std::max(0, j - bw_); k < j; ++k) {
      const double l = at(j, k);
      d -= l * l;
    }
    if (d <= 0.0) throw SolverError("BandMatrix::factorize: not positive definite", j, d);
    const double ljj = std::sqrt(d);
    at(j, j) = ljj;
    for (int i = j + 1; i <= std::min(n_ - 1, j + bw_); ++i) {
      double s = at(i, j);
      for (int k = std::max({0, i - bw_, j - bw_}); k < j; ++k) {
        s -= at(i, k) * at(j, k);
      }
      at(i, j) = s / ljj;
    }
  }
  factored_ = true;
}

std::vector<double> BandMatrix::solve(const std::vector<double>& rhs) const {
  if (!factored_) throw Error("BandMatrix::solve: factorize first");
  const auto l = [this](int i, int j) {
    return data_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
  };
  std::vector<double> y(rhs);
  for (int i = 0; i < n_; ++i) {
    double s = y[i];
    for (int k = std::max(0, i - bw_); k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = y[i];
    for (int k = i + 1; k <= std::min(n_ - 1, i + bw_); ++k) s -= l(k, i) * y[k];
    y[i] = s / l(i, i);
  }
  return y;
}

BandMatrix band_from_sparse(const SparseSymMatrix& a, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(a.n(), -1);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  int bw = 0;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    for (int k = a.row_ptr()[v]; k < a.row_ptr()[v + 1]; ++k) {
      const int u = a.col_idx()[k];
      if (pos[u] >= 0) bw = std::max(bw, std::abs(pos[u] - i));
    }
  }
  BandMatrix band(n, bw);
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    for (int k = a.row_ptr()[v]; k < a.row_ptr()[v + 1]; ++k) {
      const int j = pos[a.col_idx()[k]];
      if (j >= 0 && j <= i) band.at(i, j) = a.values()[k];
    }
  }
  return band;
}

}  // namespace gc
