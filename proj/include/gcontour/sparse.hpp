#pragma once

#include <vector>

#include "gcontour/graph.hpp"

namespace gc {

// Symmetric sparse matrix in CSR form over a fixed pattern: the vertex
// adjacency of a graph plus the diagonal. Both (i, j) and (j, i) are stored;
// add() writes them in the same order on both sides so mirrored values stay
// bit-identical. Row entries are sorted by column.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  static SparseSymMatrix from_adjacency(const std::vector<std::vector<int>>& adjacency);

  int n() const { return static_cast<int>(row_ptr_.size()) - 1; }
  void set_zero();
  void add(int i, int j, double value);      // accumulate symmetrically
  double at(int i, int j) const;             // 0.0 off pattern
  double row_sum(int i) const;
  int row_entries(int i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  std::vector<double> diagonal() const;
  double total_sum() const;

  // Principal submatrix over the vertices flagged active; row order follows
  // ascending vertex id. `index_of` maps global ids to submatrix rows.
  SparseSymMatrix submatrix(const VertexSet& active, std::vector<int>* index_of) const;

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// Jacobi-preconditioned conjugate gradients; stops when the residual norm
// drops to tol * |rhs|. Throws SolverError when max_iterations is exhausted.
std::vector<double> solve_cg(const SparseSymMatrix& a, const std::vector<double>& rhs,
                             double tol, int max_iterations);

// Direct solve for diagonal (lumped) systems.
std::vector<double> solve_diagonal(const SparseSymMatrix& a, const std::vector<double>& rhs);

// Symmetric band matrix in packed lower storage, for the factorization path
// after reverse Cuthill-McKee reordering.
class BandMatrix {
 public:
  BandMatrix(int n, int bandwidth);
  int n() const { return n_; }
  int bandwidth() const { return bw_; }
  double& at(int i, int j);  // requires i >= j, i - j <= bandwidth

  // In-place Cholesky; throws SolverError if the matrix is not positive
  // definite. solve() applies the factors.
  void factorize();
  std::vector<double> solve(const std::vector<double>& rhs) const;

 private:
  int n_;
  int bw_;
  bool factored_ = false;
  std::vector<double> data_;
};

// Packs a sparse matrix into band storage under the given ordering (new row i
// corresponds to vertex order[i]).
BandMatrix band_from_sparse(const SparseSymMatrix& a, const std::vector<int>& order);

}  // namespace gc
