#pragma once

// Sparse neighbor selection in the global subspace: NSI distances, a bounded
// search area per point, a weighted L1 problem under the affine constraint
// solved by ADMM, and the resulting sparse weight matrix.

#include "subseg/projection.hpp"

#include <optional>
#include <vector>

namespace subseg::neighbors {

/// NSI of two unit column vectors, (a^T b)^2.
double nsi(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// NSI between two orthonormal bases: tr(A^T B B^T A) / min(dim A, dim B).
double nsi(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Pairwise NSI similarities and the derived distances X = 1 - NSI.
struct NsiMatrix {
  Eigen::MatrixXd similarity;
  Eigen::MatrixXd distance;
};

NsiMatrix nsi_matrix(const projection::GlobalSubspace& global);

/// Indices of the T smallest distances in row `self`, excluding `self`;
/// ties go to the lower index. Returned in ascending distance order.
std::vector<int> search_area(const Eigen::VectorXd& distances, int self, int t);

struct AdmmParams {
  double rho = 1.0;
  double tol_abs = 1e-8;
  double tol_rel = 1e-6;
  int max_iter = 2000;
};

struct NeighborParams {
  int search_size = 20;
  double lambda = 0.1;
  /// Proximity-weight bandwidth; mean candidate distance when empty.
  std::optional<double> sigma;
  AdmmParams admm;
};

struct RowSolution {
  Eigen::VectorXd c;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
  /// Hit max_iter with a residual still above 1e-3.
  bool stalled = false;
};

/// Diagonal of Q_i: exp(x / sigma) normalized over the candidate set.
Eigen::VectorXd proximity_weights(const Eigen::VectorXd& x, double sigma);

/// lambda ||diag(q) c||_1 + 1/2 ||diag(x) c||_2^2
double neighbor_objective(const Eigen::VectorXd& x, const Eigen::VectorXd& q, double lambda,
                          const Eigen::VectorXd& c);

/// Minimizes neighbor_objective subject to 1^T c = 1 over the candidates
/// whose distances are `x`. The quadratic step solves the equality-constrained
/// KKT system; the L1 step soft-thresholds at lambda q / rho. The returned
/// coefficients carry the sparse support of the L1 block, rescaled to sum
/// to one.
RowSolution solve_sparse_neighbors(const Eigen::VectorXd& x, double sigma, double lambda,
                                   const AdmmParams& admm = {});

struct SparseNeighborSolution {
  /// Row i holds c_i over all P points; zero outside candidates[i].
  Eigen::MatrixXd C;
  std::vector<std::vector<int>> candidates;
  std::vector<RowSolution> stats;

  std::vector<int> stalled_rows() const;
};

SparseNeighborSolution sparse_neighbors(const NsiMatrix& nsi, const NeighborParams& params,
                                        int threads = 1);

/// omega_ij = (c_ij / X_ij) / sum_t (c_it / X_it), zero diagonal; distances
/// below 1e-12 are clamped to 1e-12.
Eigen::MatrixXd weight_matrix(const Eigen::MatrixXd& c, const Eigen::MatrixXd& distance);

}  // namespace subseg::neighbors
