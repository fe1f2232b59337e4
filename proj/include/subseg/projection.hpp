#pragma once

// Global subspace transformation: plain PCA or block sparse PCA solved by the
// generalized power method on the Stiefel manifold.
//
// Orientation: the samples w_i are the 2F rows of W (each in R^P). Y is P x m,
// the loadings Z are 2F x m and the global subspace is the column-normalized
// m x P matrix Z^T W.

#include "subseg/types.hpp"

#include <vector>

namespace subseg::projection {

/// m x P matrix whose columns (projected trajectories) have unit norm.
struct GlobalSubspace {
  Eigen::MatrixXd data;

  int dim() const { return static_cast<int>(data.rows()); }
  int points() const { return static_cast<int>(data.cols()); }
};

struct PcaResult {
  GlobalSubspace subspace;
  /// Nonzero singular values of W (above 1e-12 * sigma_max).
  int numerical_rank = 0;
  /// W had fewer than m nonzero singular values; the surplus rows are zero.
  bool rank_deficient = false;
};

/// Projects W onto its top-m principal directions, i.e. U_m^T W, and
/// normalizes columns. Throws InvalidArgument if m > min(2F, P), ZeroColumn
/// if a trajectory projects to zero.
PcaResult pca_project(const Eigen::MatrixXd& w, int m);

struct SpcaParams {
  int m = 5;
  Eigen::VectorXd gamma;
  Eigen::VectorXd mu;
  double tol = 1e-8;
  int max_iter = 500;

  /// gamma broadcast to all m entries, mu = [1/1, 1/2, ..., 1/m].
  static SpcaParams defaults(int m, double gamma = 0.01);

  /// Throws InvalidArgument unless mu is positive and pairwise distinct,
  /// gamma is nonnegative, and every gamma_j <= mu_j^2 max_i ||w_i||^2.
  void validate(const Eigen::MatrixXd& w) const;
};

struct SparseLoadings {
  Eigen::MatrixXd Z;  ///< 2F x m, unit columns (or zero when the pattern is empty)
  Eigen::MatrixXd Y;  ///< P x m, orthonormal columns
  BoolMatrix pattern; ///< 2F x m active set
};

struct GpowerResult {
  SparseLoadings loadings;
  /// Objective before the first step and after every retraction.
  std::vector<double> objective_trace;
  int iterations = 0;
  /// False when max_iter was reached first; the last iterate is still returned.
  bool converged = false;
};

/// sum_j sum_i [(mu_j w_i^T y_j)^2 - gamma_j]_+
double gpower_objective(const Eigen::MatrixXd& w, const Eigen::MatrixXd& y,
                        const SpcaParams& params);

/// Entry (i, j) is active iff (mu_j w_i^T y_j)^2 > gamma_j.
BoolMatrix extract_pattern(const Eigen::MatrixXd& y, const Eigen::MatrixXd& w,
                           const SpcaParams& params);

/// Maximizes gpower_objective over P x m orthonormal Y by Y <- Polar(grad),
/// starting from the top-m right singular vectors of W.
GpowerResult gpower_block(const Eigen::MatrixXd& w, const SpcaParams& params);

/// Column-normalized Z^T W. Throws ZeroColumn for a projected trajectory with
/// norm below 1e-12.
GlobalSubspace assemble_global(const Eigen::MatrixXd& w, const SparseLoadings& loadings);

/// Orthogonal factor of the polar decomposition, computed from a thin SVD.
Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& g);

/// Scales every column to unit norm; throws ZeroColumn below 1e-12.
Eigen::MatrixXd normalize_columns(Eigen::MatrixXd m);

}  // namespace subseg::projection
