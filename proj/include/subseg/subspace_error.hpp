#pragma once

// Local subspaces spanned by each point and its sparse neighbors, and the
// squared residual of every projected point against every local subspace.

#include "subseg/projection.hpp"

#include <vector>

namespace subseg::subspace_error {

struct LocalSubspace {
  std::vector<int> members;
  Eigen::MatrixXd basis;  ///< m x rank, orthonormal columns
  int rank = 0;
};

/// {i} together with every j where omega(i, j) != 0, ascending.
std::vector<int> collect_local_subspace(const Eigen::MatrixXd& omega, int i);

/// Left singular vectors of `columns` with sigma_k > rank_tol * sigma_max.
/// The rank is at least one for a nonzero input.
LocalSubspace subspace_basis(const Eigen::MatrixXd& columns, double rank_tol = 1e-6);

/// e_t = ||alpha_t - B B^T alpha_t||^2 for every column alpha_t of `global`.
Eigen::VectorXd error_vector(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& global);

/// One local subspace per point, built from the nonzero pattern of omega.
std::vector<LocalSubspace> local_subspaces(const projection::GlobalSubspace& global,
                                           const Eigen::MatrixXd& omega,
                                           double rank_tol = 1e-6, int threads = 1);

/// Row i is error_vector of subspace i.
Eigen::MatrixXd error_matrix(const std::vector<LocalSubspace>& subspaces,
                             const projection::GlobalSubspace& global, int threads = 1);

}  // namespace subseg::subspace_error
