#include "subseg/subspace_error.hpp"

#include "subseg/parallel.hpp"

#include <algorithm>

namespace subseg::subspace_error {

std::vector<int> collect_local_subspace(const Eigen::MatrixXd& omega, int i) {
  if (i < 0 || i >= omega.rows()) throw InvalidArgument("collect_local_subspace: bad index");
  std::vector<int> members;
  for (int j = 0; j < static_cast<int>(omega.cols()); ++j) {
    if (j == i || omega(i, j) != 0.0) members.push_back(j);
  }
  return members;
}

LocalSubspace subspace_basis(const Eigen::MatrixXd& columns, double rank_tol) {
  if (columns.cols() == 0) throw InvalidArgument("subspace_basis: empty member set");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  LocalSubspace out;
  if (s.size() == 0 || s(0) <= 0.0) {
    out.basis = Eigen::MatrixXd::Zero(columns.rows(), 0);
    return out;
  }
  out.rank = static_cast<int>((s.array() > rank_tol * s(0)).count());
  out.basis = svd.matrixU().leftCols(out.rank);
  return out;
}

Eigen::VectorXd error_vector(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& global) {
  if (basis.rows() != global.rows()) throw InvalidArgument("error_vector: dimension mismatch");
  const Eigen::MatrixXd residual = global - basis * (basis.transpose() * global);
  return residual.colwise().squaredNorm().transpose();
}

std::vector<LocalSubspace> local_subspaces(const projection::GlobalSubspace& global,
                                           const Eigen::MatrixXd& omega, double rank_tol,
                                           int threads) {
  const int points = global.points();
  if (omega.rows() != points || omega.cols() != points) {
    throw InvalidArgument("local_subspaces: omega does not match the global subspace");
  }
  std::vector<LocalSubspace> out(static_cast<std::size_t>(points));
  parallel_for(points, threads, [&](int i) {
    auto members = collect_local_subspace(omega, i);
    Eigen::MatrixXd cols(global.dim(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) {
      cols.col(static_cast<Eigen::Index>(k)) = global.data.col(members[k]);
    }
    auto& sub = out[static_cast<std::size_t>(i)];
    sub = subspace_basis(cols, rank_tol);
    sub.members = std::move(members);
  });
  return out;
}

Eigen::MatrixXd error_matrix(const std::vector<LocalSubspace>& subspaces,
                             const projection::GlobalSubspace& global, int threads) {
  const int points = global.points();
  if (static_cast<int>(subspaces.size()) != points) {
    throw InvalidArgument("error_matrix: need one local subspace per point");
  }
  Eigen::MatrixXd e(points, points);
  parallel_for(points, threads, [&](int i) {
    e.row(i) = error_vector(subspaces[static_cast<std::size_t>(i)].basis, global.data).transpose();
  });
  return e;
}

}  // namespace subseg::subspace_error
