#include "subseg/neighbors.hpp"

#include "subseg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace subseg::neighbors {

double nsi(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double dot = a.dot(b);
  return dot * dot;
}

double nsi(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() == 0 || b.cols() == 0) {
    throw InvalidArgument("nsi: bases must be nonempty and share the ambient dimension");
  }
  const Eigen::MatrixXd cross = a.transpose() * b;
  return cross.squaredNorm() / static_cast<double>(std::min(a.cols(), b.cols()));
}

NsiMatrix nsi_matrix(const projection::GlobalSubspace& global) {
  NsiMatrix out;
  const Eigen::MatrixXd gram = global.data.transpose() * global.data;
  out.similarity = gram.cwiseAbs2();
  // Symmetric by construction; remove the last-bit asymmetry of the product.
  out.similarity = 0.5 * (out.similarity + out.similarity.transpose()).eval();
  out.distance = (1.0 - out.similarity.array()).max(0.0).matrix();
  return out;
}

std::vector<int> search_area(const Eigen::VectorXd& distances, int self, int t) {
  if (t < 1) throw InvalidArgument("search_area: T must be >= 1");
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(distances.size()));
  for (int j = 0; j < static_cast<int>(distances.size()); ++j) {
    if (j != self) idx.push_back(j);
  }
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(t), idx.size());
  auto closer = [&](int a, int b) {
    return distances(a) < distances(b) || (distances(a) == distances(b) && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(),
                    closer);
  idx.resize(keep);
  return idx;
}

Eigen::VectorXd proximity_weights(const Eigen::VectorXd& x, double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("proximity_weights: sigma must be > 0");
  // Shift by the minimum before exponentiating; the ratio is unchanged.
  const Eigen::ArrayXd e = ((x.array() - x.minCoeff()) / sigma).exp();
  return (e / e.sum()).matrix();
}

double neighbor_objective(const Eigen::VectorXd& x, const Eigen::VectorXd& q, double lambda,
                          const Eigen::VectorXd& c) {
  return lambda * (q.array() * c.array().abs()).sum() +
         0.5 * (x.array() * c.array()).square().sum();
}

RowSolution solve_sparse_neighbors(const Eigen::VectorXd& x, double sigma, double lambda,
                                   const AdmmParams& admm) {
  const Eigen::Index n = x.size();
  if (n == 0) throw InvalidArgument("solve_sparse_neighbors: empty candidate set");
  if (!(sigma > 0.0)) throw InvalidArgument("solve_sparse_neighbors: sigma must be > 0");
  if (!(lambda >= 0.0)) throw InvalidArgument("solve_sparse_neighbors: lambda must be >= 0");
  if (!(admm.rho > 0.0) || admm.max_iter < 1) {
    throw InvalidArgument("solve_sparse_neighbors: rho and max_iter must be positive");
  }

  RowSolution out;
  if (n == 1) {
    out.c = Eigen::VectorXd::Ones(1);
    out.converged = true;
    return out;
  }

  const double rho = admm.rho;
  const Eigen::ArrayXd d = x.array().square();
  const Eigen::ArrayXd threshold = lambda * proximity_weights(x, sigma).array() / rho;
  const Eigen::ArrayXd inv = 1.0 / (d + rho);
  const double inv_sum = inv.sum();
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  Eigen::ArrayXd c = Eigen::ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::ArrayXd z = c;
  Eigen::ArrayXd u = Eigen::ArrayXd::Zero(n);

  for (int it = 1; it <= admm.max_iter; ++it) {
    // [diag(d) + rho I, 1; 1^T, 0] [c; nu] = [rho (z - u); 1]
    const Eigen::ArrayXd v = rho * (z - u);
    const double nu = ((v * inv).sum() - 1.0) / inv_sum;
    c = (v - nu) * inv;

    const Eigen::ArrayXd z_prev = z;
    const Eigen::ArrayXd shifted = c + u;
    z = shifted.sign() * (shifted.abs() - threshold).max(0.0);
    u += c - z;

    out.iterations = it;
    out.primal_residual = std::sqrt((c - z).square().sum());
    out.dual_residual = rho * std::sqrt((z - z_prev).square().sum());
    const double eps_primal = sqrt_n * admm.tol_abs +
                              admm.tol_rel * std::max(std::sqrt(c.square().sum()),
                                                      std::sqrt(z.square().sum()));
    const double eps_dual = sqrt_n * admm.tol_abs + admm.tol_rel * rho * std::sqrt(u.square().sum());
    if (out.primal_residual <= eps_primal && out.dual_residual <= eps_dual) {
      out.converged = true;
      break;
    }
  }
  out.stalled = !out.converged && std::max(out.primal_residual, out.dual_residual) > 1e-3;

  const double mass = z.sum();
  if (mass > 0.0 && std::isfinite(mass)) {
    out.c = (z / mass).matrix();
  } else {
    out.c = c.matrix();
  }
  return out;
}

std::vector<int> SparseNeighborSolution::stalled_rows() const {
  std::vector<int> rows;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].stalled) rows.push_back(static_cast<int>(i));
  }
  return rows;
}

SparseNeighborSolution sparse_neighbors(const NsiMatrix& nsi, const NeighborParams& params,
                                        int threads) {
  const int points = static_cast<int>(nsi.distance.rows());
  if (points < 2) throw InvalidArgument("sparse_neighbors: need at least two points");
  if (params.search_size < 2) throw InvalidArgument("sparse_neighbors: search size must be >= 2");
  if (params.sigma && !(*params.sigma > 0.0)) {
    throw InvalidArgument("sparse_neighbors: sigma must be > 0");
  }

  SparseNeighborSolution out;
  out.C = Eigen::MatrixXd::Zero(points, points);
  out.candidates.resize(static_cast<std::size_t>(points));
  out.stats.resize(static_cast<std::size_t>(points));

  parallel_for(points, threads, [&](int i) {
    const Eigen::VectorXd row = nsi.distance.row(i).transpose();
    auto cand = search_area(row, i, params.search_size);
    Eigen::VectorXd x(static_cast<Eigen::Index>(cand.size()));
    for (std::size_t k = 0; k < cand.size(); ++k) x(static_cast<Eigen::Index>(k)) = row(cand[k]);
    double sigma = params.sigma.value_or(x.mean());
    if (!(sigma > 0.0)) sigma = 1.0;  // every candidate coincides with point i

    auto sol = solve_sparse_neighbors(x, sigma, params.lambda, params.admm);
    for (std::size_t k = 0; k < cand.size(); ++k) {
      out.C(i, cand[k]) = sol.c(static_cast<Eigen::Index>(k));
    }
    out.candidates[static_cast<std::size_t>(i)] = std::move(cand);
    out.stats[static_cast<std::size_t>(i)] = std::move(sol);
  });
  return out;
}

Eigen::MatrixXd weight_matrix(const Eigen::MatrixXd& c, const Eigen::MatrixXd& distance) {
  if (c.rows() != c.cols() || c.rows() != distance.rows() || c.cols() != distance.cols()) {
    throw InvalidArgument("weight_matrix: C and X must be square of equal size");
  }
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(c.rows(), c.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (j == i || c(i, j) == 0.0) continue;
      omega(i, j) = c(i, j) / std::max(distance(i, j), 1e-12);
      total += omega(i, j);
    }
    if (total != 0.0) omega.row(i) /= total;
  }
  return omega;
}

}  // namespace subseg::neighbors
