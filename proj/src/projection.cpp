#include "subseg/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace subseg::projection {
namespace {

constexpr double kZeroColumn = 1e-12;

}  // namespace

Eigen::MatrixXd normalize_columns(Eigen::MatrixXd m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double norm = m.col(c).norm();
    if (!(norm >= kZeroColumn)) {
      throw ZeroColumn("projected trajectory " + std::to_string(c) + " has zero norm",
                       static_cast<int>(c));
    }
    m.col(c) /= norm;
  }
  return m;
}

PcaResult pca_project(const Eigen::MatrixXd& w, int m) {
  if (m < 1 || m > std::min(w.rows(), w.cols())) {
    throw InvalidArgument("pca_project: m=" + std::to_string(m) + " outside [1, min(2F, P)]");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  PcaResult out;
  const double floor = s.size() > 0 ? 1e-12 * s(0) : 0.0;
  out.numerical_rank = static_cast<int>((s.array() > floor).count());
  out.rank_deficient = out.numerical_rank < m;

  Eigen::MatrixXd basis = svd.matrixU().leftCols(m);
  for (int j = out.numerical_rank; j < m; ++j) basis.col(j).setZero();
  out.subspace.data = normalize_columns(basis.transpose() * w);
  return out;
}

SpcaParams SpcaParams::defaults(int m, double gamma) {
  SpcaParams p;
  p.m = m;
  p.gamma = Eigen::VectorXd::Constant(m, gamma);
  p.mu.resize(m);
  for (int j = 0; j < m; ++j) p.mu(j) = 1.0 / (j + 1);
  return p;
}

void SpcaParams::validate(const Eigen::MatrixXd& w) const {
  if (m < 1 || m > std::min(w.rows(), w.cols())) {
    throw InvalidArgument("spca: m=" + std::to_string(m) + " outside [1, min(2F, P)]");
  }
  if (gamma.size() != m || mu.size() != m) {
    throw InvalidArgument("spca: gamma and mu must have m entries");
  }
  if (!(tol > 0.0) || max_iter < 1) throw InvalidArgument("spca: tol and max_iter must be > 0");
  for (int j = 0; j < m; ++j) {
    if (!(mu(j) > 0.0)) throw InvalidArgument("spca: mu entries must be positive");
    for (int k = 0; k < j; ++k) {
      if (mu(j) == mu(k)) throw InvalidArgument("spca: mu entries must be pairwise distinct");
    }
  }
  const double max_row = w.rowwise().squaredNorm().maxCoeff();
  for (int j = 0; j < m; ++j) {
    if (!(gamma(j) >= 0.0)) throw InvalidArgument("spca: gamma entries must be nonnegative");
    if (gamma(j) > mu(j) * mu(j) * max_row) {
      throw InvalidArgument("spca: gamma[" + std::to_string(j) +
                            "] exceeds mu_j^2 max_i ||w_i||^2 and empties the pattern");
    }
  }
}

double gpower_objective(const Eigen::MatrixXd& w, const Eigen::MatrixXd& y,
                        const SpcaParams& params) {
  const Eigen::MatrixXd proj = w * y;  // (i, j) = w_i^T y_j
  double total = 0.0;
  for (Eigen::Index j = 0; j < proj.cols(); ++j) {
    const double mu = params.mu(j);
    for (Eigen::Index i = 0; i < proj.rows(); ++i) {
      const double v = mu * proj(i, j);
      total += std::max(0.0, v * v - params.gamma(j));
    }
  }
  return total;
}

BoolMatrix extract_pattern(const Eigen::MatrixXd& y, const Eigen::MatrixXd& w,
                           const SpcaParams& params) {
  const Eigen::MatrixXd proj = w * y;
  BoolMatrix pattern(proj.rows(), proj.cols());
  for (Eigen::Index j = 0; j < proj.cols(); ++j) {
    for (Eigen::Index i = 0; i < proj.rows(); ++i) {
      const double v = params.mu(j) * proj(i, j);
      pattern(i, j) = v * v > params.gamma(j);
    }
  }
  return pattern;
}

Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

namespace {

// Column j: sum_i 1{active} 2 mu_j^2 (w_i^T y_j) w_i.
Eigen::MatrixXd objective_gradient(const Eigen::MatrixXd& w, const Eigen::MatrixXd& y,
                                   const SpcaParams& params) {
  Eigen::MatrixXd coeff = w * y;
  for (Eigen::Index j = 0; j < coeff.cols(); ++j) {
    const double mu2 = params.mu(j) * params.mu(j);
    for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
      const double v = coeff(i, j);
      coeff(i, j) = mu2 * v * v > params.gamma(j) ? 2.0 * mu2 * v : 0.0;
    }
  }
  return w.transpose() * coeff;
}

}  // namespace

GpowerResult gpower_block(const Eigen::MatrixXd& w, const SpcaParams& params) {
  params.validate(w);
  if (w.isZero(0.0)) throw InvalidArgument("gpower_block: W is zero");

  GpowerResult out;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinV);
  Eigen::MatrixXd y = svd.matrixV().leftCols(params.m);
  double objective = gpower_objective(w, y, params);
  out.objective_trace.push_back(objective);

  for (int it = 1; it <= params.max_iter; ++it) {
    y = polar_factor(objective_gradient(w, y, params));
    const double next = gpower_objective(w, y, params);
    out.iterations = it;
    out.objective_trace.push_back(next);
    const double gain = next - objective;
    objective = next;
    if (objective <= 0.0 || gain <= params.tol * objective) {
      out.converged = true;
      break;
    }
  }

  SparseLoadings& ld = out.loadings;
  ld.Y = y;
  ld.pattern = extract_pattern(y, w, params);
  // At fixed Y the inner maximization gives z_j proportional to the
  // pattern-masked W y_j.
  ld.Z = w * y;
  for (Eigen::Index j = 0; j < ld.Z.cols(); ++j) {
    for (Eigen::Index i = 0; i < ld.Z.rows(); ++i) {
      if (!ld.pattern(i, j)) ld.Z(i, j) = 0.0;
    }
    const double norm = ld.Z.col(j).norm();
    if (norm > 0.0) ld.Z.col(j) /= norm;
  }
  return out;
}

GlobalSubspace assemble_global(const Eigen::MatrixXd& w, const SparseLoadings& loadings) {
  if (loadings.Z.rows() != w.rows()) {
    throw InvalidArgument("assemble_global: loadings do not match W");
  }
  return GlobalSubspace{normalize_columns(loadings.Z.transpose() * w)};
}

}  // namespace subseg::projection
