#include "subseg/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace subseg::clustering {

double error_bandwidth(const Eigen::MatrixXd& e) {
  std::vector<double> positive;
  positive.reserve(static_cast<std::size_t>(e.size()));
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    if (e.data()[k] > kErrorFloor) positive.push_back(e.data()[k]);
  }
  if (positive.empty()) return 1.0;
  const auto mid = positive.size() / 2;
  std::nth_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(mid),
                   positive.end());
  double median = positive[mid];
  if (positive.size() % 2 == 0) {
    const double lower =
        *std::max_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  return median;
}

Affinity build_affinity(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& e,
                        const AffinityOptions& options) {
  if (omega.rows() != omega.cols() || omega.rows() != e.rows() || omega.cols() != e.cols()) {
    throw InvalidArgument("build_affinity: omega and e must be square of equal size");
  }
  Affinity out;
  Eigen::MatrixXd b;
  if (options.raw_error) {
    b = omega.cwiseAbs() + e.cwiseAbs();
  } else {
    out.sigma_e = options.sigma_e.value_or(error_bandwidth(e));
    if (!(out.sigma_e > 0.0)) throw InvalidArgument("build_affinity: sigma_e must be > 0");
    b = omega.cwiseAbs() + (-e.array() / out.sigma_e).exp().matrix();
  }
  b.diagonal().setZero();
  out.A = 0.5 * (b + b.transpose());
  out.components = connected_components(out.A);
  return out;
}

int connected_components(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (a(i, j) > 0.0 || a(j, i) > 0.0) {
        const int ri = find(i), rj = find(j);
        if (ri != rj) {
          parent[rj] = ri;
          --components;
        }
      }
    }
  }
  return components;
}

Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("normalized_laplacian: A must be square");
  const Eigen::VectorXd degree = a.rowwise().sum();
  Eigen::VectorXd scale(degree.size());
  for (Eigen::Index i = 0; i < degree.size(); ++i) {
    scale(i) = degree(i) > 0.0 ? 1.0 / std::sqrt(degree(i)) : 0.0;
  }
  Eigen::MatrixXd l = -(scale.asDiagonal() * a * scale.asDiagonal());
  l.diagonal().array() += 1.0;
  for (Eigen::Index i = 0; i < degree.size(); ++i) {
    if (degree(i) <= 0.0) {
      l.row(i).setZero();
      l.col(i).setZero();
      l(i, i) = 1.0;
    }
  }
  return 0.5 * (l + l.transpose());
}

SpectralEmbedding spectral_embed(const Eigen::MatrixXd& laplacian, int n) {
  if (n < 1 || n > laplacian.rows()) throw InvalidArgument("spectral_embed: n outside [1, P]");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(laplacian);
  if (eig.info() != Eigen::Success) throw Error("spectral_embed: eigensolver failed");
  SpectralEmbedding out;
  out.eigenvalues = eig.eigenvalues().head(n);
  out.U = eig.eigenvectors().leftCols(n);
  for (Eigen::Index i = 0; i < out.U.rows(); ++i) {
    const double norm = out.U.row(i).norm();
    if (norm > 0.0) out.U.row(i) /= norm;
  }
  return out;
}

namespace {

struct LloydState {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double inertia = 0.0;
};

Eigen::MatrixXd plus_plus_centers(const Eigen::MatrixXd& x, int n, std::mt19937_64& rng) {
  const auto count = static_cast<int>(x.rows());
  Eigen::MatrixXd centers(n, x.cols());
  std::uniform_int_distribution<int> pick(0, count - 1);
  centers.row(0) = x.row(pick(rng));
  Eigen::VectorXd dist = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int k = 1; k < n; ++k) {
    const double total = dist.sum();
    int chosen = 0;
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      double target = u(rng);
      chosen = count - 1;
      for (int i = 0; i < count; ++i) {
        target -= dist(i);
        if (target <= 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.row(k) = x.row(chosen);
    dist = dist.cwiseMin((x.rowwise() - centers.row(k)).rowwise().squaredNorm());
  }
  return centers;
}

LloydState lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers, int max_iter = 300) {
  const auto count = static_cast<int>(x.rows());
  const auto n = static_cast<int>(centers.rows());
  LloydState s;
  s.labels.assign(static_cast<std::size_t>(count), -1);
  Eigen::VectorXd best(count);

  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (int i = 0; i < count; ++i) {
      int arg = 0;
      double dmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const double d = (x.row(i) - centers.row(k)).squaredNorm();
        if (d < dmin) {
          dmin = d;
          arg = k;
        }
      }
      best(i) = dmin;
      if (s.labels[i] != arg) {
        s.labels[i] = arg;
        changed = true;
      }
    }

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(n, x.cols());
    std::vector<int> sizes(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < count; ++i) {
      sums.row(s.labels[i]) += x.row(i);
      ++sizes[s.labels[i]];
    }
    for (int k = 0; k < n; ++k) {
      if (sizes[k] > 0) {
        centers.row(k) = sums.row(k) / sizes[k];
        continue;
      }
      // Empty cluster: move it onto the worst-served point.
      Eigen::Index far = 0;
      best.maxCoeff(&far);
      centers.row(k) = x.row(far);
      best(far) = 0.0;
      s.labels[far] = k;
      changed = true;
    }
    if (!changed) break;
  }

  s.inertia = 0.0;
  for (int i = 0; i < count; ++i) s.inertia += (x.row(i) - centers.row(s.labels[i])).squaredNorm();
  s.centers = std::move(centers);
  return s;
}

}  // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int n, int restarts, std::uint64_t seed) {
  if (n < 1 || n > points.rows()) throw InvalidArgument("kmeans: n outside [1, P]");
  if (restarts < 1) throw InvalidArgument("kmeans: restarts must be >= 1");
  std::mt19937_64 rng(seed);
  KmeansResult out;
  out.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto state = lloyd(points, plus_plus_centers(points, n, rng));
    if (state.inertia < out.inertia) {
      out.inertia = state.inertia;
      out.labels.labels = std::move(state.labels);
    }
  }
  out.labels.n = n;
  return out;
}

}  // namespace subseg::clustering
