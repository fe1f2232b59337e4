#pragma once

// Affinity assembly from the sparse weights and the error matrix, followed by
// normalized spectral clustering.

#include "subseg/types.hpp"

#include <cstdint>
#include <optional>

namespace subseg::clustering {

struct AffinityOptions {
  /// Bandwidth of exp(-e / sigma_e); median of the positive errors when empty.
  std::optional<double> sigma_e;
  /// Add |e| directly instead of exp(-e / sigma_e).
  bool raw_error = false;
};

struct Affinity {
  Eigen::MatrixXd A;  ///< symmetric, nonnegative, zero diagonal
  int components = 0;
  /// Bandwidth actually used (0 when raw_error is set).
  double sigma_e = 0.0;
};

/// Errors at or below this value count as zero when picking sigma_e.
inline constexpr double kErrorFloor = 1e-12;

/// Median of the entries of e above kErrorFloor; 1 if there are none.
double error_bandwidth(const Eigen::MatrixXd& e);

/// A = (B + B^T) / 2 with B_it = |omega_it| + exp(-e_it / sigma_e) for t != i.
Affinity build_affinity(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& e,
                        const AffinityOptions& options = {});

/// Connected components of the graph with an edge wherever A > 0.
int connected_components(const Eigen::MatrixXd& a);

/// I - D^{-1/2} A D^{-1/2}; zero-degree vertices get identity rows.
Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a);

struct SpectralEmbedding {
  Eigen::MatrixXd U;           ///< P x n, rows scaled to unit norm (zero rows kept)
  Eigen::VectorXd eigenvalues; ///< n smallest, ascending
};

SpectralEmbedding spectral_embed(const Eigen::MatrixXd& laplacian, int n);

struct KmeansResult {
  Labeling labels;
  double inertia = 0.0;
};

/// Lloyd iterations from `restarts` k-means++ seedings; keeps the lowest
/// inertia. Rows of `points` are the samples. An empty cluster is re-seeded
/// at the point farthest from its centroid.
KmeansResult kmeans(const Eigen::MatrixXd& points, int n, int restarts, std::uint64_t seed);

}  // namespace subseg::clustering
