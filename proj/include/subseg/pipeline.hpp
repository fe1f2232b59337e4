#pragma once

// Full segmentation: project -> NSI -> sparse neighbors -> weights -> local
// subspaces -> error matrix -> affinity -> spectral clustering.

#include "subseg/clustering.hpp"
#include "subseg/neighbors.hpp"
#include "subseg/projection.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace subseg {

enum class Projector { pca, spca };

const char* to_string(Projector p);
/// Accepts "pca" or "spca"; throws InvalidArgument otherwise.
Projector projector_from_string(const std::string& name);

struct SegmentConfig {
  /// Number of motions; assumed known.
  int n = 2;
  Projector projector = Projector::spca;
  int m = 5;
  double gamma = 0.01;
  neighbors::NeighborParams neighbors;
  double rank_tol = 1e-6;
  clustering::AffinityOptions affinity;
  int kmeans_restarts = 10;
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws InvalidArgument naming the offending field.
  void validate(const TrajectoryMatrix& w) const;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct SolverSummary {
  int rows = 0;
  int max_iterations = 0;
  double mean_iterations = 0.0;
  double max_primal_residual = 0.0;
  double max_dual_residual = 0.0;
  double mean_support = 0.0;
  std::vector<int> stalled_rows;
};

struct RunReport {
  std::vector<StageTiming> timings;
  std::string projector;
  int m = 0;
  bool rank_deficient = false;
  int gpower_iterations = 0;
  bool gpower_converged = true;
  double gpower_objective = 0.0;
  int active_pattern = 0;
  SolverSummary solver;
  std::vector<int> zero_weight_rows;
  std::vector<int> local_ranks;
  double sigma_e = 0.0;
  int components = 0;
  std::vector<double> eigenvalues;
  std::vector<int> labels;
  int n = 0;
  /// Image coordinates of every trajectory in frame 0.
  std::vector<std::array<double, 2>> first_frame;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const RunReport& report);

struct SegmentResult {
  Labeling labels;
  RunReport report;
  projection::GlobalSubspace global;
  Eigen::MatrixXd omega;
  Eigen::MatrixXd errors;
  clustering::Affinity affinity;
};

SegmentResult segment(const TrajectoryMatrix& w, const SegmentConfig& config);

}  // namespace subseg
