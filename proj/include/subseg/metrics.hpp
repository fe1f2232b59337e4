#pragma once

// Misclassification scoring against ground truth and table aggregation.

#include "subseg/types.hpp"

#include <string>
#include <vector>

namespace subseg::metrics {

struct ScoreReport {
  double misclassification = 0.0;
  /// best_permutation[predicted id] = matched true id.
  std::vector<int> best_permutation;
  /// confusion(predicted, true) counts over max(pred.n, truth.n) ids.
  Eigen::MatrixXi confusion;
};

/// Fraction of points mislabelled under the best bijection between label
/// sets, found by enumerating all bijections. Throws LengthMismatch for
/// labelings of different length and InvalidArgument when more than 10
/// clusters are involved.
ScoreReport misclassification(const Labeling& pred, const Labeling& truth);

struct GroupedScore {
  std::string group;
  double misclassification = 0.0;  ///< fraction in [0, 1]
};

struct GroupSummary {
  std::string group;
  int count = 0;
  double mean_percent = 0.0;
  double median_percent = 0.0;
};

/// Mean and median (in percent) per group in order of first appearance,
/// followed by an "All" row over every report.
std::vector<GroupSummary> aggregate(const std::vector<GroupedScore>& reports);

/// Text table laid out like the usual mean/median misclassification tables.
std::string format_table(const std::vector<GroupSummary>& rows);

}  // namespace subseg::metrics
