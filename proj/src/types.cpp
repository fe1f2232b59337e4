#include "subseg/types.hpp"

#include <algorithm>

namespace subseg {

void Labeling::validate() const {
  if (n < 0) throw InvalidArgument("labeling: negative cluster count");
  for (std::size_t p = 0; p < labels.size(); ++p) {
    if (labels[p] < 0 || labels[p] >= n) {
      throw InvalidArgument("labeling: label " + std::to_string(labels[p]) + " at index " +
                            std::to_string(p) + " outside [0, " + std::to_string(n) + ")");
    }
  }
}

Labeling Labeling::from_labels(std::vector<int> labels) {
  Labeling out;
  out.n = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  out.labels = std::move(labels);
  out.validate();
  return out;
}

TrajectoryMatrix::TrajectoryMatrix(Eigen::MatrixXd values)
    : TrajectoryMatrix(values, BoolMatrix::Constant(values.rows(), values.cols(), true)) {}

TrajectoryMatrix::TrajectoryMatrix(Eigen::MatrixXd values, BoolMatrix observed)
    : data(std::move(values)), mask(std::move(observed)) {
  if (data.rows() % 2 != 0) throw InvalidArgument("trajectory matrix: odd row count");
  if (mask.rows() != data.rows() || mask.cols() != data.cols()) {
    throw InvalidArgument("trajectory matrix: mask shape differs from data shape");
  }
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
      if (!mask(r, c)) data(r, c) = 0.0;
    }
  }
}

}  // namespace subseg
