#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace subseg {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Motion tracks of a scene do not share a frame count.
class FrameMismatch : public Error {
 public:
  using Error::Error;
};

/// A projected trajectory has (numerically) zero norm.
class ZeroColumn : public Error {
 public:
  ZeroColumn(const std::string& what, int column) : Error(what), column_(column) {}
  int column() const { return column_; }

 private:
  int column_;
};

/// Two labelings of different length were compared.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (trajectory, label or report file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Cluster assignment for P trajectories; every label lies in [0, n).
struct Labeling {
  std::vector<int> labels;
  int n = 0;

  int size() const { return static_cast<int>(labels.size()); }

  /// Throws InvalidArgument if a label falls outside [0, n).
  void validate() const;

  /// Builds a labeling and infers n as max(label) + 1.
  static Labeling from_labels(std::vector<int> labels);
};

/// Stacked 2-D feature positions: row 2f holds x and row 2f+1 holds y of
/// frame f; column p is one trajectory. Masked-out entries are zero.
struct TrajectoryMatrix {
  Eigen::MatrixXd data;
  BoolMatrix mask;

  TrajectoryMatrix() = default;
  /// Fully observed matrix. Throws InvalidArgument on an odd row count.
  explicit TrajectoryMatrix(Eigen::MatrixXd values);
  TrajectoryMatrix(Eigen::MatrixXd values, BoolMatrix observed);

  int frames() const { return static_cast<int>(data.rows() / 2); }
  int points() const { return static_cast<int>(data.cols()); }
  bool complete() const { return mask.all(); }
};

}  // namespace subseg
