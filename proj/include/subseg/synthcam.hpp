#pragma once

// Synthetic multi-body rigid-motion scenes under the affine camera model.

#include "subseg/types.hpp"

#include <cstdint>
#include <vector>

namespace subseg::synthcam {

/// Per-frame pose of one rigid body. Frame 0 is the identity pose.
struct MotionTrack {
  std::vector<Eigen::Matrix3d> rotations;
  std::vector<Eigen::Vector3d> translations;

  int frames() const { return static_cast<int>(rotations.size()); }
};

/// 3 x P_k world points of one rigid body.
struct PointCloud3D {
  Eigen::Matrix3Xd points;
};

struct SceneConfig {
  int n_motions = 2;
  /// One entry per motion, or a single entry broadcast to all motions.
  std::vector<int> points_per_motion{60};
  int frames = 30;
  /// Radians per frame; one entry per motion or a single broadcast entry.
  std::vector<double> rotation_rate{0.5};
  /// World units per frame; one entry per motion or a single broadcast entry.
  std::vector<double> translation_rate{20.0};
  double noise_sigma = 0.0;
  double missing_rate = 0.0;
  std::uint64_t seed = 1;
  /// Half-width of the cube the points of each body are drawn from.
  double cloud_extent = 100.0;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;

  int points_of(int motion) const;
  double rotation_rate_of(int motion) const;
  double translation_rate_of(int motion) const;
};

struct Scene {
  TrajectoryMatrix trajectories;
  Labeling truth;
  std::vector<MotionTrack> motions;
  std::vector<PointCloud3D> clouds;
};

/// Random-walk rigid motion starting at the identity pose: each frame
/// composes an axis-angle step of magnitude `rotation_rate` about a fresh
/// random axis, and moves the translation by `translation_rate` along a fresh
/// random direction.
MotionTrack make_motion_track(std::uint64_t seed, int frames, double rotation_rate,
                              double translation_rate);

/// Uniform points in the cube [-extent, extent]^3.
PointCloud3D make_point_cloud(std::uint64_t seed, int count, double extent);

struct ProjectedScene {
  TrajectoryMatrix trajectories;
  Labeling labels;
};

/// Orthographic projection x_fp = first two rows of (R_f X_p + T_f). Column
/// block k holds the trajectories of motion k and is labelled k.
ProjectedScene project_scene(const std::vector<MotionTrack>& motions,
                             const std::vector<PointCloud3D>& clouds);

/// Adds N(0, noise_sigma) to observed entries, then clears a trailing run of
/// frames on ceil(missing_rate * P) randomly chosen trajectories. The lost
/// suffix starts at a frame drawn uniformly from [F/2, F-1].
TrajectoryMatrix corrupt(const TrajectoryMatrix& w, double noise_sigma, double missing_rate,
                         std::uint64_t seed);

/// Full scene: tracks, clouds, projection and corruption, all derived from
/// config.seed.
Scene generate_scene(const SceneConfig& config);

/// Count of singular values above rel_tol * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

}  // namespace subseg::synthcam
