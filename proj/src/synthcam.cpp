#include "subseg/synthcam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace subseg::synthcam {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for sub-generator `stream` of a scene.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 1));
}

Eigen::Vector3d random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

template <typename T>
T per_motion(const std::vector<T>& values, int motion) {
  return values.size() == 1 ? values.front() : values.at(static_cast<std::size_t>(motion));
}

}  // namespace

void SceneConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("scene config: " + msg); };
  if (n_motions < 1) fail("n_motions must be >= 1 (got " + std::to_string(n_motions) + ")");
  if (frames < 3) fail("frames must be >= 3 (got " + std::to_string(frames) + ")");
  if (!(noise_sigma >= 0.0)) fail("noise_sigma must be >= 0");
  if (!(missing_rate >= 0.0 && missing_rate < 1.0)) fail("missing_rate must lie in [0, 1)");
  if (!(cloud_extent > 0.0)) fail("cloud_extent must be > 0");
  auto check_len = [&](std::size_t len, const char* field) {
    if (len != 1 && len != static_cast<std::size_t>(n_motions)) {
      fail(std::string(field) + " needs 1 or n_motions entries");
    }
  };
  check_len(points_per_motion.size(), "points_per_motion");
  check_len(rotation_rate.size(), "rotation_rate");
  check_len(translation_rate.size(), "translation_rate");
  for (int k : points_per_motion) {
    if (k < 4) fail("points_per_motion entries must be >= 4");
  }
  for (double r : rotation_rate) {
    if (!std::isfinite(r)) fail("rotation_rate must be finite");
  }
  for (double t : translation_rate) {
    if (!std::isfinite(t)) fail("translation_rate must be finite");
  }
}

int SceneConfig::points_of(int motion) const { return per_motion(points_per_motion, motion); }
double SceneConfig::rotation_rate_of(int motion) const { return per_motion(rotation_rate, motion); }
double SceneConfig::translation_rate_of(int motion) const {
  return per_motion(translation_rate, motion);
}

MotionTrack make_motion_track(std::uint64_t seed, int frames, double rotation_rate,
                              double translation_rate) {
  if (frames < 1) throw InvalidArgument("make_motion_track: frames must be >= 1");
  std::mt19937_64 rng(seed);
  MotionTrack track;
  track.rotations.reserve(static_cast<std::size_t>(frames));
  track.translations.reserve(static_cast<std::size_t>(frames));

  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  track.rotations.push_back(rotation);
  track.translations.push_back(translation);
  for (int f = 1; f < frames; ++f) {
    const Eigen::Vector3d axis = random_unit(rng);
    const Eigen::Vector3d direction = random_unit(rng);
    rotation = Eigen::AngleAxisd(rotation_rate, axis).toRotationMatrix() * rotation;
    // Re-project onto SO(3) so drift from repeated products stays at rounding level.
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(rotation, Eigen::ComputeFullU | Eigen::ComputeFullV);
    rotation = svd.matrixU() * svd.matrixV().transpose();
    translation += translation_rate * direction;
    track.rotations.push_back(rotation);
    track.translations.push_back(translation);
  }
  return track;
}

PointCloud3D make_point_cloud(std::uint64_t seed, int count, double extent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-extent, extent);
  PointCloud3D cloud;
  cloud.points.resize(3, count);
  for (int p = 0; p < count; ++p) {
    for (int r = 0; r < 3; ++r) cloud.points(r, p) = uniform(rng);
  }
  return cloud;
}

ProjectedScene project_scene(const std::vector<MotionTrack>& motions,
                             const std::vector<PointCloud3D>& clouds) {
  if (motions.size() != clouds.size()) {
    throw InvalidArgument("project_scene: motion and cloud counts differ");
  }
  if (motions.empty()) throw InvalidArgument("project_scene: no motions");
  const int frames = motions.front().frames();
  int total = 0;
  for (std::size_t k = 0; k < motions.size(); ++k) {
    if (motions[k].frames() != frames ||
        motions[k].translations.size() != motions[k].rotations.size()) {
      throw FrameMismatch("project_scene: motion " + std::to_string(k) + " has " +
                          std::to_string(motions[k].frames()) + " frames, expected " +
                          std::to_string(frames));
    }
    total += static_cast<int>(clouds[k].points.cols());
  }

  Eigen::MatrixXd w(2 * frames, total);
  ProjectedScene out;
  out.labels.n = static_cast<int>(motions.size());
  out.labels.labels.reserve(static_cast<std::size_t>(total));
  int col = 0;
  for (std::size_t k = 0; k < motions.size(); ++k) {
    const auto& pts = clouds[k].points;
    for (int f = 0; f < frames; ++f) {
      // A_f = first two rows of [R_f T_f].
      const Eigen::Matrix<double, 2, 3> r2 = motions[k].rotations[f].topRows<2>();
      const Eigen::Vector2d t2 = motions[k].translations[f].head<2>();
      w.block(2 * f, col, 2, pts.cols()) = (r2 * pts).colwise() + t2;
    }
    for (Eigen::Index p = 0; p < pts.cols(); ++p) out.labels.labels.push_back(static_cast<int>(k));
    col += static_cast<int>(pts.cols());
  }
  out.trajectories = TrajectoryMatrix(std::move(w));
  return out;
}

TrajectoryMatrix corrupt(const TrajectoryMatrix& w, double noise_sigma, double missing_rate,
                         std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("corrupt: noise_sigma must be >= 0");
  if (!(missing_rate >= 0.0 && missing_rate < 1.0)) {
    throw InvalidArgument("corrupt: missing_rate must lie in [0, 1)");
  }
  TrajectoryMatrix out = w;
  std::mt19937_64 rng(seed);
  if (noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sigma);
    for (Eigen::Index c = 0; c < out.data.cols(); ++c) {
      for (Eigen::Index r = 0; r < out.data.rows(); ++r) {
        if (out.mask(r, c)) out.data(r, c) += noise(rng);
      }
    }
  }
  const int points = out.points();
  const int frames = out.frames();
  const int lost = static_cast<int>(std::ceil(missing_rate * points - 1e-12));
  if (lost > 0 && frames >= 2) {
    std::vector<int> order(static_cast<std::size_t>(points));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::uniform_int_distribution<int> start_frame(frames / 2, frames - 1);
    for (int k = 0; k < lost; ++k) {
      const int p = order[static_cast<std::size_t>(k)];
      const int start = std::max(1, start_frame(rng));
      for (int r = 2 * start; r < 2 * frames; ++r) {
        out.mask(r, p) = false;
        out.data(r, p) = 0.0;
      }
    }
  }
  return out;
}

Scene generate_scene(const SceneConfig& config) {
  config.validate();
  Scene scene;
  for (int k = 0; k < config.n_motions; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    scene.motions.push_back(make_motion_track(derive_seed(config.seed, 2 * uk), config.frames,
                                              config.rotation_rate_of(k),
                                              config.translation_rate_of(k)));
    auto cloud = make_point_cloud(derive_seed(config.seed, 2 * uk + 1), config.points_of(k),
                                  config.cloud_extent);
    // Spread bodies apart in the image plane.
    std::mt19937_64 placement(derive_seed(config.seed, 0xB0D1E5 + uk));
    std::uniform_real_distribution<double> offset(-2.0 * config.cloud_extent,
                                                  2.0 * config.cloud_extent);
    const Eigen::Vector3d center(offset(placement), offset(placement), 0.0);
    cloud.points.colwise() += center;
    scene.clouds.push_back(std::move(cloud));
  }
  auto projected = project_scene(scene.motions, scene.clouds);
  scene.truth = std::move(projected.labels);
  scene.trajectories = corrupt(projected.trajectories, config.noise_sigma, config.missing_rate,
                               derive_seed(config.seed, 0xC0FFEE));
  return scene;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

}  // namespace subseg::synthcam
