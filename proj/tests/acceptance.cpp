// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "oracles.hpp"
#include "subseg/metrics.hpp"
#include "subseg/neighbors.hpp"
#include "subseg/pipeline.hpp"
#include "subseg/projection.hpp"
#include "subseg/synthcam.hpp"
#include "subseg/trajectory_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace subseg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

SegmentConfig config_for(int n) {
  SegmentConfig cfg;
  cfg.n = n;
  cfg.m = 4 * n;
  return cfg;
}

void criterion1() {
  const auto start = Clock::now();
  int total = 0, ok = 0, worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (int frames : {10, 30}) {
      for (int points : {20, 60}) {
        const auto w = synthcam::project_scene(
                           {synthcam::make_motion_track(seed, frames, 0.5, 20.0)},
                           {synthcam::make_point_cloud(seed + 1000, points, 100.0)})
                           .trajectories.data;
        const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(w).singularValues();
        const int rank = static_cast<int>((s.array() > 1e-9 * s(0)).count());
        worst = std::max(worst, rank);
        ++total;
        ok += rank <= 4;
      }
    }
  }
  const double t = seconds_since(start);
  verdict(1, ok == total && t < 5.0,
          fmt("%.0f/%.0f matrices with rank <= 4 (max rank %.0f), %.2f s", ok, total, worst, t));
}

struct GpowerRuns {
  double max_angle = 0.0;
  int violations = 0;
  int runs = 0;
  int steps = 0;
};

GpowerRuns criteria2and3() {
  const auto start = Clock::now();
  GpowerRuns out;
  std::mt19937_64 rng(2024);
  for (int run = 0; run < 10; ++run) {
    const Eigen::MatrixXd w = oracle::random_matrix(60, 100, rng);
    const int m = 5;
    const auto res = projection::gpower_block(w, projection::SpcaParams::defaults(m, 0.0));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU);
    out.max_angle = std::max(
        out.max_angle, oracle::principal_angles(svd.matrixU().leftCols(m), res.loadings.Z).maxCoeff());
    const auto& trace = res.objective_trace;
    for (std::size_t k = 1; k < trace.size(); ++k) {
      // Allow only floating-point rounding of the objective evaluation itself.
      if (trace[k] < trace[k - 1] - 1e-12 * std::abs(trace[k - 1])) ++out.violations;
    }
    out.steps += static_cast<int>(trace.size()) - 1;
    ++out.runs;
  }
  const double t = seconds_since(start);
  verdict(2, out.max_angle < 1e-6 && t < 10.0,
          fmt("max principal angle %.3g rad over %.0f runs, %.2f s", out.max_angle, out.runs, t));
  verdict(3, out.violations == 0,
          fmt("%.0f objective decreases over %.0f iterations", out.violations, out.steps));
  return out;
}

void criterion4() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 10);
  double worst_gap = 0.0, worst_affine = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(rng);
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x(j) = 0.02 + 0.98 * dist(rng);
    const double sigma = x.mean();
    const double lambda = 0.1;
    const auto sol = neighbors::solve_sparse_neighbors(x, sigma, lambda);
    const Eigen::VectorXd q = oracle::proximity_weights(x, sigma);
    const auto f = [&](const Eigen::VectorXd& c) {
      return oracle::neighbor_objective(x, q, lambda, c);
    };
    const auto grid = oracle::simplex_grid_minimum(f, n, oracle::grid_resolution(n));
    worst_gap = std::max(worst_gap, std::abs(f(sol.c) - grid.objective));
    worst_affine = std::max(worst_affine, std::abs(sol.c.sum() - 1.0));
  }
  const double t = seconds_since(start);
  verdict(4, worst_gap <= 1e-4 && worst_affine < 1e-8 && t < 30.0,
          fmt("max |objective - grid minimum| %.3g, max |1'c - 1| %.3g, %.2f s", worst_gap,
              worst_affine, t));
}

struct Planted {
  Labeling truth;
  SegmentResult result;
  double error = 0.0;
};

Planted run_scene(const synthcam::SceneConfig& scene_cfg) {
  const auto scene = synthcam::generate_scene(scene_cfg);
  Planted p;
  p.truth = scene.truth;
  p.result = segment(scene.trajectories, config_for(scene_cfg.n_motions));
  p.error = metrics::misclassification(p.result.labels, scene.truth).misclassification;
  return p;
}

std::vector<Planted> criterion5() {
  const auto start = Clock::now();
  std::vector<Planted> planted;
  int zero_two = 0;
  std::vector<double> three;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synthcam::SceneConfig cfg;  // 2 motions, 60 + 60 points, 30 frames, noiseless
    cfg.seed = seed;
    planted.push_back(run_scene(cfg));
    zero_two += planted.back().error == 0.0;
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synthcam::SceneConfig cfg;
    cfg.n_motions = 3;
    cfg.noise_sigma = 0.5;
    cfg.seed = seed;
    planted.push_back(run_scene(cfg));
    three.push_back(planted.back().error);
  }
  const double t = seconds_since(start);
  const double med = 100.0 * median(three);
  verdict(5, zero_two >= 19 && med < 5.0 && t < 60.0,
          fmt("2-motion noiseless: %.0f/20 at 0%%; 3-motion sigma=0.5: median %.2f%%; %.2f s",
              zero_two, med, t));
  return planted;
}

void criterion6() {
  const auto start = Clock::now();
  std::vector<double> errors;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    synthcam::SceneConfig cfg;
    cfg.missing_rate = 0.1;
    cfg.seed = seed;
    errors.push_back(run_scene(cfg).error);
  }
  const double med = 100.0 * median(errors);
  const double mean = 100.0 * std::accumulate(errors.begin(), errors.end(), 0.0) / 20.0;
  verdict(6, med < 10.0,
          fmt("10%% truncated trajectories: median %.2f%%, mean %.2f%%, %.2f s", med, mean,
              seconds_since(start)));
}

void criterion7(const std::vector<Planted>& planted) {
  std::vector<double> ratios;
  for (const auto& p : planted) {
    const Eigen::MatrixXd& e = p.result.errors;
    const double sigma_e = p.result.affinity.sigma_e;
    double within = 0.0, cross = 0.0;
    long nw = 0, nc = 0;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      for (Eigen::Index t = 0; t < e.cols(); ++t) {
        if (i == t) continue;
        const double s = std::exp(-e(i, t) / sigma_e);
        if (p.truth.labels[i] == p.truth.labels[t]) {
          within += s;
          ++nw;
        } else {
          cross += s;
          ++nc;
        }
      }
    }
    ratios.push_back((within / nw) / (cross / nc));
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double med = median(ratios);
  verdict(7, lo >= 5.0,
          fmt("within/cross mean of exp(-e/sigma_e): min %.2f, median %.2f over %.0f scenes "
              "(target >= 5)",
              lo, med, static_cast<double>(ratios.size())));
}

void criterion8() {
  // A user-converted sequence arrives as a trajectory file; run it through
  // the same parse -> segment path the CLI uses, with no special handling.
  synthcam::SceneConfig cfg;
  cfg.n_motions = 3;
  cfg.points_per_motion = {90, 40, 25};
  cfg.frames = 24;
  cfg.noise_sigma = 0.3;
  cfg.seed = 155;
  const auto scene = synthcam::generate_scene(cfg);
  std::stringstream text;
  io::write_trajectory_file(text, {scene.trajectories, scene.truth, 3});
  bool ran = false;
  std::string note;
  try {
    const auto file = io::read_trajectory_file(text);
    auto seg_cfg = config_for(file.n);
    const auto res = segment(file.trajectories, seg_cfg);
    ran = res.labels.size() == file.trajectories.points();
    note = fmt("external-format sequence segmented (%.0f points, %.2f%% misclassified)",
               file.trajectories.points(),
               100.0 * metrics::misclassification(res.labels, *file.truth).misclassification);
  } catch (const Error& e) {
    note = std::string("pipeline rejected external-format input: ") + e.what();
  }
  verdict(8, ran,
          note + "; published benchmark tables are not reproducible here (datasets out of "
                 "scope), no numeric tolerance checked");
}

}  // namespace

int main() {
  criterion1();
  criteria2and3();
  criterion4();
  const auto planted = criterion5();
  criterion6();
  criterion7(planted);
  criterion8();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
