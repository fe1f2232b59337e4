#include "subseg/pipeline.hpp"

#include "subseg/subspace_error.hpp"

#include <algorithm>
#include <chrono>

namespace subseg {

const char* to_string(Projector p) { return p == Projector::pca ? "pca" : "spca"; }

Projector projector_from_string(const std::string& name) {
  if (name == "pca") return Projector::pca;
  if (name == "spca") return Projector::spca;
  throw InvalidArgument("projector must be 'pca' or 'spca' (got '" + name + "')");
}

void SegmentConfig::validate(const TrajectoryMatrix& w) const {
  auto fail = [](const std::string& msg) { throw InvalidArgument("segment config: " + msg); };
  const int points = w.points();
  if (points < 2) fail("need at least two trajectories");
  if (n < 1 || n > points) fail("n must lie in [1, P]");
  if (m < 1 || m > std::min(2 * w.frames(), points)) fail("m must lie in [1, min(2F, P)]");
  if (!(gamma >= 0.0)) fail("gamma must be >= 0");
  if (neighbors.search_size < 2) fail("neighbors must be >= 2");
  if (!(neighbors.lambda >= 0.0)) fail("lambda must be >= 0");
  if (neighbors.sigma && !(*neighbors.sigma > 0.0)) fail("sigma must be > 0");
  if (!(rank_tol > 0.0 && rank_tol < 1.0)) fail("rank_tol must lie in (0, 1)");
  if (affinity.sigma_e && !(*affinity.sigma_e > 0.0)) fail("sigma_e must be > 0");
  if (kmeans_restarts < 1) fail("kmeans_restarts must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json timings = nlohmann::json::array();
  for (const auto& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
  nlohmann::json first = nlohmann::json::array();
  for (const auto& xy : r.first_frame) first.push_back({xy[0], xy[1]});
  return {
      {"timings", timings},
      {"projection",
       {{"projector", r.projector},
        {"m", r.m},
        {"rank_deficient", r.rank_deficient},
        {"gpower_iterations", r.gpower_iterations},
        {"gpower_converged", r.gpower_converged},
        {"gpower_objective", r.gpower_objective},
        {"active_pattern", r.active_pattern}}},
      {"neighbors",
       {{"rows", r.solver.rows},
        {"max_iterations", r.solver.max_iterations},
        {"mean_iterations", r.solver.mean_iterations},
        {"max_primal_residual", r.solver.max_primal_residual},
        {"max_dual_residual", r.solver.max_dual_residual},
        {"mean_support", r.solver.mean_support},
        {"stalled_rows", r.solver.stalled_rows},
        {"zero_weight_rows", r.zero_weight_rows}}},
      {"local_ranks", r.local_ranks},
      {"affinity", {{"sigma_e", r.sigma_e}, {"components", r.components}}},
      {"eigenvalues", r.eigenvalues},
      {"n", r.n},
      {"labels", r.labels},
      {"first_frame", first},
      {"warnings", r.warnings},
  };
}

namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}
  void lap(const char* stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({stage, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

SegmentResult segment(const TrajectoryMatrix& w, const SegmentConfig& config) {
  config.validate(w);
  SegmentResult out;
  RunReport& report = out.report;
  StageClock clock(report.timings);
  const Eigen::MatrixXd& data = w.data;

  report.projector = to_string(config.projector);
  report.m = config.m;
  if (config.projector == Projector::pca) {
    auto pca = projection::pca_project(data, config.m);
    report.rank_deficient = pca.rank_deficient;
    out.global = std::move(pca.subspace);
  } else {
    auto params = projection::SpcaParams::defaults(config.m, config.gamma);
    auto gp = projection::gpower_block(data, params);
    report.gpower_iterations = gp.iterations;
    report.gpower_converged = gp.converged;
    report.gpower_objective = gp.objective_trace.back();
    report.active_pattern = static_cast<int>(gp.loadings.pattern.count());
    if (!gp.converged) report.warnings.push_back("sparse PCA reached max_iter before converging");
    out.global = projection::assemble_global(data, gp.loadings);
  }
  if (report.rank_deficient) {
    report.warnings.push_back("trajectory matrix has fewer than m nonzero singular values");
  }
  clock.lap("projection");

  const auto nsi = neighbors::nsi_matrix(out.global);
  auto sparse = neighbors::sparse_neighbors(nsi, config.neighbors, config.threads);
  out.omega = neighbors::weight_matrix(sparse.C, nsi.distance);
  clock.lap("neighbors");

  SolverSummary& s = report.solver;
  s.rows = static_cast<int>(sparse.stats.size());
  double support = 0.0, iters = 0.0;
  for (std::size_t i = 0; i < sparse.stats.size(); ++i) {
    const auto& st = sparse.stats[i];
    s.max_iterations = std::max(s.max_iterations, st.iterations);
    s.max_primal_residual = std::max(s.max_primal_residual, st.primal_residual);
    s.max_dual_residual = std::max(s.max_dual_residual, st.dual_residual);
    iters += st.iterations;
    support += static_cast<double>((st.c.array() != 0.0).count());
    if (st.stalled) s.stalled_rows.push_back(static_cast<int>(i));
    if (out.omega.row(static_cast<Eigen::Index>(i)).isZero(0.0)) {
      report.zero_weight_rows.push_back(static_cast<int>(i));
    }
  }
  s.mean_iterations = iters / std::max(s.rows, 1);
  s.mean_support = support / std::max(s.rows, 1);
  if (!s.stalled_rows.empty()) {
    report.warnings.push_back(std::to_string(s.stalled_rows.size()) +
                              " neighbor rows stalled; last iterates used");
  }

  const auto locals =
      subspace_error::local_subspaces(out.global, out.omega, config.rank_tol, config.threads);
  for (const auto& l : locals) report.local_ranks.push_back(l.rank);
  out.errors = subspace_error::error_matrix(locals, out.global, config.threads);
  clock.lap("subspace_error");

  out.affinity = clustering::build_affinity(out.omega, out.errors, config.affinity);
  report.sigma_e = out.affinity.sigma_e;
  report.components = out.affinity.components;
  const auto laplacian = clustering::normalized_laplacian(out.affinity.A);
  const auto embedding = clustering::spectral_embed(laplacian, config.n);
  report.eigenvalues.assign(embedding.eigenvalues.data(),
                            embedding.eigenvalues.data() + embedding.eigenvalues.size());
  auto km = clustering::kmeans(embedding.U, config.n, config.kmeans_restarts, config.seed);
  out.labels = std::move(km.labels);
  clock.lap("clustering");

  report.n = out.labels.n;
  report.labels = out.labels.labels;
  report.first_frame.reserve(static_cast<std::size_t>(w.points()));
  for (int p = 0; p < w.points(); ++p) report.first_frame.push_back({data(0, p), data(1, p)});
  return out;
}

}  // namespace subseg
