#include "cli.hpp"

#include "svg.hpp"

#include "subseg/metrics.hpp"
#include "subseg/pipeline.hpp"
#include "subseg/synthcam.hpp"
#include "subseg/trajectory_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace subseg::cli {

namespace {

/// A failure that maps directly to an exit code.
struct CommandError {
  ExitCode code;
  std::string message;
};

std::optional<double> parse_auto_or_positive(const std::string& flag, const std::string& text) {
  if (text == "auto") return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !(value > 0.0)) {
    throw CommandError{kConfigError, flag + " must be 'auto' or a positive number (got '" + text +
                                         "')"};
  }
  return value;
}

/// Writes through `write` to a file, or to `out` when the path is "-".
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw CommandError{kConfigError, "cannot write '" + path + "'"};
  write(file);
  if (!file) throw CommandError{kConfigError, "failed writing '" + path + "'"};
}

io::TrajectoryFile load_input(const std::string& path) {
  try {
    if (path == "-") return io::read_trajectory_file(std::cin);
    return io::load_trajectory_file(path);
  } catch (const ParseError& e) {
    throw CommandError{kParseError, path + ": " + e.what()};
  }
}

// ---- generate --------------------------------------------------------------

struct GenerateOptions {
  synthcam::SceneConfig scene;
  std::string out = "-";
};

void add_generate(CLI::App& app, GenerateOptions& o) {
  auto* cmd = app.add_subcommand("generate", "Synthesize a multi-body trajectory file");
  cmd->add_option("--n-motions", o.scene.n_motions, "Number of rigid motions")->capture_default_str();
  cmd->add_option("--points", o.scene.points_per_motion,
                  "Points per motion (one value, or one per motion)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--frames", o.scene.frames, "Frame count F")->capture_default_str();
  cmd->add_option("--rotation-rate", o.scene.rotation_rate, "Radians per frame, per motion")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--translation-rate", o.scene.translation_rate, "World units per frame, per motion")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--extent", o.scene.cloud_extent, "Half-width of each point cloud")
      ->capture_default_str();
  cmd->add_option("--noise", o.scene.noise_sigma, "Pixel noise standard deviation")
      ->capture_default_str();
  cmd->add_option("--missing", o.scene.missing_rate, "Fraction of truncated trajectories")
      ->capture_default_str();
  cmd->add_option("--seed", o.scene.seed, "Random seed")->capture_default_str();
  cmd->add_option("-o,--out", o.out, "Output trajectory file ('-' for stdout)")
      ->capture_default_str();
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  try {
    o.scene.validate();
  } catch (const InvalidArgument& e) {
    throw CommandError{kConfigError, e.what()};
  }
  const auto scene = synthcam::generate_scene(o.scene);
  io::TrajectoryFile file{scene.trajectories, scene.truth, scene.truth.n};
  emit(o.out, out, [&](std::ostream& s) { io::write_trajectory_file(s, file); });
  return kOk;
}

// ---- segment ---------------------------------------------------------------

struct SegmentOptions {
  std::string input;
  std::optional<int> n;
  std::string projector = "spca";
  int m = 5;
  double gamma = 0.01;
  int search_size = 20;
  double lambda = 0.1;
  std::string sigma = "auto";
  std::string sigma_e = "auto";
  bool raw_error = false;
  double rank_tol = 1e-6;
  int restarts = 10;
  std::uint64_t seed = 0;
  std::string labels = "-";
  std::string report;
};

void add_segment(CLI::App& app, SegmentOptions& o) {
  auto* cmd = app.add_subcommand("segment", "Segment the trajectories of a file into motions");
  cmd->add_option("input", o.input, "Trajectory file ('-' for stdin)")->required();
  cmd->add_option("--n", o.n, "Number of motions (default: the file header)");
  cmd->add_option("--projector", o.projector, "Global projection: spca or pca")
      ->check(CLI::IsMember({"spca", "pca"}))
      ->capture_default_str();
  cmd->add_option("--m", o.m, "Global subspace dimension")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Sparsity level of every sparse PCA component")
      ->capture_default_str();
  cmd->add_option("--neighbors", o.search_size, "Search area size T")->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "L1 weight of the neighbor problem")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Proximity bandwidth: auto or a positive value")
      ->capture_default_str();
  cmd->add_option("--sigma-e", o.sigma_e, "Error bandwidth: auto or a positive value")
      ->capture_default_str();
  cmd->add_flag("--affinity-raw-error", o.raw_error, "Add raw errors instead of exp(-e/sigma_e)");
  cmd->add_option("--rank-tol", o.rank_tol, "Relative singular value cutoff of local subspaces")
      ->capture_default_str();
  cmd->add_option("--restarts", o.restarts, "k-means restarts")->capture_default_str();
  cmd->add_option("--seed", o.seed, "k-means seed")->capture_default_str();
  cmd->add_option("--labels", o.labels, "Output labels file ('-' for stdout)")
      ->capture_default_str();
  cmd->add_option("--report", o.report, "Output JSON report file");
}

int cmd_segment(const SegmentOptions& o, int threads, std::ostream& out, std::ostream& err) {
  SegmentConfig cfg;
  cfg.projector = projector_from_string(o.projector);
  cfg.m = o.m;
  cfg.gamma = o.gamma;
  cfg.neighbors.search_size = o.search_size;
  cfg.neighbors.lambda = o.lambda;
  cfg.neighbors.sigma = parse_auto_or_positive("--sigma", o.sigma);
  cfg.affinity.sigma_e = parse_auto_or_positive("--sigma-e", o.sigma_e);
  cfg.affinity.raw_error = o.raw_error;
  cfg.rank_tol = o.rank_tol;
  cfg.kmeans_restarts = o.restarts;
  cfg.seed = o.seed;
  cfg.threads = threads;

  const auto file = load_input(o.input);
  cfg.n = o.n.value_or(file.n);
  try {
    cfg.validate(file.trajectories);
  } catch (const InvalidArgument& e) {
    throw CommandError{kConfigError, e.what()};
  }

  SegmentResult result;
  try {
    result = segment(file.trajectories, cfg);
  } catch (const Error& e) {
    throw CommandError{kPipelineError, std::string("segmentation failed: ") + e.what()};
  }
  for (const auto& w : result.report.warnings) err << "warning: " << w << '\n';

  emit(o.labels, out, [&](std::ostream& s) { io::write_labels(s, result.labels); });
  if (!o.report.empty()) {
    emit(o.report, out, [&](std::ostream& s) { s << to_json(result.report).dump(2) << '\n'; });
  }
  return kOk;
}

// ---- eval ------------------------------------------------------------------

struct EvalOptions {
  std::string truth;
  std::string labels;
};

void add_eval(CLI::App& app, EvalOptions& o) {
  auto* cmd = app.add_subcommand("eval", "Score a labels file against a trajectory file's truth");
  cmd->add_option("truth", o.truth, "Trajectory file with ground-truth labels")->required();
  cmd->add_option("labels", o.labels, "Predicted labels, one per line")->required();
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  const auto file = load_input(o.truth);
  if (!file.truth) throw CommandError{kParseError, o.truth + ": no ground-truth labels stored"};
  Labeling pred;
  {
    std::ifstream in(o.labels);
    if (!in) throw CommandError{kParseError, "cannot open '" + o.labels + "'"};
    try {
      pred = io::read_labels(in);
    } catch (const ParseError& e) {
      throw CommandError{kParseError, o.labels + ": " + e.what()};
    }
  }
  metrics::ScoreReport score;
  try {
    score = metrics::misclassification(pred, *file.truth);
  } catch (const Error& e) {
    throw CommandError{kParseError, e.what()};
  }
  char line[64];
  std::snprintf(line, sizeof(line), "misclassification %.6f (%.2f%%)\n", score.misclassification,
                100.0 * score.misclassification);
  out << line << "matching";
  for (std::size_t k = 0; k < score.best_permutation.size(); ++k) {
    out << ' ' << k << "->" << score.best_permutation[k];
  }
  out << "\nconfusion (rows predicted, columns true)\n";
  for (Eigen::Index r = 0; r < score.confusion.rows(); ++r) {
    for (Eigen::Index c = 0; c < score.confusion.cols(); ++c) {
      out << (c ? " " : "") << score.confusion(r, c);
    }
    out << '\n';
  }
  return kOk;
}

// ---- report ----------------------------------------------------------------

struct ReportOptions {
  std::string report;
  std::string out = "-";
};

void add_report(CLI::App& app, ReportOptions& o) {
  auto* cmd = app.add_subcommand("report", "Plot a segmentation report as an SVG scatter");
  cmd->add_option("report", o.report, "JSON report written by 'segment --report'")->required();
  cmd->add_option("-o,--out", o.out, "Output SVG file ('-' for stdout)")->capture_default_str();
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
  std::ifstream in(o.report);
  if (!in) throw CommandError{kParseError, "cannot open '" + o.report + "'"};
  const auto bad = [&](const std::string& why) {
    return CommandError{kParseError, o.report + ": " + why};
  };
  std::vector<int> labels;
  std::vector<std::array<double, 2>> points;
  int n = 0;
  try {
    const auto doc = nlohmann::json::parse(in);
    if (!doc.is_object() || !doc.contains("labels") || !doc.contains("first_frame") ||
        !doc.contains("n")) {
      throw bad("report lacks labels, n or first_frame");
    }
    labels = doc.at("labels").get<std::vector<int>>();
    points = doc.at("first_frame").get<std::vector<std::array<double, 2>>>();
    n = doc.at("n").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw bad(e.what());
  }
  if (labels.empty()) throw bad("report holds no labels");
  if (labels.size() != points.size()) throw bad("labels and first_frame differ in length");
  if (n < 1 || std::any_of(labels.begin(), labels.end(), [&](int l) { return l < 0 || l >= n; })) {
    throw bad("labels outside [0, n)");
  }
  emit(o.out, out, [&](std::ostream& s) { s << scatter_svg(points, labels, n); });
  return kOk;
}

}  // namespace

int thread_budget(const std::optional<std::string>& env_value) {
  const int hardware = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (!env_value) return hardware;
  int cap = 0;
  const auto& s = *env_value;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc() || end != s.data() + s.size() || cap < 1) {
    throw InvalidArgument("SUBSEG_THREADS must be a positive integer (got '" + s + "')");
  }
  return std::min(cap, hardware);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Motion segmentation of feature trajectories by sparse subspace selection", "subseg"};
  app.require_subcommand(1);
  GenerateOptions gen;
  SegmentOptions seg;
  EvalOptions ev;
  ReportOptions rep;
  add_generate(app, gen);
  add_segment(app, seg);
  add_eval(app, ev);
  add_report(app, rep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (app.got_subcommand("generate")) return cmd_generate(gen, out);
    if (app.got_subcommand("eval")) return cmd_eval(ev, out);
    if (app.got_subcommand("report")) return cmd_report(rep, out);
    const char* env = std::getenv("SUBSEG_THREADS");
    int threads = 1;
    try {
      threads = thread_budget(env ? std::optional<std::string>(env) : std::nullopt);
    } catch (const InvalidArgument& e) {
      throw CommandError{kConfigError, e.what()};
    }
    return cmd_segment(seg, threads, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPipelineError;
  }
}

}  // namespace subseg::cli
