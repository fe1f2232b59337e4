#pragma once

// Plain-text trajectory and label files.
//
// Trajectory file layout:
//   F P n
//   2F lines of P decimals     (row-major W)
//   2F lines of P mask bits    (1 = observed)
//   one line of P labels, or "-" when no ground truth is stored

#include "subseg/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace subseg::io {

struct TrajectoryFile {
  TrajectoryMatrix trajectories;
  std::optional<Labeling> truth;
  /// Cluster count from the header; equals truth->n when labels are present.
  int n = 0;
};

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

void write_trajectory_file(std::ostream& out, const TrajectoryFile& file);
/// Throws ParseError on malformed input.
TrajectoryFile read_trajectory_file(std::istream& in);

void save_trajectory_file(const std::filesystem::path& path, const TrajectoryFile& file);
TrajectoryFile load_trajectory_file(const std::filesystem::path& path);

/// One label per line.
void write_labels(std::ostream& out, const Labeling& labels);
/// Reads one label per line; n is inferred as max + 1 unless `n` is given.
Labeling read_labels(std::istream& in, std::optional<int> n = std::nullopt);

}  // namespace subseg::io
