#include "subseg/trajectory_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace subseg::io {
namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return tokens;
}

// Next line that is not blank.
std::vector<std::string> next_row(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = split_tokens(line);
    if (!tokens.empty()) return tokens;
  }
  throw ParseError(std::string("trajectory file: unexpected end of input while reading ") + what);
}

double parse_double(const std::string& tok) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError("invalid number '" + tok + "'");
  return value;
}

long parse_int(const std::string& tok) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid integer '" + tok + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_trajectory_file(std::ostream& out, const TrajectoryFile& file) {
  const auto& w = file.trajectories;
  const int n = file.truth ? file.truth->n : file.n;
  out << w.frames() << ' ' << w.points() << ' ' << n << '\n';
  for (Eigen::Index r = 0; r < w.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.data.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(w.data(r, c));
    }
    out << '\n';
  }
  for (Eigen::Index r = 0; r < w.mask.rows(); ++r) {
    for (Eigen::Index c = 0; c < w.mask.cols(); ++c) {
      if (c) out << ' ';
      out << (w.mask(r, c) ? '1' : '0');
    }
    out << '\n';
  }
  if (file.truth) {
    for (std::size_t p = 0; p < file.truth->labels.size(); ++p) {
      if (p) out << ' ';
      out << file.truth->labels[p];
    }
    out << '\n';
  } else {
    out << "-\n";
  }
}

TrajectoryFile read_trajectory_file(std::istream& in) {
  const auto header = next_row(in, "header");
  if (header.size() != 3) throw ParseError("trajectory file: header must be 'F P n'");
  const long frames = parse_int(header[0]);
  const long points = parse_int(header[1]);
  const long n = parse_int(header[2]);
  if (frames < 1 || points < 1 || n < 0) {
    throw ParseError("trajectory file: header values out of range");
  }
  const long rows = 2 * frames;

  Eigen::MatrixXd data(rows, points);
  for (long r = 0; r < rows; ++r) {
    const auto row = next_row(in, "data rows");
    if (static_cast<long>(row.size()) != points) {
      throw ParseError("trajectory file: data row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " values, expected " +
                       std::to_string(points));
    }
    for (long c = 0; c < points; ++c) data(r, c) = parse_double(row[static_cast<std::size_t>(c)]);
  }
  BoolMatrix mask(rows, points);
  for (long r = 0; r < rows; ++r) {
    const auto row = next_row(in, "mask rows");
    if (static_cast<long>(row.size()) != points) {
      throw ParseError("trajectory file: mask row " + std::to_string(r) + " has wrong length");
    }
    for (long c = 0; c < points; ++c) {
      const auto& bit = row[static_cast<std::size_t>(c)];
      if (bit != "0" && bit != "1") throw ParseError("trajectory file: mask bit '" + bit + "'");
      mask(r, c) = bit == "1";
    }
  }

  TrajectoryFile file;
  file.n = static_cast<int>(n);
  const auto label_row = next_row(in, "label row");
  if (!(label_row.size() == 1 && label_row[0] == "-")) {
    if (static_cast<long>(label_row.size()) != points) {
      throw ParseError("trajectory file: label row has wrong length");
    }
    Labeling truth;
    truth.n = static_cast<int>(n);
    for (const auto& tok : label_row) truth.labels.push_back(static_cast<int>(parse_int(tok)));
    try {
      truth.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("trajectory file: ") + e.what());
    }
    file.truth = std::move(truth);
  }
  try {
    file.trajectories = TrajectoryMatrix(std::move(data), std::move(mask));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("trajectory file: ") + e.what());
  }
  return file;
}

void save_trajectory_file(const std::filesystem::path& path, const TrajectoryFile& file) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_trajectory_file(out, file);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

TrajectoryFile load_trajectory_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return read_trajectory_file(in);
}

void write_labels(std::ostream& out, const Labeling& labels) {
  for (int label : labels.labels) out << label << '\n';
}

Labeling read_labels(std::istream& in, std::optional<int> n) {
  std::vector<int> values;
  for (std::string tok; in >> tok;) values.push_back(static_cast<int>(parse_int(tok)));
  if (values.empty()) throw ParseError("label file: no labels");
  if (*std::min_element(values.begin(), values.end()) < 0) {
    throw ParseError("label file: negative label");
  }
  Labeling out;
  out.n = n.value_or(*std::max_element(values.begin(), values.end()) + 1);
  out.labels = std::move(values);
  try {
    out.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("label file: ") + e.what());
  }
  return out;
}

}  // namespace subseg::io
