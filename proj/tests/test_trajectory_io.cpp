#include "subseg/synthcam.hpp"
#include "subseg/trajectory_io.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <sstream>

using namespace subseg;

namespace {

std::string write(const io::TrajectoryFile& f) {
  std::ostringstream out;
  io::write_trajectory_file(out, f);
  return out.str();
}

io::TrajectoryFile read(const std::string& text) {
  std::istringstream in(text);
  return io::read_trajectory_file(in);
}

}  // namespace

TEST(TrajectoryIo, FormatDoubleRoundTrips) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, -123456.789, 6.02214076e23,
                   std::numeric_limits<double>::denorm_min()}) {
    std::istringstream in("1 1 0\n0\n" + io::format_double(v) + "\n1\n1\n-\n");
    EXPECT_EQ(io::read_trajectory_file(in).trajectories.data(1, 0), v);
  }
}

TEST(TrajectoryIo, WriteParseWriteIsAFixedPoint) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    synthcam::SceneConfig c;
    c.n_motions = 1 + static_cast<int>(seed % 3);
    c.points_per_motion = {7};
    c.frames = 4 + static_cast<int>(seed);
    c.noise_sigma = 0.3;
    c.missing_rate = 0.25;
    c.seed = seed;
    const auto scene = synthcam::generate_scene(c);
    io::TrajectoryFile file{scene.trajectories, scene.truth, scene.truth.n};

    const std::string first = write(file);
    const auto parsed = read(first);
    EXPECT_EQ(parsed.trajectories.data, scene.trajectories.data);
    EXPECT_EQ(parsed.trajectories.mask, scene.trajectories.mask);
    ASSERT_TRUE(parsed.truth);
    EXPECT_EQ(parsed.truth->labels, scene.truth.labels);
    EXPECT_EQ(parsed.n, scene.truth.n);
    EXPECT_EQ(write(parsed), first);
  }
}

TEST(TrajectoryIo, LayoutMatchesFormat) {
  Eigen::MatrixXd w(2, 3);
  w << 1, 2.5, -3, 4, 5, 6;
  BoolMatrix mask = BoolMatrix::Constant(2, 3, true);
  mask(1, 2) = false;
  io::TrajectoryFile file{TrajectoryMatrix(w, mask), Labeling{{0, 1, 1}, 2}, 2};
  EXPECT_EQ(write(file), "1 3 2\n1 2.5 -3\n4 5 0\n1 1 1\n1 1 0\n0 1 1\n");
}

TEST(TrajectoryIo, MissingLabelsUseDash) {
  io::TrajectoryFile file{TrajectoryMatrix(Eigen::MatrixXd::Ones(4, 2)), std::nullopt, 3};
  const auto text = write(file);
  EXPECT_EQ(text.substr(0, 6), "2 2 3\n");
  EXPECT_EQ(text.substr(text.size() - 2), "-\n");
  const auto parsed = read(text);
  EXPECT_FALSE(parsed.truth);
  EXPECT_EQ(parsed.n, 3);
}

TEST(TrajectoryIo, MalformedInputsRaiseParseError) {
  EXPECT_THROW(read(""), ParseError);
  EXPECT_THROW(read("1 2\n"), ParseError);
  EXPECT_THROW(read("1 2 1\n1 2\n3\n1 1\n1 1\n0 0\n"), ParseError);        // short row
  EXPECT_THROW(read("1 2 1\n1 2\n3 x\n1 1\n1 1\n0 0\n"), ParseError);      // bad number
  EXPECT_THROW(read("1 2 1\n1 2\n3 4\n1 2\n1 1\n0 0\n"), ParseError);      // bad mask bit
  EXPECT_THROW(read("1 2 1\n1 2\n3 4\n1 1\n1 1\n0 1\n"), ParseError);      // label >= n
  EXPECT_THROW(read("1 2 1\n1 2\n3 4\n1 1\n1 1\n"), ParseError);           // no label row
  EXPECT_THROW(read("0 2 1\n"), ParseError);
}

TEST(TrajectoryIo, LabelsFileRoundTrip) {
  Labeling l{{2, 0, 1, 1}, 3};
  std::stringstream ss;
  io::write_labels(ss, l);
  EXPECT_EQ(ss.str(), "2\n0\n1\n1\n");
  const auto back = io::read_labels(ss);
  EXPECT_EQ(back.labels, l.labels);
  EXPECT_EQ(back.n, 3);

  std::istringstream bad("1\n-2\n");
  EXPECT_THROW(io::read_labels(bad), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(io::read_labels(empty), ParseError);
}
