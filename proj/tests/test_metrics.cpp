#include "subseg/metrics.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace subseg;
using namespace subseg::metrics;

TEST(Misclassification, SinglePointOff) {
  const auto r = misclassification(Labeling{{0, 0, 1, 1}, 2}, Labeling{{0, 1, 1, 1}, 2});
  EXPECT_DOUBLE_EQ(r.misclassification, 0.25);
  EXPECT_EQ(r.best_permutation, (std::vector<int>{0, 1}));
  Eigen::MatrixXi expected(2, 2);
  expected << 1, 1, 0, 2;
  EXPECT_EQ(r.confusion, expected);
}

TEST(Misclassification, InvariantToLabelRenaming) {
  const Labeling truth{{0, 0, 1, 1, 2, 2, 2}, 3};
  const Labeling renamed{{2, 2, 0, 0, 1, 1, 1}, 3};
  const auto r = misclassification(renamed, truth);
  EXPECT_DOUBLE_EQ(r.misclassification, 0.0);
  EXPECT_EQ(r.best_permutation, (std::vector<int>{1, 2, 0}));
}

TEST(Misclassification, SymmetricAndBoundedOnRandomLabelings) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4;
    std::uniform_int_distribution<int> pick(0, n - 1);
    Labeling a{{}, n}, b{{}, n};
    for (int p = 0; p < 30; ++p) {
      a.labels.push_back(pick(rng));
      b.labels.push_back(pick(rng));
    }
    const double ab = misclassification(a, b).misclassification;
    EXPECT_DOUBLE_EQ(ab, misclassification(b, a).misclassification);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0 - 1.0 / n + 1e-12);  // some bijection matches at least 1/n of the points
    EXPECT_DOUBLE_EQ(misclassification(a, a).misclassification, 0.0);
  }
}

TEST(Misclassification, DifferentClusterCounts) {
  const auto r = misclassification(Labeling{{0, 1, 2, 2}, 3}, Labeling{{0, 0, 1, 1}, 2});
  EXPECT_DOUBLE_EQ(r.misclassification, 0.25);
  EXPECT_EQ(r.confusion.rows(), 3);
}

TEST(Misclassification, RejectsMismatchedOrOversizedInputs) {
  EXPECT_THROW(misclassification(Labeling{{0, 1}, 2}, Labeling{{0, 1, 1}, 2}), LengthMismatch);
  EXPECT_THROW(misclassification(Labeling{{0, 10}, 11}, Labeling{{0, 1}, 2}), InvalidArgument);
  EXPECT_THROW(misclassification(Labeling{{0, 3}, 2}, Labeling{{0, 1}, 2}), InvalidArgument);
}

TEST(Aggregate, MeanAndMedianInPercent) {
  const auto rows = aggregate({{"Two", 0.0}, {"Two", 0.0}, {"Two", 0.03}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].group, "Two");
  EXPECT_EQ(rows[0].count, 3);
  EXPECT_NEAR(rows[0].mean_percent, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rows[0].median_percent, 0.0);
  EXPECT_EQ(rows[1].group, "All");
}

TEST(Aggregate, GroupsInOrderOfAppearanceWithEvenMedian) {
  const auto rows =
      aggregate({{"Three", 0.1}, {"Two", 0.0}, {"Three", 0.3}, {"Two", 0.02}});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].group, "Three");
  EXPECT_NEAR(rows[0].median_percent, 20.0, 1e-12);
  EXPECT_EQ(rows[1].group, "Two");
  EXPECT_NEAR(rows[1].median_percent, 1.0, 1e-12);
  EXPECT_EQ(rows[2].count, 4);
  EXPECT_NEAR(rows[2].mean_percent, 10.5, 1e-12);
  EXPECT_THROW(aggregate({}), InvalidArgument);
}

TEST(FormatTable, ListsEveryGroup) {
  const auto text = format_table(aggregate({{"Two", 0.0}, {"Two", 0.03}}));
  EXPECT_NE(text.find("Two, 2 sequences"), std::string::npos);
  EXPECT_NE(text.find("All, 2 sequences"), std::string::npos);
  EXPECT_NE(text.find("mean     1.50"), std::string::npos);
}
