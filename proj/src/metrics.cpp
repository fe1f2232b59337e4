#include "subseg/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace subseg::metrics {

ScoreReport misclassification(const Labeling& pred, const Labeling& truth) {
  if (pred.size() != truth.size()) {
    throw LengthMismatch("misclassification: " + std::to_string(pred.size()) + " predicted vs " +
                         std::to_string(truth.size()) + " true labels");
  }
  pred.validate();
  truth.validate();
  const int n = std::max(pred.n, truth.n);
  if (n > 10) throw InvalidArgument("misclassification: more than 10 clusters");

  ScoreReport out;
  out.confusion = Eigen::MatrixXi::Zero(n, n);
  for (int p = 0; p < pred.size(); ++p) ++out.confusion(pred.labels[p], truth.labels[p]);

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  int best = -1;
  do {
    int hits = 0;
    for (int k = 0; k < n; ++k) hits += out.confusion(k, perm[k]);
    if (hits > best) {
      best = hits;
      out.best_permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const int total = pred.size();
  out.misclassification =
      total == 0 ? 0.0 : 1.0 - static_cast<double>(std::max(best, 0)) / total;
  return out;
}

namespace {

GroupSummary summarize(const std::string& group, std::vector<double> values) {
  GroupSummary s;
  s.group = group;
  s.count = static_cast<int>(values.size());
  s.mean_percent = 100.0 * std::accumulate(values.begin(), values.end(), 0.0) / s.count;
  std::sort(values.begin(), values.end());
  const auto mid = values.size() / 2;
  const double median =
      values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  s.median_percent = 100.0 * median;
  return s;
}

}  // namespace

std::vector<GroupSummary> aggregate(const std::vector<GroupedScore>& reports) {
  if (reports.empty()) throw InvalidArgument("aggregate: no reports");
  std::vector<std::string> order;
  std::vector<std::vector<double>> buckets;
  std::vector<double> all;
  for (const auto& r : reports) {
    auto it = std::find(order.begin(), order.end(), r.group);
    if (it == order.end()) {
      order.push_back(r.group);
      buckets.emplace_back();
      it = order.end() - 1;
    }
    buckets[static_cast<std::size_t>(it - order.begin())].push_back(r.misclassification);
    all.push_back(r.misclassification);
  }
  std::vector<GroupSummary> rows;
  for (std::size_t g = 0; g < order.size(); ++g) rows.push_back(summarize(order[g], buckets[g]));
  rows.push_back(summarize("All", all));
  return rows;
}

std::string format_table(const std::vector<GroupSummary>& rows) {
  std::ostringstream out;
  char line[128];
  for (const auto& r : rows) {
    out << r.group << ", " << r.count << " sequences\n";
    std::snprintf(line, sizeof(line), "   mean   %6.2f\n   median %6.2f\n", r.mean_percent,
                  r.median_percent);
    out << line;
  }
  return out.str();
}

}  // namespace subseg::metrics
