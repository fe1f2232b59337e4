#pragma once

// Scatter plot of first-frame feature positions colored by cluster.

#include <array>
#include <string>
#include <vector>

namespace subseg::cli {

/// Fill color of cluster k; distinct for the first 10 clusters.
std::string cluster_color(int k);

/// Complete SVG document with one circle per point and a legend row per
/// cluster giving its size. `labels` and `points` must have equal length.
std::string scatter_svg(const std::vector<std::array<double, 2>>& points,
                        const std::vector<int>& labels, int n);

}  // namespace subseg::cli
