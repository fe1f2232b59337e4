#include "svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace subseg::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 30.0;
constexpr double kLegendWidth = 150.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string cluster_color(int k) {
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  constexpr int size = static_cast<int>(std::size(palette));
  if (k < size) return palette[k];
  // Beyond the palette: spread hues with the golden angle.
  const int hue = static_cast<int>(k * 137.508) % 360;
  return "hsl(" + std::to_string(hue) + ",65%,45%)";
}

std::string scatter_svg(const std::vector<std::array<double, 2>>& points,
                        const std::vector<int>& labels, int n) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  const double plot_w = kWidth - kLegendWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double scale = std::min(plot_w, plot_h) / span;

  std::vector<int> sizes(static_cast<std::size_t>(std::max(n, 0)), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g id=\"points\">\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    // Image coordinates grow downward, as in SVG.
    const double x = kMargin + (points[i][0] - xmin) * scale;
    const double y = kMargin + (points[i][1] - ymin) * scale;
    svg << "<circle class=\"c" << labels[i] << "\" cx=\"" << num(x) << "\" cy=\"" << num(y)
        << "\" r=\"3\" fill=\"" << cluster_color(labels[i]) << "\"/>\n";
  }
  svg << "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  const double lx = kWidth - kLegendWidth;
  for (int k = 0; k < n; ++k) {
    const double ly = kMargin + 20.0 * k;
    svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\"10\" height=\"10\" fill=\""
        << cluster_color(k) << "\"/>\n"
        << "<text x=\"" << num(lx + 16) << "\" y=\"" << num(ly + 10) << "\">cluster " << k << " ("
        << sizes[static_cast<std::size_t>(k)] << ")</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace subseg::cli
