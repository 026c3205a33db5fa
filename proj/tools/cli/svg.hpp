#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace goldilocks::cli {

/// Rect-grid heatmap with a linear diverging color scale over [-1, 1];
/// rows of `values` follow `x` (plotted on log10 x-axis), columns
/// follow `y` (linear y-axis).
void write_heatmap_svg(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const Eigen::MatrixXd& values,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title);

struct CurveSeries {
  std::string name;
  std::string color;
  std::vector<double> y;
};

/// Polyline plot of one or more series over a shared log10 x-axis.
void write_curve_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<CurveSeries>& series,
                     const std::string& x_label, const std::string& title);

}  // namespace goldilocks::cli
