#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace goldilocks::cli {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 620;
constexpr int kMarginL = 70, kMarginR = 30, kMarginT = 40, kMarginB = 50;

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::ofstream open_svg(const std::string& path, const std::string& title) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open SVG output '" + path + "'");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"16\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">"
      << title << "</text>\n";
  return out;
}

// diverging blue - white - red over [-1, 1]
std::string diverging_color(double v) {
  v = std::clamp(v, -1.0, 1.0);
  int r = 255, g = 255, b = 255;
  if (v >= 0.0) {
    g = b = static_cast<int>(std::lround(255.0 * (1.0 - v)));
  } else {
    r = g = static_cast<int>(std::lround(255.0 * (1.0 + v)));
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

void write_heatmap_svg(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const Eigen::MatrixXd& values,
                       const std::string& x_label, const std::string& y_label,
                       const std::string& title) {
  std::ofstream out = open_svg(path, title);
  const int pw = kWidth - kMarginL - kMarginR;
  const int ph = kHeight - kMarginT - kMarginB;
  const std::size_t nx = x.size(), ny = y.size();
  const double cw = static_cast<double>(pw) / static_cast<double>(nx);
  const double ch = static_cast<double>(ph) / static_cast<double>(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double px = kMarginL + cw * static_cast<double>(i);
      // y axis grows upward
      const double py = kMarginT + ph - ch * static_cast<double>(j + 1);
      out << "<rect x=\"" << fmt(px) << "\" y=\"" << fmt(py) << "\" width=\""
          << fmt(cw + 0.5) << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\""
          << diverging_color(values(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j)))
          << "\"/>\n";
    }
  }
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMarginL << "\" y=\"" << kHeight - 12
      << "\" font-size=\"12\" font-family=\"sans-serif\">" << x_label << ": "
      << fmt(x.front()) << " .. " << fmt(x.back()) << " (log)</text>\n";
  out << "<text x=\"" << kWidth - kMarginR << "\" y=\"" << kHeight - 12
      << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
      << y_label << ": " << fmt(y.front()) << " .. " << fmt(y.back()) << "</text>\n";
  out << "</svg>\n";
}

void write_curve_svg(const std::string& path, const std::vector<double>& x,
                     const std::vector<CurveSeries>& series,
                     const std::string& x_label, const std::string& title) {
  std::ofstream out = open_svg(path, title);
  const int pw = kWidth - kMarginL - kMarginR;
  const int ph = kHeight - kMarginT - kMarginB;

  double ymin = 0.0, ymax = 0.0;
  for (const auto& s : series) {
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (ymax == ymin) ymax = ymin + 1.0;
  const double x0 = std::log10(x.front());
  const double x1 = std::log10(x.back());

  const auto px = [&](double xv) {
    return kMarginL + pw * (std::log10(xv) - x0) / (x1 - x0);
  };
  const auto py = [&](double yv) {
    return kMarginT + ph * (1.0 - (yv - ymin) / (ymax - ymin));
  };

  // zero line
  if (ymin < 0.0 && ymax > 0.0) {
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\""
        << kMarginL + pw << "\" y2=\"" << fmt(py(0.0))
        << "\" stroke=\"#cccccc\"/>\n";
  }
  int legend_y = kMarginT + 16;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
      out << fmt(px(x[i])) << "," << fmt(py(s.y[i])) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << kMarginL + 10 << "\" y=\"" << legend_y
        << "\" font-size=\"12\" fill=\"" << s.color
        << "\" font-family=\"sans-serif\">" << s.name << "</text>\n";
    legend_y += 16;
  }
  out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMarginL << "\" y=\"" << kHeight - 12
      << "\" font-size=\"12\" font-family=\"sans-serif\">" << x_label << ": "
      << fmt(x.front()) << " .. " << fmt(x.back()) << " (log), y: " << fmt(ymin)
      << " .. " << fmt(ymax) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace goldilocks::cli
