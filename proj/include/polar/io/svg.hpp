#pragma once

// Bare-bones SVG line chart for index profiles: one polyline per series,
// axes with min/max labels. Plain text output, no styling beyond colour.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace polar::io {

struct Series {
  std::string label;
  std::vector<double> y;
};

inline std::string svg_line_chart(const std::vector<double>& x, const std::vector<Series>& series,
                                  const std::string& title) {
  constexpr double W = 640, H = 400, M = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  double x0 = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
  double x1 = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
  double y0 = 1.0, y1 = 0.0;
  for (const auto& s : series) {
    for (double v : s.y) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1e-3;
  auto px = [&](double v) { return M + (v - x0) / (x1 - x0) * (W - 2 * M); };
  auto py = [&](double v) { return H - M - (v - y0) / (y1 - y0) * (H - 2 * M); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << M << "\" y=\"20\">" << title << "</text>\n";
  out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
      << "\" stroke=\"black\"/>\n";
  for (double v : x) {
    out << "<text x=\"" << px(v) << "\" y=\"" << H - M + 16 << "\" text-anchor=\"middle\">"
        << num(v) << "</text>\n";
  }
  out << "<text x=\"" << M - 4 << "\" y=\"" << py(y0) << "\" text-anchor=\"end\">" << num(y0)
      << "</text>\n";
  out << "<text x=\"" << M - 4 << "\" y=\"" << py(y1) << "\" text-anchor=\"end\">" << num(y1)
      << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % (sizeof kColors / sizeof *kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
      out << (i ? " " : "") << px(x[i]) << ',' << py(series[s].y[i]);
    }
    out << "\"/>\n";
    out << "<text x=\"" << W - M + 4 << "\" y=\"" << M + 14 * s << "\" fill=\"" << color << "\">"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace polar::io
