#pragma once

// Minimal SVG line-plot writer for the CLI's --plot flag: first table column
// on x, every other numeric column as a polyline. Log axes supported. Not a
// plotting library; just enough to eyeball the generated datasets.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sce/table.hpp"

namespace sce {

struct PlotOptions {
  bool log_x = false;
  bool log_y = false;
  int width = 860;
  int height = 560;
};

namespace plot_detail {

inline const char* series_color(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[i % 8];
}

inline double map01(double v, double lo, double hi) {
  return hi > lo ? (v - lo) / (hi - lo) : 0.5;
}

} // namespace plot_detail

inline void write_svg_plot(const std::string& path, const Table& t,
                           const PlotOptions& opt = {}) {
  if (t.columns.size() < 2 || t.rows.empty())
    throw std::runtime_error("plot: need at least two columns and one row");
  const int ml = 70, mr = 20, mt = 24, mb = 48;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;

  auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
  auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
  auto usable = [&](double v, bool log_axis) {
    return std::isfinite(v) && (!log_axis || v > 0.0);
  };

  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& row : t.rows) {
    if (!usable(row[0], opt.log_x)) continue;
    xlo = std::min(xlo, tx(row[0]));
    xhi = std::max(xhi, tx(row[0]));
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (!usable(row[c], opt.log_y)) continue;
      ylo = std::min(ylo, ty(row[c]));
      yhi = std::max(yhi, ty(row[c]));
    }
  }
  if (!(xhi >= xlo) || !(yhi >= ylo))
    throw std::runtime_error("plot: no plottable data");
  if (xhi == xlo) { xhi += 1; xlo -= 1; }
  if (yhi == ylo) { yhi += 1; ylo -= 1; }

  auto px = [&](double v) { return ml + pw * plot_detail::map01(tx(v), xlo, xhi); };
  auto py = [&](double v) { return mt + ph * (1.0 - plot_detail::map01(ty(v), ylo, yhi)); };

  std::ofstream os(path);
  if (!os) throw std::runtime_error("plot: cannot open " + path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << opt.width
     << "' height='" << opt.height << "'>\n"
     << "<rect width='100%' height='100%' fill='white'/>\n"
     << "<rect x='" << ml << "' y='" << mt << "' width='" << pw
     << "' height='" << ph << "' fill='none' stroke='#333'/>\n";

  // axis ticks
  for (int i = 0; i <= 5; ++i) {
    const double fx = xlo + (xhi - xlo) * i / 5.0;
    const double fy = ylo + (yhi - ylo) * i / 5.0;
    const double X = ml + pw * i / 5.0;
    const double Y = mt + ph * (1.0 - i / 5.0);
    const double vx = opt.log_x ? std::pow(10.0, fx) : fx;
    const double vy = opt.log_y ? std::pow(10.0, fy) : fy;
    char bx[40], by[40];
    std::snprintf(bx, sizeof bx, "%.4g", vx);
    std::snprintf(by, sizeof by, "%.4g", vy);
    os << "<line x1='" << X << "' y1='" << mt + ph << "' x2='" << X << "' y2='"
       << mt + ph + 5 << "' stroke='#333'/>\n"
       << "<text x='" << X << "' y='" << mt + ph + 18
       << "' font-size='11' text-anchor='middle'>" << bx << "</text>\n"
       << "<line x1='" << ml - 5 << "' y1='" << Y << "' x2='" << ml << "' y2='"
       << Y << "' stroke='#333'/>\n"
       << "<text x='" << ml - 8 << "' y='" << Y + 4
       << "' font-size='11' text-anchor='end'>" << by << "</text>\n";
  }
  os << "<text x='" << ml + pw / 2 << "' y='" << opt.height - 10
     << "' font-size='12' text-anchor='middle'>" << t.columns[0]
     << "</text>\n";

  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    os << "<polyline fill='none' stroke='" << plot_detail::series_color(c - 1)
       << "' stroke-width='1.5' points='";
    for (const auto& row : t.rows) {
      if (!usable(row[0], opt.log_x) || !usable(row[c], opt.log_y)) continue;
      os << px(row[0]) << ',' << py(row[c]) << ' ';
    }
    os << "'/>\n";
    os << "<text x='" << ml + 10 << "' y='" << mt + 16 + 15 * (c - 1)
       << "' font-size='12' fill='" << plot_detail::series_color(c - 1) << "'>"
       << t.columns[c] << "</text>\n";
  }
  os << "</svg>\n";
}

} // namespace sce
