#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace segmental::svg {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string polyline_plot(const std::vector<Series>& series, bool log_y) {
  constexpr double kW = 800, kH = 600, kPad = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  std::vector<Series> plotted;
  for (const Series& s : series) {
    Series p{s.name, {}, {}};
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      double y = s.y[k];
      if (log_y) {
        if (!(y > 0.0)) continue;
        y = std::log10(y);
      }
      if (!std::isfinite(s.x[k]) || !std::isfinite(y)) continue;
      p.x.push_back(s.x[k]);
      p.y.push_back(y);
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    plotted.push_back(std::move(p));
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;

  auto px = [&](double x) {
    return kPad + (x - xmin) / (xmax - xmin) * (kW - 2 * kPad);
  };
  auto py = [&](double y) {
    return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n"
      << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\""
      << kW - 2 * kPad << "\" height=\"" << kH - 2 * kPad
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (std::size_t s = 0; s < plotted.size(); ++s) {
    const Series& p = plotted[s];
    if (p.x.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << kColors[s % 8]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < p.x.size(); ++k)
      out << px(p.x[k]) << ',' << py(p.y[k]) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << kPad + 8 << "\" y=\"" << kPad + 16 + 16 * s
        << "\" fill=\"" << kColors[s % 8] << "\" font-size=\"13\">" << p.name
        << (log_y ? " (log10)" : "") << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace segmental::svg
