#pragma once

#include <string>
#include <vector>

namespace segmental::svg {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

// Fixed 800x600 polyline plot; log_y plots log10 of positive values and
// drops the rest.  Carries no data beyond the CSV series.
std::string polyline_plot(const std::vector<Series>& series, bool log_y);

}  // namespace segmental::svg
