#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "moddenoise/experiment.hpp"

namespace moddenoise {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static log-log line plot, one polyline per series. Nonpositive points are
/// dropped since they have no place on a log axis.
std::string loglog_svg(const std::vector<SvgSeries>& series, std::string_view title,
                       std::string_view x_label, std::string_view y_label);

/// Mean MSE against sigma, one series per method in the sweep.
std::string sweep_svg(const std::vector<SweepRow>& rows, std::string_view title);

}  // namespace moddenoise
