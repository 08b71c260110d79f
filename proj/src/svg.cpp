#include "moddenoise/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace moddenoise {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                               "#8c564b"};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string loglog_svg(const std::vector<SvgSeries>& series, std::string_view title,
                       std::string_view x_label, std::string_view y_label) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  // whole decades on both axes
  xmin = std::floor(xmin), xmax = std::ceil(xmax);
  ymin = std::floor(ymin), ymax = std::ceil(ymax);
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return kTop + (ymax - ly) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-size=\"14\">" << escape(title) << "</text>\n";

  for (double d = xmin; d <= xmax + 1e-9; d += 1.0) {
    out << "<line x1=\"" << num(px(d)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(d))
        << "\" y2=\"" << num(kTop + ph) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(px(d)) << "\" y=\"" << num(kTop + ph + 16)
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(d) << "</text>\n";
  }
  for (double d = ymin; d <= ymax + 1e-9; d += 1.0) {
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(d)) << "\" x2=\""
        << num(kLeft + pw) << "\" y2=\"" << num(py(d)) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(d) + 4)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(d) << "</text>\n";
  }
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  out << "<text transform=\"translate(16," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    std::ostringstream d;
    bool first = true;
    const auto& ser = series[s];
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      if (!(ser.x[i] > 0.0) || !(ser.y[i] > 0.0)) continue;
      d << (first ? "M" : " L") << num(px(std::log10(ser.x[i]))) << ','
        << num(py(std::log10(ser.y[i])));
      first = false;
    }
    if (!first) {
      out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }
    const double ly = kTop + 10 + 18.0 * s;
    out << "<line x1=\"" << num(kLeft + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kLeft + pw + 36) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(kLeft + pw + 42) << "\" y=\"" << num(ly + 4) << "\">"
        << escape(ser.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string sweep_svg(const std::vector<SweepRow>& rows, std::string_view title) {
  std::vector<SvgSeries> series;
  for (const auto& r : rows) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const SvgSeries& s) { return s.label == r.method; });
    if (it == series.end()) {
      series.push_back({r.method, {}, {}});
      it = series.end() - 1;
    }
    it->x.push_back(r.sigma);
    it->y.push_back(r.mean_mse);
  }
  return loglog_svg(series, title, "sigma", "mean squared error");
}

}  // namespace moddenoise
