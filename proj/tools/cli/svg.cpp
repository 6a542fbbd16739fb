#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "effdim/error.hpp"

namespace effdim::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick spacing covering [lo, hi] with roughly `target` intervals.
std::vector<double> linear_ticks(double lo, double hi, int target = 6) {
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

struct Range {
  double lo, hi;
};

Range padded(double lo, double hi) {
  if (hi == lo) return {lo - 0.5, hi + 0.5};
  return {lo, hi};
}

}  // namespace

std::string render_line_chart(const ChartSpec& spec, const Series& series) {
  require(!series.x.empty() && series.x.size() == series.y.size(),
          "chart needs a nonempty series with matching x and y");
  for (double x : series.x) {
    require(std::isfinite(x) && (!spec.log_x || x > 0.0), "chart x values must be finite" +
                                                               std::string(spec.log_x ? " and positive" : ""));
  }
  for (double y : series.y) require(std::isfinite(y), "chart y values must be finite");

  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  const auto [xmin_it, xmax_it] = std::minmax_element(series.x.begin(), series.x.end());
  const Range xr = padded(tx(*xmin_it), tx(*xmax_it));

  double ylo = 0.0;
  double yhi = *std::max_element(series.y.begin(), series.y.end());
  ylo = std::min(ylo, *std::min_element(series.y.begin(), series.y.end()));
  if (spec.reference == ReferenceLine::Diagonal) yhi = std::max(yhi, *xmax_it);
  if (spec.reference == ReferenceLine::Horizontal) yhi = std::max(yhi, spec.reference_level);
  yhi *= 1.05;
  const Range yr = padded(ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(spec.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\""
      << fmt(kLeft + pw) << "\" y2=\"" << fmt(kTop + ph) << "\"/>\n";
  svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft)
      << "\" y2=\"" << fmt(kTop + ph) << "\"/>\n";
  svg << "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  std::vector<double> xticks;
  if (spec.log_x) {
    for (double e = std::ceil(xr.lo - 1e-9); e <= xr.hi + 1e-9; e += 1.0) {
      xticks.push_back(std::pow(10.0, e));
    }
  } else {
    xticks = linear_ticks(xr.lo, xr.hi);
  }
  for (double t : xticks) {
    const double x = px(t);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << fmt(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    const std::string label =
        spec.log_x ? "1e" + tick_label(std::round(std::log10(t))) : tick_label(t);
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  for (double t : linear_ticks(yr.lo, yr.hi)) {
    const double y = py(t);
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(spec.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << fmt(kTop + ph / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
      << fmt(kTop + ph / 2) << ")\">" << escape(spec.y_label) << "</text>\n";

  if (spec.reference != ReferenceLine::None) {
    const double x0 = *xmin_it;
    const double x1 = *xmax_it;
    const double y0 = spec.reference == ReferenceLine::Diagonal ? x0 : spec.reference_level;
    const double y1 = spec.reference == ReferenceLine::Diagonal ? x1 : spec.reference_level;
    svg << "<polyline class=\"reference\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"6 4\" "
        << "points=\"" << fmt(px(x0)) << ',' << fmt(py(y0)) << ' ' << fmt(px(x1)) << ','
        << fmt(py(y1)) << "\"/>\n";
  }

  svg << "<polyline class=\"series\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    if (i) svg << ' ';
    svg << fmt(px(series.x[i])) << ',' << fmt(py(series.y[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

std::string plot_csv(const CsvTable& table) {
  require(!table.rows.empty(), "CSV has no data rows to plot");
  const auto& first = table.header.front();
  Series series;
  ChartSpec spec;
  spec.y_label = "effective dimension";
  series.y = table.numeric_column("dim_eff");
  if (first == "n") {
    series.x = table.numeric_column("n");
    const auto d = table.numeric_column("d");
    spec.log_x = true;
    spec.x_label = "n (observations)";
    spec.reference = ReferenceLine::Horizontal;
    spec.reference_level = d.front();
    spec.title = "Effective dimension vs n (d = " + tick_label(d.front()) + ")";
  } else if (first == "d") {
    series.x = table.numeric_column("d");
    const auto n = table.numeric_column("n");
    spec.x_label = "d (parameters)";
    spec.reference = ReferenceLine::Diagonal;
    spec.title = "Effective dimension vs d (n = " + tick_label(n.front()) + ")";
  } else {
    fail(ErrorCode::InvalidInput, "CSV is neither a sweep-n nor a sweep-d table");
  }
  return render_line_chart(spec, series);
}

}  // namespace effdim::cli
