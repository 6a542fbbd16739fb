#ifndef EFFDIM_CLI_SVG_HPP
#define EFFDIM_CLI_SVG_HPP

#include <string>
#include <vector>

#include "cli/csv.hpp"

namespace effdim::cli {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

enum class ReferenceLine { None, Diagonal, Horizontal };

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  ReferenceLine reference = ReferenceLine::None;
  double reference_level = 0.0;  // for Horizontal
};

// Static line chart. The data curve is a <polyline class="series">; a
// reference, when requested, is a <polyline class="reference">.
std::string render_line_chart(const ChartSpec& spec, const Series& series);

// Chooses the layout from the CSV header: an "n" column gives a log-x
// chart with the parameter count as a horizontal reference, a "d" column a
// linear chart with the diagonal y = x.
std::string plot_csv(const CsvTable& table);

}  // namespace effdim::cli

#endif  // EFFDIM_CLI_SVG_HPP
