#pragma once

#include "ycoo/simulation.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ycoo {

/// Fixed CSV header, angles in degrees.
std::string_view trace_csv_header();

void write_trace_csv(std::ostream& out, const SimTrace& trace);
/// Parses what write_trace_csv produced. Throws std::invalid_argument on a
/// header mismatch or malformed row.
SimTrace read_trace_csv(std::istream& in);

struct PlotSeries {
  std::string label;
  std::vector<double> y;
};

/// Minimal SVG line plot: frame, min/max tick labels, one polyline per
/// series and a legend.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series, int width = 800, int height = 360);

/// True and estimated states plus absolute errors, one SVG per quantity.
std::vector<std::pair<std::string, std::string>> trace_plots(const SimTrace& trace);

}  // namespace ycoo
