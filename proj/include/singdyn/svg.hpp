#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace singdyn {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y) data coordinates
};

struct SvgOptions {
    std::string x_label = "x";
    std::string y_label = "y";
    std::string title;
};

/// Deterministic SVG 1.1 line plot in a fixed 800x600 viewport: one polyline
/// per series, linear axes with 5 ticks, legend from the series labels.
/// Identical input produces byte-identical output.
void write_svg_plot(std::ostream& os, const std::vector<SvgSeries>& series,
                    const SvgOptions& options = {});

}  // namespace singdyn
