#include "singdyn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "singdyn/errors.hpp"

namespace singdyn {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr double kMarginL = 62.0, kMarginR = 18.0, kMarginT = 30.0, kMarginB = 46.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

void write_svg_plot(std::ostream& os, const std::vector<SvgSeries>& series,
                    const SvgOptions& options) {
    if (series.empty()) throw ConfigError("svg: no series to plot");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    size_t npoints = 0;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y))
                throw ConfigError("svg: non-finite data point");
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
            ++npoints;
        }
    }
    if (npoints == 0) throw ConfigError("svg: empty series");
    if (xmax <= xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax <= ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    const auto px = [&](double x) { return kMarginL + (x - xmin) / (xmax - xmin) * pw; };
    const auto py = [&](double y) { return kHeight - kMarginB - (y - ymin) / (ymax - ymin) * ph; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";
    os << "<rect x=\"" << fmt(kMarginL) << "\" y=\"" << fmt(kMarginT) << "\" width=\""
       << fmt(pw) << "\" height=\"" << fmt(ph)
       << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // ticks (5 per axis, linear subdivision)
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        const double xp = px(xv), yp = py(yv);
        os << "<line x1=\"" << fmt(xp) << "\" y1=\"" << fmt(kHeight - kMarginB)
           << "\" x2=\"" << fmt(xp) << "\" y2=\"" << fmt(kHeight - kMarginB + 5)
           << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(xp) << "\" y=\"" << fmt(kHeight - kMarginB + 18)
           << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
           << fmt(xv, "%.6g") << "</text>\n";
        os << "<line x1=\"" << fmt(kMarginL - 5) << "\" y1=\"" << fmt(yp) << "\" x2=\""
           << fmt(kMarginL) << "\" y2=\"" << fmt(yp)
           << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        os << "<text x=\"" << fmt(kMarginL - 8) << "\" y=\"" << fmt(yp + 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
           << fmt(yv, "%.6g") << "</text>\n";
    }
    os << "<text x=\"" << fmt(kMarginL + pw / 2) << "\" y=\"" << fmt(kHeight - 8.0)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
       << options.x_label << "</text>\n";
    os << "<text x=\"14\" y=\"" << fmt(kMarginT + ph / 2)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
       << "transform=\"rotate(-90 14 " << fmt(kMarginT + ph / 2) << ")\">"
       << options.y_label << "</text>\n";
    if (!options.title.empty())
        os << "<text x=\"" << fmt(kMarginL + pw / 2)
           << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\" "
           << "text-anchor=\"middle\">" << options.title << "</text>\n";

    const size_t ncolors = sizeof(kPalette) / sizeof(kPalette[0]);
    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % ncolors];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < series[s].points.size(); ++i) {
            auto [x, y] = series[s].points[i];
            if (i) os << ' ';
            os << fmt(px(x)) << ',' << fmt(py(y));
        }
        os << "\"/>\n";
    }

    // legend, top-right corner of the plot area
    for (size_t s = 0; s < series.size() && s < 12; ++s) {
        const char* color = kPalette[s % ncolors];
        const double ly = kMarginT + 14.0 + 16.0 * static_cast<double>(s);
        os << "<line x1=\"" << fmt(kWidth - kMarginR - 120) << "\" y1=\"" << fmt(ly - 4)
           << "\" x2=\"" << fmt(kWidth - kMarginR - 100) << "\" y2=\"" << fmt(ly - 4)
           << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(kWidth - kMarginR - 95) << "\" y=\"" << fmt(ly)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label
           << "</text>\n";
    }
    os << "</svg>\n";
}

}  // namespace singdyn
