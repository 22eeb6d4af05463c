#pragma once

#include <string>
#include <vector>

#include "qpf/experiment.hpp"

namespace qpf {

// One polyline of a figure.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), x ascending
};

// error-curve: best error vs duration per (d, phase), log error axis.
// min-time: threshold-crossing duration vs d, one series per parity.
std::vector<PlotSeries> figure_series(const std::vector<SweepRecord>& records,
                                      const std::string& figure, double threshold);

// Plot-ready CSV; columns are subsets of the records schema.
std::string figure_csv(const std::vector<SweepRecord>& records, const std::string& figure,
                       double threshold);

// Static line chart.  Output is a pure function of the input series, so the
// same records file always renders byte-identically.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& figure);

struct PlotOutputs {
    std::string csv_path;
    std::string svg_path;
};

PlotOutputs export_plot(const std::string& records_csv_path, const std::string& figure,
                        const std::string& out_csv, const std::string& out_svg,
                        double threshold = 1e-5);

}  // namespace qpf
