#include "qpf/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace qpf {

namespace {

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// best error per (d, phase, T): the refined rows (restart -1) when present,
// otherwise the minimum over restarts
std::map<std::pair<int, std::string>, std::map<double, double>> best_by_cell(
    const std::vector<SweepRecord>& records) {
    std::map<std::pair<int, std::string>, std::map<double, double>> cells;
    bool any_refined = false;
    for (const auto& r : records)
        if (r.restart_index < 0) any_refined = true;
    for (const auto& r : records) {
        if (any_refined && r.restart_index >= 0) continue;
        auto& series = cells[{r.d, r.phase_label}];
        auto it = series.find(r.T);
        if (it == series.end() || r.final_error < it->second) series[r.T] = r.final_error;
    }
    return cells;
}

}  // namespace

std::vector<PlotSeries> figure_series(const std::vector<SweepRecord>& records,
                                      const std::string& figure, double threshold) {
    const auto cells = best_by_cell(records);
    std::vector<PlotSeries> series;

    if (figure == "error-curve") {
        for (const auto& [key, points] : cells) {
            PlotSeries s;
            s.label = "d=" + std::to_string(key.first) + " " + key.second;
            for (const auto& [T, err] : points) s.points.emplace_back(T, err);
            series.push_back(std::move(s));
        }
        return series;
    }
    if (figure == "min-time") {
        std::map<std::string, std::vector<std::pair<double, double>>> by_parity;
        for (const auto& [key, points] : cells) {
            double t_min = -1.0;
            for (const auto& [T, err] : points)
                if (err < threshold && (t_min < 0.0 || T < t_min)) t_min = T;
            if (t_min < 0.0) continue;  // no passing duration recorded
            const std::string parity = (key.first % 2 == 0) ? "even" : "odd";
            by_parity[parity].emplace_back(static_cast<double>(key.first), t_min);
        }
        for (auto& [parity, pts] : by_parity) {
            std::sort(pts.begin(), pts.end());
            series.push_back(PlotSeries{parity + " d", std::move(pts)});
        }
        return series;
    }
    throw InvalidSpec("figure must be error-curve or min-time");
}

std::string figure_csv(const std::vector<SweepRecord>& records, const std::string& figure,
                       double threshold) {
    const auto cells = best_by_cell(records);
    std::ostringstream out;
    if (figure == "error-curve") {
        out << "d,T,phase,final_error\n";
        for (const auto& [key, points] : cells)
            for (const auto& [T, err] : points)
                out << key.first << ',' << fmt(T) << ',' << key.second << ',' << fmt(err)
                    << '\n';
        return out.str();
    }
    if (figure == "min-time") {
        out << "d,phase,T\n";
        for (const auto& [key, points] : cells) {
            double t_min = -1.0;
            for (const auto& [T, err] : points)
                if (err < threshold && (t_min < 0.0 || T < t_min)) t_min = T;
            if (t_min < 0.0) continue;
            out << key.first << ',' << key.second << ',' << fmt(t_min) << '\n';
        }
        return out.str();
    }
    throw InvalidSpec("figure must be error-curve or min-time");
}

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& figure) {
    const bool log_y = (figure == "error-curve");
    const double W = 640, H = 440, ml = 70, mr = 150, mt = 30, mb = 50;
    const double plot_w = W - ml - mr, plot_h = H - mt - mb;

    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            const double yy = log_y ? std::log10(std::max(y, 1e-16)) : y;
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, yy);
            y_hi = std::max(y_hi, yy);
        }
    if (x_lo > x_hi) {
        x_lo = 0;
        x_hi = 1;
        y_lo = 0;
        y_hi = 1;
    }
    if (x_hi - x_lo < 1e-12) x_hi = x_lo + 1.0;
    if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;

    auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) {
        const double yy = log_y ? std::log10(std::max(y, 1e-16)) : y;
        return mt + (y_hi - yy) / (y_hi - y_lo) * plot_h;
    };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

    // x ticks
    for (int t = 0; t <= 5; ++t) {
        const double x = x_lo + (x_hi - x_lo) * t / 5.0;
        const double X = px(x);
        svg << "<line x1=\"" << fmt(X, "%.2f") << "\" y1=\"" << mt + plot_h << "\" x2=\""
            << fmt(X, "%.2f") << "\" y2=\"" << mt + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(X, "%.2f") << "\" y=\"" << mt + plot_h + 20
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x, "%.3g") << "</text>\n";
    }
    // y ticks: one per decade in log mode, else 5 even ticks
    if (log_y) {
        for (int e = static_cast<int>(std::floor(y_lo)); e <= static_cast<int>(std::ceil(y_hi));
             ++e) {
            if (e < y_lo - 1e-9 || e > y_hi + 1e-9) continue;
            const double Y = mt + (y_hi - e) / (y_hi - y_lo) * plot_h;
            svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(Y, "%.2f") << "\" x2=\"" << ml
                << "\" y2=\"" << fmt(Y, "%.2f") << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(Y + 4, "%.2f")
                << "\" font-size=\"11\" text-anchor=\"end\">1e" << e << "</text>\n";
        }
    } else {
        for (int t = 0; t <= 5; ++t) {
            const double y = y_lo + (y_hi - y_lo) * t / 5.0;
            const double Y = mt + (y_hi - y) / (y_hi - y_lo) * plot_h;
            svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(Y, "%.2f") << "\" x2=\"" << ml
                << "\" y2=\"" << fmt(Y, "%.2f") << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(Y + 4, "%.2f")
                << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y, "%.3g") << "</text>\n";
        }
    }

    const std::string x_label = (figure == "min-time") ? "d" : "T (1/q)";
    const std::string y_label = (figure == "min-time") ? "T_min (1/q)" : "gate error";
    svg << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << H - 10
        << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
    svg << "<text x=\"15\" y=\"" << mt + plot_h / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << mt + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = palette[i % 8];
        std::ostringstream path;
        for (std::size_t k = 0; k < series[i].points.size(); ++k) {
            const auto& [x, y] = series[i].points[k];
            path << (k == 0 ? "M" : " L") << fmt(px(x), "%.2f") << "," << fmt(py(y), "%.2f");
        }
        svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        for (const auto& [x, y] : series[i].points)
            svg << "<circle cx=\"" << fmt(px(x), "%.2f") << "\" cy=\"" << fmt(py(y), "%.2f")
                << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << ml + plot_w + 10 << "\" y=\"" << mt + 15 + 16 * i
            << "\" font-size=\"11\" fill=\"" << color << "\">" << series[i].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

PlotOutputs export_plot(const std::string& records_csv_path, const std::string& figure,
                        const std::string& out_csv, const std::string& out_svg,
                        double threshold) {
    const auto records = RecordStore::load(records_csv_path);
    const auto series = figure_series(records, figure, threshold);

    std::ofstream csv(out_csv);
    if (!csv) throw StorageUnavailable("export_plot: cannot write " + out_csv);
    csv << figure_csv(records, figure, threshold);

    std::ofstream svg(out_svg);
    if (!svg) throw StorageUnavailable("export_plot: cannot write " + out_svg);
    svg << render_svg(series, figure);

    return PlotOutputs{out_csv, out_svg};
}

}  // namespace qpf
