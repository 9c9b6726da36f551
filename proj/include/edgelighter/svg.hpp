// Static SVG renderings of trace curves (correctness in blue, cover rate in
// red, dual y-axis sharing [0,1]) and of log-log scatter points with a fitted
// line. Byte-deterministic given inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgelighter/csv.hpp"
#include "edgelighter/experiments.hpp"
#include "edgelighter/trace.hpp"

namespace edgelighter {

namespace detail {

inline std::string svg_coord(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

struct PlotFrame {
    double width = 760, height = 520;
    double left = 70, right = 30, top = 40, bottom = 60;

    double x(double frac) const { return left + frac * (width - left - right); }
    double y(double frac) const { return height - bottom - frac * (height - top - bottom); }
};

inline void open_svg(std::string& out, const PlotFrame& f, const std::string& title) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_coord(f.width) +
           "\" height=\"" + svg_coord(f.height) + "\" viewBox=\"0 0 " + svg_coord(f.width) + " " +
           svg_coord(f.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + svg_coord(f.width / 2) + "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";
    // axes
    out += "<line x1=\"" + svg_coord(f.left) + "\" y1=\"" + svg_coord(f.height - f.bottom) +
           "\" x2=\"" + svg_coord(f.width - f.right) + "\" y2=\"" +
           svg_coord(f.height - f.bottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + svg_coord(f.left) + "\" y1=\"" + svg_coord(f.top) + "\" x2=\"" +
           svg_coord(f.left) + "\" y2=\"" + svg_coord(f.height - f.bottom) +
           "\" stroke=\"black\"/>\n";
}

inline void axis_label(std::string& out, const PlotFrame& f, const std::string& x_label,
                       const std::string& y_label) {
    out += "<text x=\"" + svg_coord((f.left + f.width - f.right) / 2) + "\" y=\"" +
           svg_coord(f.height - 18) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + x_label + "</text>\n";
    out += "<text x=\"20\" y=\"" + svg_coord((f.top + f.height - f.bottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 " + svg_coord((f.top + f.height - f.bottom) / 2) +
           ")\">" + y_label + "</text>\n";
}

inline void polyline(std::string& out, const std::vector<std::pair<double, double>>& pts,
                     const std::string& color) {
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : pts) out += svg_coord(x) + "," + svg_coord(y) + " ";
    out += "\"/>\n";
}

}  // namespace detail

// Correctness (blue) and cover rate (red) against steps.
inline std::string trace_svg_string(const std::vector<TraceRecord>& records,
                                    const std::string& title) {
    if (records.empty()) throw std::invalid_argument("trace svg: empty trace");
    detail::PlotFrame f;
    std::string out;
    detail::open_svg(out, f, title);
    detail::axis_label(out, f, "steps", "matching correctness / cover rate");
    const double max_step = std::max<double>(1.0, static_cast<double>(records.back().step));
    std::vector<std::pair<double, double>> corr, cover;
    for (const TraceRecord& r : records) {
        double xf = static_cast<double>(r.step) / max_step;
        corr.push_back({f.x(xf), f.y(std::clamp(r.correctness, 0.0, 1.0))});
        cover.push_back({f.x(xf), f.y(std::clamp(r.cover_rate, 0.0, 1.0))});
    }
    detail::polyline(out, corr, "blue");
    detail::polyline(out, cover, "red");
    // y ticks at 0, 0.5, 1 and x ticks at 0, max
    for (double v : {0.0, 0.5, 1.0}) {
        out += "<text x=\"" + detail::svg_coord(f.left - 8) + "\" y=\"" +
               detail::svg_coord(f.y(v) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::svg_coord(v) + "</text>\n";
    }
    out += "<text x=\"" + detail::svg_coord(f.x(1.0)) + "\" y=\"" +
           detail::svg_coord(f.height - f.bottom + 16) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           std::to_string(records.back().step) + "</text>\n";
    out += "<text x=\"" + detail::svg_coord(f.width - f.right - 190) + "\" y=\"" +
           detail::svg_coord(f.top + 12) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"blue\">correctness</text>\n";
    out += "<text x=\"" + detail::svg_coord(f.width - f.right - 90) + "\" y=\"" +
           detail::svg_coord(f.top + 12) +
           "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"red\">cover rate</text>\n";
    out += "</svg>\n";
    return out;
}

inline void write_svg_plot(const std::vector<TraceRecord>& records, const std::string& title,
                           const std::string& path) {
    std::string body = trace_svg_string(records, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg_plot: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("write_svg_plot: write failed for " + path);
}

// Log-log scatter of (n, t_hat) with the fitted line.
inline std::string loglog_svg_string(const std::vector<std::pair<double, double>>& points,
                                     const LogLogFit& fit, const std::string& title) {
    if (points.empty()) throw std::invalid_argument("loglog svg: no points");
    detail::PlotFrame f;
    std::string out;
    detail::open_svg(out, f, title);
    detail::axis_label(out, f, "log n", "log t");
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (auto [x, y] : points) {
        min_x = std::min(min_x, std::log(x));
        max_x = std::max(max_x, std::log(x));
        min_y = std::min(min_y, std::log(y));
        max_y = std::max(max_y, std::log(y));
    }
    double pad_x = 0.08 * std::max(1e-9, max_x - min_x), pad_y = 0.08 * std::max(1e-9, max_y - min_y);
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;
    auto fx = [&](double lx) { return f.x((lx - min_x) / (max_x - min_x)); };
    auto fy = [&](double ly) { return f.y((ly - min_y) / (max_y - min_y)); };
    for (auto [x, y] : points)
        out += "<circle cx=\"" + detail::svg_coord(fx(std::log(x))) + "\" cy=\"" +
               detail::svg_coord(fy(std::log(y))) + "\" r=\"4\" fill=\"blue\"/>\n";
    std::vector<std::pair<double, double>> line{
        {fx(min_x), fy(fit.intercept + fit.slope * min_x)},
        {fx(max_x), fy(fit.intercept + fit.slope * max_x)}};
    detail::polyline(out, line, "black");
    char label[64];
    std::snprintf(label, sizeof(label), "slope %.4f", fit.slope);
    out += "<text x=\"" + detail::svg_coord(f.width - f.right - 120) + "\" y=\"" +
           detail::svg_coord(f.top + 12) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
    out += "</svg>\n";
    return out;
}

inline void write_loglog_svg(const std::vector<std::pair<double, double>>& points,
                             const LogLogFit& fit, const std::string& title,
                             const std::string& path) {
    std::string body = loglog_svg_string(points, fit, title);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_loglog_svg: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("write_loglog_svg: write failed for " + path);
}

}  // namespace edgelighter
