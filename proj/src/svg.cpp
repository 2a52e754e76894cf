#include "gracefill/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gracefill/errors.hpp"

namespace gracefill {
namespace svg {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 86.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 46.0;
constexpr double kMarginBottom = 58.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string label_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round up to 1, 2 or 5 times a power of ten.
double nice_step(double raw) {
    if (raw <= 0.0) return 1.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0)
        nice = 1.0;
    else if (frac <= 2.0)
        nice = 2.0;
    else if (frac <= 5.0)
        nice = 5.0;
    return nice * mag;
}

struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.2;
};

Scale nice_scale(double lo, double hi, int max_ticks = 8) {
    if (!(hi > lo)) {
        const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    Scale s;
    s.step = nice_step((hi - lo) / std::max(1, max_ticks - 1));
    s.lo = std::floor(lo / s.step) * s.step;
    s.hi = std::ceil(hi / s.step) * s.step;
    return s;
}

std::string document_open(const std::string& title) {
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\""
           " text-anchor=\"middle\">" + escape(title) + "</text>\n";
    return out;
}

std::string axis_labels(const std::string& x_label, const std::string& y_label) {
    std::string out;
    out += "<text x=\"" + num(kMarginLeft + (kWidth - kMarginLeft - kMarginRight) / 2) + "\" y=\"" +
           num(kHeight - 12.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
           escape(x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + num(kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " +
           num(kMarginTop + (kHeight - kMarginTop - kMarginBottom) / 2) + ")\">" +
           escape(y_label) + "</text>\n";
    return out;
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       bool log_y) {
    if (series.empty()) throw EmptyInput("line_chart");

    std::size_t n_max = 0;
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        n_max = std::max(n_max, s.values.size());
        for (double v : s.values) {
            const double y = log_y ? std::log10(std::max(v, 1e-300)) : v;
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (n_max == 0) throw EmptyInput("line_chart: all series empty");

    const Scale ys = nice_scale(y_min, y_max);
    const Scale xs = nice_scale(0.0, static_cast<double>(n_max > 1 ? n_max - 1 : 1));

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto map_x = [&](double v) { return kMarginLeft + (v - xs.lo) / (xs.hi - xs.lo) * plot_w; };
    auto map_y = [&](double v) {
        return kMarginTop + plot_h - (v - ys.lo) / (ys.hi - ys.lo) * plot_h;
    };

    std::string out = document_open(title);

    // gridlines + tick labels
    for (double v = ys.lo; v <= ys.hi + ys.step * 0.5; v += ys.step) {
        const double y = map_y(v);
        out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(kWidth - kMarginRight) + "\" y2=\"" + num(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        const std::string lab = log_y ? ("1e" + label_num(v)) : label_num(v);
        out += "<text x=\"" + num(kMarginLeft - 6.0) + "\" y=\"" + num(y + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" + lab +
               "</text>\n";
    }
    for (double v = xs.lo; v <= xs.hi + xs.step * 0.5; v += xs.step) {
        const double x = map_x(v);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kHeight - kMarginBottom) +
               "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(kHeight - kMarginBottom + 16.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               label_num(v) + "</text>\n";
    }

    // axes
    out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" +
           num(kMarginLeft) + "\" y2=\"" + num(kHeight - kMarginBottom) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kHeight - kMarginBottom) +
           "\" x2=\"" + num(kWidth - kMarginRight) + "\" y2=\"" + num(kHeight - kMarginBottom) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        if (s.values.empty()) continue;
        std::string points;
        points.reserve(s.values.size() * 14);
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double v = log_y ? std::log10(std::max(s.values[i], 1e-300)) : s.values[i];
            points += num(map_x(static_cast<double>(i)));
            points += ',';
            points += num(map_y(v));
            if (i + 1 < s.values.size()) points += ' ';
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[k % kPaletteSize]) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    }

    // legend
    double ly = kMarginTop + 8.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double lx = kWidth - kMarginRight - 170.0;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 22.0) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + std::string(kPalette[k % kPaletteSize]) +
               "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(lx + 28.0) + "\" y=\"" + num(ly + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(series[k].name) +
               "</text>\n";
        ly += 16.0;
    }

    out += axis_labels(x_label, y_label);
    out += "</svg>\n";
    return out;
}

std::string bar_chart(const std::string& title, const std::string& y_label,
                      const std::vector<std::string>& series_names,
                      const std::vector<BarGroup>& groups) {
    if (groups.empty() || series_names.empty()) throw EmptyInput("bar_chart");

    double v_max = 0.0;
    for (const auto& g : groups) {
        if (g.values.size() != series_names.size())
            throw LengthMismatch(g.values.size(), series_names.size());
        for (double v : g.values) v_max = std::max(v_max, v);
    }
    if (v_max <= 0.0) v_max = 1.0;
    const Scale ys = nice_scale(0.0, v_max * 1.1);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double base_y = kHeight - kMarginBottom;
    auto bar_height = [&](double v) { return v / ys.hi * plot_h; };

    std::string out = document_open(title);

    for (double v = 0.0; v <= ys.hi + ys.step * 0.5; v += ys.step) {
        const double y = base_y - bar_height(v);
        out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
               num(kWidth - kMarginRight) + "\" y2=\"" + num(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(kMarginLeft - 6.0) + "\" y=\"" + num(y + 4.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               label_num(v) + "</text>\n";
    }

    const double group_w = plot_w / static_cast<double>(groups.size());
    const double bar_w = group_w * 0.7 / static_cast<double>(series_names.size());

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        const double gx = kMarginLeft + group_w * static_cast<double>(gi) + group_w * 0.15;
        for (std::size_t si = 0; si < series_names.size(); ++si) {
            const double h = bar_height(g.values[si]);
            const double x = gx + bar_w * static_cast<double>(si);
            out += "<rect class=\"bar\" x=\"" + num(x) + "\" y=\"" + num(base_y - h) +
                   "\" width=\"" + num(bar_w * 0.92) + "\" height=\"" + num(h) + "\" fill=\"" +
                   std::string(kPalette[si % kPaletteSize]) + "\"/>\n";
            out += "<text x=\"" + num(x + bar_w * 0.46) + "\" y=\"" + num(base_y - h - 4.0) +
                   "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
                   label_num(g.values[si]) + "</text>\n";
        }
        out += "<text x=\"" + num(gx + bar_w * static_cast<double>(series_names.size()) / 2) +
               "\" y=\"" + num(base_y + 16.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               escape(g.label) + "</text>\n";
    }

    out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(kMarginTop) + "\" x2=\"" +
           num(kMarginLeft) + "\" y2=\"" + num(base_y) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + num(kMarginLeft) + "\" y1=\"" + num(base_y) + "\" x2=\"" +
           num(kWidth - kMarginRight) + "\" y2=\"" + num(base_y) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // legend
    double ly = kMarginTop + 8.0;
    for (std::size_t k = 0; k < series_names.size(); ++k) {
        const double lx = kWidth - kMarginRight - 150.0;
        out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 8.0) +
               "\" width=\"14\" height=\"10\" fill=\"" +
               std::string(kPalette[k % kPaletteSize]) + "\"/>\n";
        out += "<text x=\"" + num(lx + 20.0) + "\" y=\"" + num(ly + 1.0) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(series_names[k]) +
               "</text>\n";
        ly += 16.0;
    }

    out += axis_labels("", y_label);
    out += "</svg>\n";
    return out;
}

}  // namespace svg
}  // namespace gracefill
