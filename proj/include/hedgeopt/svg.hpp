#pragma once
// Standalone SVG 1.1 scatter plots regenerated from rows.csv.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "hedgeopt/errors.hpp"
#include "hedgeopt/output.hpp"

namespace hedgeopt {

struct ScatterSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct ScatterPlot {
    std::string x_label;
    std::string y_label;
    std::vector<ScatterSeries> series;
    bool identity_line = false;
};

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
};

/// Data range padded by 5% of its span on each side; [0, 1] when there is no finite data.
inline AxisRange padded_range(const std::vector<const std::vector<double>*>& data) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* v : data)
        for (double x : *v)
            if (std::isfinite(x)) {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
    if (!(lo <= hi)) return {};
    double pad = 0.05 * (hi - lo);
    if (pad == 0.0) pad = 0.05 * std::max(std::abs(lo), 1.0);
    return {lo - pad, hi + pad};
}

struct ScatterLayout {
    static constexpr double kWidth = 640.0;
    static constexpr double kHeight = 480.0;
    static constexpr double kLeft = 80.0;
    static constexpr double kRight = 20.0;
    static constexpr double kTop = 20.0;
    static constexpr double kBottom = 60.0;

    AxisRange x;
    AxisRange y;

    [[nodiscard]] double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
    [[nodiscard]] double py(double v) const {
        return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom);
    }
};

inline ScatterLayout layout_for(const ScatterPlot& plot) {
    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : plot.series) {
        xs.push_back(&s.xs);
        ys.push_back(&s.ys);
    }
    return {padded_range(xs), padded_range(ys)};
}

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string render_svg_scatter(const ScatterPlot& plot) {
    using detail::svg_num;
    const ScatterLayout L = layout_for(plot);
    const double x0 = ScatterLayout::kLeft;
    const double x1 = ScatterLayout::kWidth - ScatterLayout::kRight;
    const double y0 = ScatterLayout::kHeight - ScatterLayout::kBottom;
    const double y1 = ScatterLayout::kTop;
    static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};

    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + svg_num(x0) + "\" y1=\"" + svg_num(y0) + "\" x2=\"" + svg_num(x1) + "\" y2=\"" + svg_num(y0) + "\"/>\n";
    s += "<line x1=\"" + svg_num(x0) + "\" y1=\"" + svg_num(y0) + "\" x2=\"" + svg_num(x0) + "\" y2=\"" + svg_num(y1) + "\"/>\n";
    s += "</g>\n<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double vx = L.x.lo + (L.x.hi - L.x.lo) * i / 4.0;
        const double vy = L.y.lo + (L.y.hi - L.y.lo) * i / 4.0;
        const double tx = L.px(vx);
        const double ty = L.py(vy);
        s += "<line stroke=\"black\" x1=\"" + svg_num(tx) + "\" y1=\"" + svg_num(y0) + "\" x2=\"" + svg_num(tx) + "\" y2=\"" +
             svg_num(y0 + 5) + "\"/>";
        s += "<text x=\"" + svg_num(tx) + "\" y=\"" + svg_num(y0 + 18) + "\" text-anchor=\"middle\">" +
             detail::tick_label(vx) + "</text>\n";
        s += "<line stroke=\"black\" x1=\"" + svg_num(x0 - 5) + "\" y1=\"" + svg_num(ty) + "\" x2=\"" + svg_num(x0) + "\" y2=\"" +
             svg_num(ty) + "\"/>";
        s += "<text x=\"" + svg_num(x0 - 8) + "\" y=\"" + svg_num(ty + 4) + "\" text-anchor=\"end\">" +
             detail::tick_label(vy) + "</text>\n";
    }
    s += "</g>\n";
    s += "<text x=\"" + svg_num(0.5 * (x0 + x1)) + "\" y=\"" + svg_num(ScatterLayout::kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + detail::xml_escape(plot.x_label) +
         "</text>\n";
    s += "<text x=\"18\" y=\"" + svg_num(0.5 * (y0 + y1)) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
         svg_num(0.5 * (y0 + y1)) + ")\">" + detail::xml_escape(plot.y_label) + "</text>\n";

    if (plot.identity_line) {
        const double a = std::max(L.x.lo, L.y.lo);
        const double b = std::min(L.x.hi, L.y.hi);
        if (a < b)
            s += "<line id=\"identity\" stroke=\"#1f77b4\" stroke-width=\"1.5\" x1=\"" + svg_num(L.px(a)) + "\" y1=\"" +
                 svg_num(L.py(a)) + "\" x2=\"" + svg_num(L.px(b)) + "\" y2=\"" + svg_num(L.py(b)) + "\"/>\n";
    }

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& ser = plot.series[k];
        const char* color = colors[k % 4];
        s += "<g class=\"series\" data-label=\"" + detail::xml_escape(ser.label) + "\" stroke=\"" + color +
             "\" stroke-width=\"1\">\n";
        const std::size_t n = std::min(ser.xs.size(), ser.ys.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(ser.xs[i]) || !std::isfinite(ser.ys[i])) continue;
            const double cx = L.px(ser.xs[i]);
            const double cy = L.py(ser.ys[i]);
            // "x" markers for even series, "+" for odd ones
            const double r = 3.0;
            if (k % 2 == 0) {
                s += "<path d=\"M" + svg_num(cx - r) + " " + svg_num(cy - r) + "L" + svg_num(cx + r) + " " + svg_num(cy + r) +
                     "M" + svg_num(cx - r) + " " + svg_num(cy + r) + "L" + svg_num(cx + r) + " " + svg_num(cy - r) + "\"/>\n";
            } else {
                s += "<path d=\"M" + svg_num(cx - r) + " " + svg_num(cy) + "L" + svg_num(cx + r) + " " + svg_num(cy) + "M" +
                     svg_num(cx) + " " + svg_num(cy - r) + "L" + svg_num(cx) + " " + svg_num(cy + r) + "\"/>\n";
            }
        }
        s += "</g>\n";
        s += "<text x=\"" + svg_num(x0 + 10) + "\" y=\"" + svg_num(y1 + 14 + 16.0 * static_cast<double>(k)) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color + "\">" + detail::xml_escape(ser.label) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

/// Unit family of a rows.csv column; fields of one family share an identity line.
inline std::string field_unit(const std::string& field) {
    for (const char* prefix : {"beta_", "qv_", "z_terminal_"})
        if (field.rfind(prefix, 0) == 0) return prefix;
    if (field == "eps2n" || field == "target_integral") return "eps2n";
    return field;
}

/// Scatter of y_fields against x_field; the identity line is drawn when all fields share units.
inline ScatterPlot scatter_from_table(const CsvTable& table, const std::string& x_field,
                                      const std::vector<std::string>& y_fields) {
    if (y_fields.empty()) throw DomainError("plot: at least one y field is required");
    ScatterPlot plot;
    plot.x_label = x_field;
    const auto xs = table.column(x_field);
    plot.identity_line = true;
    for (const auto& y : y_fields) {
        plot.series.push_back({y, xs, table.column(y)});
        if (field_unit(y) != field_unit(x_field)) plot.identity_line = false;
    }
    for (std::size_t i = 0; i < y_fields.size(); ++i) plot.y_label += (i ? ", " : "") + y_fields[i];
    return plot;
}

inline void write_svg_scatter(const CsvTable& table, const std::string& x_field, const std::vector<std::string>& y_fields,
                              const std::filesystem::path& out) {
    write_text_file(out, render_svg_scatter(scatter_from_table(table, x_field, y_fields)));
}

}  // namespace hedgeopt
