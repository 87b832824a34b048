#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "autofb/biometry.hpp"
#include "autofb/gray_image.hpp"

namespace autofb::io {

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

// Vector overlay of a fitted report in image pixel coordinates: the
// ellipse (or box), its axis segments, and one text label per
// measurement in millimetres.
inline std::string render_overlay(const GrayImage& image, const BiometryReport& report) {
    using detail::fmt;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << image.width()
        << "\" height=\"" << image.height() << "\" viewBox=\"0 0 " << image.width() << " "
        << image.height() << "\">\n";

    double label_x = 8.0, label_y = 16.0;
    if (const auto* e = std::get_if<EllipseParams>(&report.fitted)) {
        const double deg = e->theta * 180.0 / std::numbers::pi;
        svg << "  <ellipse cx=\"" << fmt(e->cx) << "\" cy=\"" << fmt(e->cy) << "\" rx=\""
            << fmt(e->a) << "\" ry=\"" << fmt(e->b) << "\" transform=\"rotate(" << fmt(deg)
            << " " << fmt(e->cx) << " " << fmt(e->cy)
            << ")\" fill=\"none\" stroke=\"#00d0ff\" stroke-width=\"2\"/>\n";
        const double ct = std::cos(e->theta), st = std::sin(e->theta);
        svg << "  <line x1=\"" << fmt(e->cx - e->a * ct) << "\" y1=\"" << fmt(e->cy - e->a * st)
            << "\" x2=\"" << fmt(e->cx + e->a * ct) << "\" y2=\"" << fmt(e->cy + e->a * st)
            << "\" stroke=\"#ffd000\" stroke-width=\"1\"/>\n";
        svg << "  <line x1=\"" << fmt(e->cx + e->b * st) << "\" y1=\"" << fmt(e->cy - e->b * ct)
            << "\" x2=\"" << fmt(e->cx - e->b * st) << "\" y2=\"" << fmt(e->cy + e->b * ct)
            << "\" stroke=\"#ffd000\" stroke-width=\"1\"/>\n";
        label_x = e->cx - e->b;
        label_y = e->cy - e->b - 24.0;
    } else {
        const auto& b = std::get<BoundingBox>(report.fitted);
        svg << "  <rect x=\"" << fmt(b.min_x) << "\" y=\"" << fmt(b.min_y) << "\" width=\""
            << fmt(b.width()) << "\" height=\"" << fmt(b.height())
            << "\" fill=\"none\" stroke=\"#00d0ff\" stroke-width=\"2\"/>\n";
        svg << "  <line x1=\"" << fmt(b.min_x) << "\" y1=\"" << fmt(b.min_y) << "\" x2=\""
            << fmt(b.max_x) << "\" y2=\"" << fmt(b.max_y)
            << "\" stroke=\"#ffd000\" stroke-width=\"1\"/>\n";
        label_x = b.min_x;
        label_y = b.min_y - 8.0;
    }

    for (const auto& [name, m] : report.measurements) {
        char label[64];
        std::snprintf(label, sizeof label, "%s %.1f mm", name.c_str(), m.value_mm);
        svg << "  <text x=\"" << fmt(label_x) << "\" y=\"" << fmt(label_y)
            << "\" fill=\"#ffffff\" font-size=\"14\">" << label << "</text>\n";
        label_y += 16.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace autofb::io
