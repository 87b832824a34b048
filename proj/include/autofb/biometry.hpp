#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "autofb/bbox.hpp"
#include "autofb/ellipse_fit.hpp"
#include "autofb/errors.hpp"
#include "autofb/mask.hpp"
#include "autofb/regions.hpp"
#include "autofb/ruler.hpp"

namespace autofb {

enum class PlaneClass { Head, Abdomen, Femur };

inline const char* to_string(PlaneClass p) {
    switch (p) {
        case PlaneClass::Head: return "head";
        case PlaneClass::Abdomen: return "abdomen";
        case PlaneClass::Femur: return "femur";
    }
    return "unknown";
}

inline AnatomyClass to_anatomy(PlaneClass p) {
    switch (p) {
        case PlaneClass::Head: return AnatomyClass::Head;
        case PlaneClass::Abdomen: return AnatomyClass::Abdomen;
        case PlaneClass::Femur: return AnatomyClass::Femur;
    }
    return AnatomyClass::Background;
}

struct Measurement {
    double value_px = 0.0;
    double value_mm = 0.0;
};

// Quality warnings attached to a report; none of these abort a batch.
enum class QualityFlag { TinyRegion, DegenerateFemur, EccentricFit };

inline const char* to_string(QualityFlag f) {
    switch (f) {
        case QualityFlag::TinyRegion: return "TinyRegion";
        case QualityFlag::DegenerateFemur: return "DegenerateFemur";
        case QualityFlag::EccentricFit: return "EccentricFit";
    }
    return "unknown";
}

struct BiometryReport {
    PlaneClass plane = PlaneClass::Head;
    ScaleEstimate scale;
    std::variant<EllipseParams, BoundingBox> fitted;
    std::map<std::string, Measurement> measurements;
    std::vector<QualityFlag> flags;
};

// Plane identity = anatomy class with the largest total pixel count;
// the measured region is that class's largest connected component.
inline std::pair<PlaneClass, PixelRegion> detect_plane(const LabelMask& mask) {
    auto regions = extract_regions(mask);
    if (regions.empty()) throw NoAnatomy("detect_plane: mask contains no anatomy");

    std::array<std::size_t, kNumClasses> totals{};
    for (const auto& r : regions) totals[static_cast<int>(r.cls)] += r.area();

    AnatomyClass best = AnatomyClass::Head;
    std::size_t best_total = 0;
    for (int c = 1; c < kNumClasses; ++c) {
        if (totals[c] > best_total) {
            best_total = totals[c];
            best = static_cast<AnatomyClass>(c);
        }
    }
    // Regions are area-sorted, so the first of the winning class is its
    // largest component.
    for (const auto& r : regions) {
        if (r.cls == best) {
            PlaneClass plane = best == AnatomyClass::Head      ? PlaneClass::Head
                               : best == AnatomyClass::Abdomen ? PlaneClass::Abdomen
                                                               : PlaneClass::Femur;
            return {plane, r};
        }
    }
    throw NoAnatomy("detect_plane: unreachable");
}

// The clinical circumference approximation pi*(d1+d2)/2.
inline double circumference_from_diameters(double d1, double d2) {
    return std::numbers::pi * (d1 + d2) / 2.0;
}

// Head: OFD is the occipito-frontal (long) axis, BPD the biparietal
// (short) axis.
struct HeadAxes {
    double bpd_px = 0.0;
    double ofd_px = 0.0;
};

inline HeadAxes assign_head_axes(const EllipseParams& e) {
    return {2.0 * e.b, 2.0 * e.a};
}

// Abdomen: the full axis within 45 degrees of image-horizontal is the
// transverse diameter; ties at exactly 45 degrees go to the major axis.
struct AbdomenAxes {
    double tad_px = 0.0;
    double apad_px = 0.0;
};

inline AbdomenAxes assign_abdomen_axes(const EllipseParams& e) {
    const double pi = std::numbers::pi;
    const double from_horizontal = std::min(e.theta, pi - e.theta);
    if (from_horizontal <= pi / 4.0) return {2.0 * e.a, 2.0 * e.b};
    return {2.0 * e.b, 2.0 * e.a};
}

struct MeasureOptions {
    int min_region_area = 100;          // below this, flag TinyRegion
    double eccentric_ratio = 0.25;      // b/a below this, flag EccentricFit
    double boundary_compensation = 0.5; // px added to fitted semi-axes
};

// Full per-image measurement: plane detection, shape fitting, unit
// conversion. Fitted semi-axes are compensated by half a pixel because
// traced boundary pixel centers sit inside the true anatomy outline.
inline BiometryReport measure(const LabelMask& mask, const ScaleEstimate& scale,
                              const MeasureOptions& opts = {}) {
    auto [plane, region] = detect_plane(mask);
    const double s = scale.px_per_mm;

    BiometryReport report;
    report.plane = plane;
    report.scale = scale;
    if (region.area() < static_cast<std::size_t>(opts.min_region_area))
        report.flags.push_back(QualityFlag::TinyRegion);

    auto add = [&](const std::string& name, double px) {
        report.measurements[name] = {px, px / s};
    };

    if (plane == PlaneClass::Femur) {
        const BoundingBox box = fit_bbox(region);
        const double fl = bbox_diagonal(box);
        if (fl == 0.0) report.flags.push_back(QualityFlag::DegenerateFemur);
        report.fitted = box;
        add("FL", fl);
        return report;
    }

    EllipseParams e = fit_ellipse(trace_contour(region));
    e.a += opts.boundary_compensation;
    e.b += opts.boundary_compensation;
    if (e.b / e.a < opts.eccentric_ratio)
        report.flags.push_back(QualityFlag::EccentricFit);
    report.fitted = e;

    if (plane == PlaneClass::Head) {
        const HeadAxes axes = assign_head_axes(e);
        add("BPD", axes.bpd_px);
        add("OFD", axes.ofd_px);
        add("HC", circumference_from_diameters(axes.bpd_px, axes.ofd_px));
    } else {
        const AbdomenAxes axes = assign_abdomen_axes(e);
        add("TAD", axes.tad_px);
        add("APAD", axes.apad_px);
        add("AC", circumference_from_diameters(axes.tad_px, axes.apad_px));
    }
    return report;
}

}  // namespace autofb
