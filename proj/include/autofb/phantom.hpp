#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "autofb/biometry.hpp"
#include "autofb/errors.hpp"
#include "autofb/gray_image.hpp"
#include "autofb/mask.hpp"
#include "autofb/ruler_glyphs.hpp"

namespace autofb {

// Stadium shape: all points within `radius` of the segment p0-p1.
struct CapsuleSpec {
    PointD p0;
    PointD p1;
    double radius = 0.0;
};

// Synthetic image description with exactly known geometry.
struct PhantomSpec {
    PlaneClass kind = PlaneClass::Head;
    std::optional<EllipseParams> ellipse;  // head / abdomen
    std::optional<CapsuleSpec> capsule;    // femur
    int image_width = 640;
    int image_height = 640;
    double px_per_mm = 5.0;
    int interval_mm = 5;  // ruler tick interval: 5 alternates sizes, 10 uniform
    double noise_radius = 0.0;
    std::uint64_t seed = 0;
};

// Everything the pipeline is expected to report for a phantom, plus the
// exact ruler geometry.
struct PhantomTruth {
    PlaneClass plane = PlaneClass::Head;
    std::map<std::string, Measurement> measurements;
    std::optional<EllipseParams> ellipse;
    std::optional<BoundingBox> bbox;
    double px_per_mm = 0.0;
    int interval_mm = 0;
    double spacing_px = 0.0;
};

inline constexpr double kPhantomMargin = 5.0;
inline constexpr double kMinTickSpacingPx = 8.0;

namespace detail {

inline double dist_to_segment(const PointD& p, const PointD& a, const PointD& b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

}  // namespace detail

// Rasterizes the phantom shape by pixel-center point sampling and
// derives the ground-truth report in closed form. Femur truth uses the
// rasterization's own pixel extremes, matching the caliper convention.
inline std::pair<LabelMask, PhantomTruth> render_mask(const PhantomSpec& spec) {
    const int w = spec.image_width, h = spec.image_height;
    const double s = spec.px_per_mm;
    if (s <= 0) throw SpecOutOfBounds("render_mask: px_per_mm must be positive");

    PhantomTruth truth;
    truth.plane = spec.kind;
    truth.px_per_mm = s;
    truth.interval_mm = spec.interval_mm;
    truth.spacing_px = s * spec.interval_mm;

    LabelMask mask(w, h);

    if (spec.kind == PlaneClass::Femur) {
        if (!spec.capsule) throw SpecOutOfBounds("render_mask: femur phantom needs a capsule");
        const CapsuleSpec& c = *spec.capsule;
        const double lo_x = std::min(c.p0.x, c.p1.x) - c.radius;
        const double hi_x = std::max(c.p0.x, c.p1.x) + c.radius;
        const double lo_y = std::min(c.p0.y, c.p1.y) - c.radius;
        const double hi_y = std::max(c.p0.y, c.p1.y) + c.radius;
        if (lo_x < kPhantomMargin || lo_y < kPhantomMargin ||
            hi_x > w - 1 - kPhantomMargin || hi_y > h - 1 - kPhantomMargin)
            throw SpecOutOfBounds("render_mask: capsule too close to the image border");

        int min_x = w, max_x = -1, min_y = h, max_y = -1;
        for (int y = static_cast<int>(lo_y); y <= static_cast<int>(std::ceil(hi_y)); ++y)
            for (int x = static_cast<int>(lo_x); x <= static_cast<int>(std::ceil(hi_x)); ++x) {
                if (detail::dist_to_segment({double(x), double(y)}, c.p0, c.p1) > c.radius)
                    continue;
                mask.set(x, y, AnatomyClass::Femur);
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
        if (max_x < 0) throw SpecOutOfBounds("render_mask: capsule rasterized to nothing");
        const BoundingBox box{double(min_x), double(min_y), double(max_x), double(max_y)};
        truth.bbox = box;
        const double fl_px = bbox_diagonal(box);
        truth.measurements["FL"] = {fl_px, fl_px / s};
        return {std::move(mask), std::move(truth)};
    }

    if (!spec.ellipse) throw SpecOutOfBounds("render_mask: head/abdomen phantom needs an ellipse");
    const EllipseParams& e = *spec.ellipse;
    const double ct = std::cos(e.theta), st = std::sin(e.theta);
    const double half_w = std::sqrt(e.a * e.a * ct * ct + e.b * e.b * st * st);
    const double half_h = std::sqrt(e.a * e.a * st * st + e.b * e.b * ct * ct);
    if (e.cx - half_w < kPhantomMargin || e.cx + half_w > w - 1 - kPhantomMargin ||
        e.cy - half_h < kPhantomMargin || e.cy + half_h > h - 1 - kPhantomMargin)
        throw SpecOutOfBounds("render_mask: ellipse too close to the image border");

    const AnatomyClass cls = to_anatomy(spec.kind);
    for (int y = static_cast<int>(e.cy - half_h); y <= static_cast<int>(std::ceil(e.cy + half_h)); ++y)
        for (int x = static_cast<int>(e.cx - half_w); x <= static_cast<int>(std::ceil(e.cx + half_w)); ++x) {
            const double dx = x - e.cx, dy = y - e.cy;
            const double u = (dx * ct + dy * st) / e.a;
            const double v = (-dx * st + dy * ct) / e.b;
            if (u * u + v * v <= 1.0) mask.set(x, y, cls);
        }

    truth.ellipse = e;
    if (spec.kind == PlaneClass::Head) {
        const HeadAxes axes = assign_head_axes(e);
        truth.measurements["BPD"] = {axes.bpd_px, axes.bpd_px / s};
        truth.measurements["OFD"] = {axes.ofd_px, axes.ofd_px / s};
        const double hc = circumference_from_diameters(axes.bpd_px, axes.ofd_px);
        truth.measurements["HC"] = {hc, hc / s};
    } else {
        const AbdomenAxes axes = assign_abdomen_axes(e);
        truth.measurements["TAD"] = {axes.tad_px, axes.tad_px / s};
        truth.measurements["APAD"] = {axes.apad_px, axes.apad_px / s};
        const double ac = circumference_from_diameters(axes.tad_px, axes.apad_px);
        truth.measurements["AC"] = {ac, ac / s};
    }
    return {std::move(mask), std::move(truth)};
}

// Renders the on-screen ruler strip: tick glyphs in the left band every
// interval_mm * px_per_mm pixels, anti-aliased vertically so fractional
// spacings stay honest. Alternates major/minor for 5 mm intervals.
inline GrayImage render_ruler(const PhantomSpec& spec) {
    const double spacing = spec.px_per_mm * spec.interval_mm;
    if (spacing < kMinTickSpacingPx)
        throw UnresolvableTicks("render_ruler: tick spacing " + std::to_string(spacing) +
                                " px is below " + std::to_string(kMinTickSpacingPx));
    if (spec.image_width < kGlyphPatchW)
        throw SpecOutOfBounds("render_ruler: image narrower than the tick glyphs");

    GrayImage img(spec.image_width, spec.image_height, 0);

    // Deterministic sub-pixel phase exercises fractional positions.
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
    const double phase = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

    const double top = kGlyphPatchH;  // keep full glyphs away from the border
    double yc = top + phase;
    for (int k = 0; yc + kGlyphPatchH <= spec.image_height - 1; ++k, yc += spacing) {
        const bool major = spec.interval_mm >= 10 || k % 2 == 0;
        const double hh = kGlyphBarHalfHeight;
        const int x0 = major ? kMajorBarX0 : kMinorBarX0;
        const int x1 = (major ? kMajorBarX1 : kMinorBarX1) - 1;
        const int j0 = static_cast<int>(std::floor(yc - hh - 0.5));
        const int j1 = static_cast<int>(std::ceil(yc + hh + 0.5));
        for (int j = j0; j <= j1; ++j) {
            if (j < 0 || j >= spec.image_height) continue;
            // Pixel row j covers [j-0.5, j+0.5]; bar covers [yc-hh, yc+hh].
            const double cover =
                std::max(0.0, std::min(j + 0.5, yc + hh) - std::max(j - 0.5, yc - hh));
            if (cover <= 0) continue;
            const auto v = static_cast<std::uint8_t>(std::lround(255.0 * cover));
            for (int x = x0; x <= x1; ++x) img.set(x, j, std::max(img.at(x, j), v));
        }
    }
    return img;
}

// Deterministic Euclidean-disc morphology on one region of a mask.
// Dilation only claims background pixels; erosion can empty a region.
inline void dilate_region(LabelMask& mask, const PixelRegion& region, int radius) {
    if (radius <= 0 || region.pixels.empty()) return;
    BoundingBox box = fit_bbox(region);
    const int r2 = radius * radius;
    const int x0 = std::max(0, int(box.min_x) - radius);
    const int x1 = std::min(mask.width() - 1, int(box.max_x) + radius);
    const int y0 = std::max(0, int(box.min_y) - radius);
    const int y1 = std::min(mask.height() - 1, int(box.max_y) + radius);
    std::vector<PointI> added;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            if (mask.at(x, y) != AnatomyClass::Background) continue;
            bool near = false;
            for (int dy = -radius; dy <= radius && !near; ++dy)
                for (int dx = -radius; dx <= radius && !near; ++dx) {
                    if (dx * dx + dy * dy > r2) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (mask.contains(nx, ny) && mask.at(nx, ny) == region.cls) near = true;
                }
            if (near) added.push_back({x, y});
        }
    for (const PointI& p : added) mask.set(p, region.cls);
}

inline void erode_region(LabelMask& mask, const PixelRegion& region, int radius) {
    if (radius <= 0 || region.pixels.empty()) return;
    const int r2 = radius * radius;
    std::vector<PointI> removed;
    for (const PointI& p : region.pixels) {
        bool keep = true;
        for (int dy = -radius; dy <= radius && keep; ++dy)
            for (int dx = -radius; dx <= radius && keep; ++dx) {
                if (dx * dx + dy * dy > r2) continue;
                const int nx = p.x + dx, ny = p.y + dy;
                if (!mask.contains(nx, ny) || mask.at(nx, ny) != region.cls) keep = false;
            }
        if (!keep) removed.push_back(p);
    }
    for (const PointI& p : removed) mask.set(p, AnatomyClass::Background);
}

// Draws a random phantom of the given kind with geometry comfortably
// inside the frame. Deterministic for a fixed seed.
inline PhantomSpec random_phantom(PlaneClass kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    PhantomSpec spec;
    spec.kind = kind;
    spec.seed = seed;
    spec.image_width = 640;
    spec.image_height = 640;
    spec.px_per_mm = 2.0 + 10.0 * u01(rng);
    spec.interval_mm = (seed % 2 == 0) ? 5 : 10;

    const double cx = spec.image_width / 2.0 + 30.0 * (u01(rng) - 0.5);
    const double cy = spec.image_height / 2.0 + 30.0 * (u01(rng) - 0.5);
    if (kind == PlaneClass::Femur) {
        const double length = 80.0 + 220.0 * u01(rng);
        const double angle = std::numbers::pi * u01(rng);
        const double radius = 8.0 + 17.0 * u01(rng);
        const double dx = 0.5 * length * std::cos(angle);
        const double dy = 0.5 * length * std::sin(angle);
        spec.capsule = CapsuleSpec{{cx - dx, cy - dy}, {cx + dx, cy + dy}, radius};
    } else {
        EllipseParams e;
        e.a = 100.0 + 120.0 * u01(rng);
        e.b = e.a * (0.4 + 0.55 * u01(rng));
        e.theta = std::numbers::pi * u01(rng);
        e.cx = cx;
        e.cy = cy;
        spec.ellipse = e;
    }
    return spec;
}

// Randomly erodes or dilates each anatomy region by up to `radius`
// pixels; deterministic for a fixed seed.
inline LabelMask perturb_mask(const LabelMask& mask, int radius, std::uint64_t seed) {
    LabelMask out = mask;
    if (radius <= 0) return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_radius(0, radius);
    std::uniform_int_distribution<int> pick_op(0, 1);
    for (const PixelRegion& region : extract_regions(mask)) {
        const int r = pick_radius(rng);
        if (pick_op(rng) == 0)
            erode_region(out, region, r);
        else
            dilate_region(out, region, r);
    }
    return out;
}

}  // namespace autofb
